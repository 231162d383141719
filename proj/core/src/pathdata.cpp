#include "foundry/pathdata.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

#include "foundry/errors.hpp"

namespace foundry {

double round3(double v) {
    double r = std::round(v * 1000.0) / 1000.0;
    return r == 0.0 ? 0.0 : r; // normalize -0
}

std::string fmt_num(double v) {
    double r = round3(v);
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, r);
    return std::string(buf, p);
}

PathBuilder& PathBuilder::move_to(double x, double y) {
    d_ += d_.empty() ? "M" : " M";
    d_ += fmt_num(x);
    d_ += ' ';
    d_ += fmt_num(y);
    return *this;
}

PathBuilder& PathBuilder::line_to(double x, double y) {
    d_ += " L";
    d_ += fmt_num(x);
    d_ += ' ';
    d_ += fmt_num(y);
    return *this;
}

PathBuilder& PathBuilder::cubic_to(double c1x, double c1y, double c2x, double c2y, double x,
                                   double y) {
    d_ += " C";
    d_ += fmt_num(c1x);
    d_ += ' ';
    d_ += fmt_num(c1y);
    d_ += ' ';
    d_ += fmt_num(c2x);
    d_ += ' ';
    d_ += fmt_num(c2y);
    d_ += ' ';
    d_ += fmt_num(x);
    d_ += ' ';
    d_ += fmt_num(y);
    return *this;
}

PathBuilder& PathBuilder::arc_to(double rx, double ry, double rot_deg, bool large, bool sweep,
                                 double x, double y) {
    d_ += " A";
    d_ += fmt_num(rx);
    d_ += ' ';
    d_ += fmt_num(ry);
    d_ += ' ';
    d_ += fmt_num(rot_deg);
    d_ += ' ';
    d_ += large ? '1' : '0';
    d_ += ' ';
    d_ += sweep ? '1' : '0';
    d_ += ' ';
    d_ += fmt_num(x);
    d_ += ' ';
    d_ += fmt_num(y);
    return *this;
}

PathBuilder& PathBuilder::close() {
    d_ += " Z";
    return *this;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

struct PathScanner {
    const std::string& d;
    std::size_t i = 0;

    explicit PathScanner(const std::string& data) : d(data) {}

    void skip_ws() {
        while (i < d.size() &&
               (std::isspace(static_cast<unsigned char>(d[i])) || d[i] == ','))
            ++i;
    }

    bool done() {
        skip_ws();
        return i >= d.size();
    }

    bool peek_number() {
        skip_ws();
        if (i >= d.size()) return false;
        char c = d[i];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
    }

    char command() {
        skip_ws();
        if (i >= d.size())
            throw Error(ErrorCode::MalformedSvg, "svgdom", "truncated path data");
        return d[i++];
    }

    double number() {
        skip_ws();
        if (i >= d.size())
            throw Error(ErrorCode::MalformedSvg, "svgdom", "expected number in path data");
        std::size_t start = i;
        if (d[i] == '-' || d[i] == '+') ++i;
        bool digits = false, dot = false;
        while (i < d.size()) {
            char c = d[i];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                digits = true;
                ++i;
            } else if (c == '.' && !dot) {
                dot = true;
                ++i;
            } else if ((c == 'e' || c == 'E') && digits) {
                ++i;
                if (i < d.size() && (d[i] == '-' || d[i] == '+')) ++i;
            } else {
                break;
            }
        }
        if (!digits)
            throw Error(ErrorCode::MalformedSvg, "svgdom", "bad number in path data");
        double v = 0.0;
        std::from_chars(d.data() + start, d.data() + i, v);
        return v;
    }

    bool flag() {
        skip_ws();
        if (i >= d.size() || (d[i] != '0' && d[i] != '1'))
            throw Error(ErrorCode::MalformedSvg, "svgdom", "bad arc flag");
        return d[i++] == '1';
    }
};

void flatten_cubic(std::vector<Vec2>& out, Vec2 p0, Vec2 p1, Vec2 p2, Vec2 p3, double tol,
                   int depth) {
    // Flat when control points are within tol of the chord.
    double dx = p3.x - p0.x, dy = p3.y - p0.y;
    double d1 = std::fabs((p1.x - p3.x) * dy - (p1.y - p3.y) * dx);
    double d2 = std::fabs((p2.x - p3.x) * dy - (p2.y - p3.y) * dx);
    double dd = d1 + d2;
    if (depth >= 16 || dd * dd <= tol * tol * (dx * dx + dy * dy) ||
        (dx == 0 && dy == 0 && dd == 0)) {
        out.push_back(p3);
        return;
    }
    auto mid = [](Vec2 a, Vec2 b) { return Vec2{(a.x + b.x) / 2, (a.y + b.y) / 2}; };
    Vec2 p01 = mid(p0, p1), p12 = mid(p1, p2), p23 = mid(p2, p3);
    Vec2 p012 = mid(p01, p12), p123 = mid(p12, p23);
    Vec2 c = mid(p012, p123);
    flatten_cubic(out, p0, p01, p012, c, tol, depth + 1);
    flatten_cubic(out, c, p123, p23, p3, tol, depth + 1);
}

void flatten_quad(std::vector<Vec2>& out, Vec2 p0, Vec2 p1, Vec2 p2, double tol) {
    Vec2 c1{p0.x + 2.0 / 3.0 * (p1.x - p0.x), p0.y + 2.0 / 3.0 * (p1.y - p0.y)};
    Vec2 c2{p2.x + 2.0 / 3.0 * (p1.x - p2.x), p2.y + 2.0 / 3.0 * (p1.y - p2.y)};
    flatten_cubic(out, p0, c1, c2, p2, tol, 0);
}

// Endpoint to center parameterization per the SVG spec, then sampled.
void flatten_arc(std::vector<Vec2>& out, Vec2 p0, double rx, double ry, double rot_deg,
                 bool large, bool sweep, Vec2 p1, double tol) {
    if (rx == 0 || ry == 0 || (p0.x == p1.x && p0.y == p1.y)) {
        out.push_back(p1);
        return;
    }
    rx = std::fabs(rx);
    ry = std::fabs(ry);
    double phi = rot_deg * kPi / 180.0;
    double cphi = std::cos(phi), sphi = std::sin(phi);
    double dx2 = (p0.x - p1.x) / 2.0, dy2 = (p0.y - p1.y) / 2.0;
    double x1p = cphi * dx2 + sphi * dy2;
    double y1p = -sphi * dx2 + cphi * dy2;
    double lam = (x1p * x1p) / (rx * rx) + (y1p * y1p) / (ry * ry);
    if (lam > 1) {
        double s = std::sqrt(lam);
        rx *= s;
        ry *= s;
    }
    double num = rx * rx * ry * ry - rx * rx * y1p * y1p - ry * ry * x1p * x1p;
    double den = rx * rx * y1p * y1p + ry * ry * x1p * x1p;
    double co = std::sqrt(std::max(0.0, num / den));
    if (large == sweep) co = -co;
    double cxp = co * rx * y1p / ry;
    double cyp = -co * ry * x1p / rx;
    double cx = cphi * cxp - sphi * cyp + (p0.x + p1.x) / 2.0;
    double cy = sphi * cxp + cphi * cyp + (p0.y + p1.y) / 2.0;
    auto angle = [](double ux, double uy, double vx, double vy) {
        double dot = ux * vx + uy * vy;
        double len = std::sqrt((ux * ux + uy * uy) * (vx * vx + vy * vy));
        double a = std::acos(std::clamp(dot / len, -1.0, 1.0));
        return (ux * vy - uy * vx) < 0 ? -a : a;
    };
    double th1 = angle(1, 0, (x1p - cxp) / rx, (y1p - cyp) / ry);
    double dth = angle((x1p - cxp) / rx, (y1p - cyp) / ry, (-x1p - cxp) / rx, (-y1p - cyp) / ry);
    if (!sweep && dth > 0) dth -= 2 * kPi;
    if (sweep && dth < 0) dth += 2 * kPi;

    // Sample density from radius and tolerance.
    double rmax = std::max(rx, ry);
    int steps = std::max(2, static_cast<int>(std::ceil(std::fabs(dth) /
                                                       (2.0 * std::acos(1.0 - tol / rmax)))));
    for (int k = 1; k <= steps; ++k) {
        double t = th1 + dth * k / steps;
        double px = cx + rx * std::cos(t) * cphi - ry * std::sin(t) * sphi;
        double py = cy + rx * std::cos(t) * sphi + ry * std::sin(t) * cphi;
        out.push_back({px, py});
    }
    out.back() = p1;
}

} // namespace

std::vector<std::vector<Vec2>> flatten_path_data(const std::string& d, double tolerance) {
    std::vector<std::vector<Vec2>> subpaths;
    std::vector<Vec2> cur;
    PathScanner sc(d);
    Vec2 pos{0, 0}, start{0, 0};
    Vec2 prev_cubic_ctrl{0, 0}, prev_quad_ctrl{0, 0};
    char last_cmd = 0;

    auto begin_subpath = [&](Vec2 p) {
        if (cur.size() > 1) subpaths.push_back(std::move(cur));
        cur.clear();
        cur.push_back(p);
        start = p;
        pos = p;
    };
    auto vertex = [&](Vec2 p) {
        cur.push_back(p);
        pos = p;
    };

    while (!sc.done()) {
        char cmd;
        if (sc.peek_number() && last_cmd != 0) {
            // Implicit command repetition; M/m repeats as L/l.
            cmd = last_cmd == 'M' ? 'L' : (last_cmd == 'm' ? 'l' : last_cmd);
        } else {
            cmd = sc.command();
        }
        bool rel = std::islower(static_cast<unsigned char>(cmd)) != 0;
        char op = static_cast<char>(std::toupper(static_cast<unsigned char>(cmd)));
        switch (op) {
            case 'M': {
                double x = sc.number(), y = sc.number();
                begin_subpath(rel ? Vec2{pos.x + x, pos.y + y} : Vec2{x, y});
                break;
            }
            case 'L': {
                double x = sc.number(), y = sc.number();
                vertex(rel ? Vec2{pos.x + x, pos.y + y} : Vec2{x, y});
                break;
            }
            case 'H': {
                double x = sc.number();
                vertex({rel ? pos.x + x : x, pos.y});
                break;
            }
            case 'V': {
                double y = sc.number();
                vertex({pos.x, rel ? pos.y + y : y});
                break;
            }
            case 'C': {
                double c1x = sc.number(), c1y = sc.number();
                double c2x = sc.number(), c2y = sc.number();
                double x = sc.number(), y = sc.number();
                Vec2 c1 = rel ? Vec2{pos.x + c1x, pos.y + c1y} : Vec2{c1x, c1y};
                Vec2 c2 = rel ? Vec2{pos.x + c2x, pos.y + c2y} : Vec2{c2x, c2y};
                Vec2 p = rel ? Vec2{pos.x + x, pos.y + y} : Vec2{x, y};
                flatten_cubic(cur, pos, c1, c2, p, tolerance, 0);
                prev_cubic_ctrl = c2;
                pos = p;
                break;
            }
            case 'S': {
                double c2x = sc.number(), c2y = sc.number();
                double x = sc.number(), y = sc.number();
                Vec2 c1 = (last_cmd == 'C' || last_cmd == 'c' || last_cmd == 'S' || last_cmd == 's')
                              ? Vec2{2 * pos.x - prev_cubic_ctrl.x, 2 * pos.y - prev_cubic_ctrl.y}
                              : pos;
                Vec2 c2 = rel ? Vec2{pos.x + c2x, pos.y + c2y} : Vec2{c2x, c2y};
                Vec2 p = rel ? Vec2{pos.x + x, pos.y + y} : Vec2{x, y};
                flatten_cubic(cur, pos, c1, c2, p, tolerance, 0);
                prev_cubic_ctrl = c2;
                pos = p;
                break;
            }
            case 'Q': {
                double cx = sc.number(), cy = sc.number();
                double x = sc.number(), y = sc.number();
                Vec2 c = rel ? Vec2{pos.x + cx, pos.y + cy} : Vec2{cx, cy};
                Vec2 p = rel ? Vec2{pos.x + x, pos.y + y} : Vec2{x, y};
                flatten_quad(cur, pos, c, p, tolerance);
                prev_quad_ctrl = c;
                pos = p;
                break;
            }
            case 'T': {
                double x = sc.number(), y = sc.number();
                Vec2 c = (last_cmd == 'Q' || last_cmd == 'q' || last_cmd == 'T' || last_cmd == 't')
                             ? Vec2{2 * pos.x - prev_quad_ctrl.x, 2 * pos.y - prev_quad_ctrl.y}
                             : pos;
                Vec2 p = rel ? Vec2{pos.x + x, pos.y + y} : Vec2{x, y};
                flatten_quad(cur, pos, c, p, tolerance);
                prev_quad_ctrl = c;
                pos = p;
                break;
            }
            case 'A': {
                double rx = sc.number(), ry = sc.number(), rot = sc.number();
                bool large = sc.flag(), sweep = sc.flag();
                double x = sc.number(), y = sc.number();
                Vec2 p = rel ? Vec2{pos.x + x, pos.y + y} : Vec2{x, y};
                flatten_arc(cur, pos, rx, ry, rot, large, sweep, p, tolerance);
                pos = p;
                break;
            }
            case 'Z': {
                if (!cur.empty()) vertex(start);
                break;
            }
            default:
                throw Error(ErrorCode::MalformedSvg, "svgdom",
                            std::string("unknown path command '") + cmd + "'");
        }
        last_cmd = cmd;
    }
    if (cur.size() > 1 || (cur.size() == 1 && subpaths.empty())) subpaths.push_back(std::move(cur));
    return subpaths;
}

Rect path_data_bbox(const std::string& d, double tolerance) {
    BoundsAccum acc;
    for (const auto& sp : flatten_path_data(d, tolerance))
        for (const auto& p : sp) acc.add(p.x, p.y);
    return acc.rect();
}

std::string transform_path_data(const std::string& d, double scale, double dx, double dy) {
    PathScanner sc(d);
    PathBuilder out;
    auto px = [&](double x) { return x * scale + dx; };
    auto py = [&](double y) { return y * scale + dy; };
    while (!sc.done()) {
        char cmd = sc.command();
        switch (cmd) {
            case 'M': {
                double x = sc.number(), y = sc.number();
                out.move_to(px(x), py(y));
                while (sc.peek_number()) {
                    x = sc.number();
                    y = sc.number();
                    out.line_to(px(x), py(y));
                }
                break;
            }
            case 'L': {
                do {
                    double x = sc.number(), y = sc.number();
                    out.line_to(px(x), py(y));
                } while (sc.peek_number());
                break;
            }
            case 'C': {
                do {
                    double c1x = sc.number(), c1y = sc.number();
                    double c2x = sc.number(), c2y = sc.number();
                    double x = sc.number(), y = sc.number();
                    out.cubic_to(px(c1x), py(c1y), px(c2x), py(c2y), px(x), py(y));
                } while (sc.peek_number());
                break;
            }
            case 'A': {
                do {
                    double rx = sc.number(), ry = sc.number();
                    double rot = sc.number();
                    bool large = sc.flag(), sweep = sc.flag();
                    double x = sc.number(), y = sc.number();
                    out.arc_to(rx * scale, ry * scale, rot, large, sweep, px(x), py(y));
                } while (sc.peek_number());
                break;
            }
            case 'Z':
            case 'z':
                out.close();
                break;
            default:
                throw Error(ErrorCode::MalformedSvg, "svgdom",
                            std::string("unsupported path command for transform: ") + cmd);
        }
    }
    return out.str();
}

} // namespace foundry
