#include "foundry/svgdom.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "foundry/errors.hpp"
#include "foundry/pathdata.hpp"
#include "foundry/rng.hpp"
#include "foundry/text_metrics.hpp"
#include "foundry/xml.hpp"

namespace foundry {

const char* leaf_kind_name(LeafKind k) {
    switch (k) {
        case LeafKind::Rect: return "rect";
        case LeafKind::Circle: return "circle";
        case LeafKind::Ellipse: return "ellipse";
        case LeafKind::Line: return "line";
        case LeafKind::Polygon: return "polygon";
        case LeafKind::Path: return "path";
        case LeafKind::Text: return "text";
        case LeafKind::Image: return "image";
    }
    return "?";
}

// ---- serialization ---------------------------------------------------------

namespace {

constexpr double kPi = 3.14159265358979323846;

void append_attr(std::string& out, const char* name, const std::string& value) {
    out += ' ';
    out += name;
    out += "=\"";
    out += xml_escape(value);
    out += '"';
}

void append_num_attr(std::string& out, const char* name, double v) {
    append_attr(out, name, fmt_num(v));
}

void append_paint(std::string& out, const SceneElement& el, bool paintable) {
    if (paintable || el.fill) {
        append_attr(out, "fill", el.fill ? format_color(*el.fill) : std::string("none"));
    }
    if (el.stroke) {
        append_attr(out, "stroke", format_color(*el.stroke));
        append_num_attr(out, "stroke-width", el.stroke_width);
    }
    if (el.opacity < 1.0) append_num_attr(out, "opacity", el.opacity);
}

Vec2 arc_point(const ArcGeom& a, double deg, double r) {
    double rad = deg * kPi / 180.0;
    // 0 degrees at 12 o'clock, positive sweep clockwise on screen.
    return {a.cx + r * std::sin(rad), a.cy - r * std::cos(rad)};
}

std::string arc_path_data(const ArcGeom& a) {
    PathBuilder pb;
    double sweep = a.sweep_deg;
    if (sweep >= 359.999) {
        // Full ring/circle: two half arcs (one arc command cannot close on itself).
        Vec2 top = arc_point(a, 0, a.r_outer);
        Vec2 bottom = arc_point(a, 180, a.r_outer);
        pb.move_to(top.x, top.y);
        pb.arc_to(a.r_outer, a.r_outer, 0, false, true, bottom.x, bottom.y);
        pb.arc_to(a.r_outer, a.r_outer, 0, false, true, top.x, top.y);
        pb.close();
        if (a.r_inner > 0) {
            Vec2 itop = arc_point(a, 0, a.r_inner);
            Vec2 ibottom = arc_point(a, 180, a.r_inner);
            pb.move_to(itop.x, itop.y);
            pb.arc_to(a.r_inner, a.r_inner, 0, false, true, ibottom.x, ibottom.y);
            pb.arc_to(a.r_inner, a.r_inner, 0, false, true, itop.x, itop.y);
            pb.close();
        }
        return pb.str();
    }
    bool large = sweep > 180.0;
    double end = a.start_deg + sweep;
    Vec2 o0 = arc_point(a, a.start_deg, a.r_outer);
    Vec2 o1 = arc_point(a, end, a.r_outer);
    if (a.r_inner <= 0) {
        pb.move_to(a.cx, a.cy);
        pb.line_to(o0.x, o0.y);
        pb.arc_to(a.r_outer, a.r_outer, 0, large, true, o1.x, o1.y);
        pb.close();
    } else {
        Vec2 i0 = arc_point(a, a.start_deg, a.r_inner);
        Vec2 i1 = arc_point(a, end, a.r_inner);
        pb.move_to(o0.x, o0.y);
        pb.arc_to(a.r_outer, a.r_outer, 0, large, true, o1.x, o1.y);
        pb.line_to(i1.x, i1.y);
        pb.arc_to(a.r_inner, a.r_inner, 0, large, false, i0.x, i0.y);
        pb.close();
    }
    return pb.str();
}

void serialize_element(std::string& out, const SceneElement& el, int depth) {
    std::string indent(static_cast<std::size_t>(depth) * 2, ' ');

    if (el.is_group()) {
        out += indent;
        out += "<g";
        if (const char* cls = role_class_name(el.role)) append_attr(out, "class", cls);
        if (el.opacity < 1.0) append_num_attr(out, "opacity", el.opacity);
        out += ">\n";
        for (const auto& ch : el.children) serialize_element(out, ch, depth + 1);
        out += indent;
        out += "</g>\n";
        return;
    }

    out += indent;
    if (const auto* g = std::get_if<RectGeom>(&el.geometry)) {
        out += "<rect";
        append_num_attr(out, "x", g->x);
        append_num_attr(out, "y", g->y);
        append_num_attr(out, "width", g->w);
        append_num_attr(out, "height", g->h);
        if (g->rx > 0) append_num_attr(out, "rx", g->rx);
        append_paint(out, el, true);
        out += "/>\n";
    } else if (const auto* g = std::get_if<CircleGeom>(&el.geometry)) {
        out += "<circle";
        append_num_attr(out, "cx", g->cx);
        append_num_attr(out, "cy", g->cy);
        append_num_attr(out, "r", g->r);
        append_paint(out, el, true);
        out += "/>\n";
    } else if (const auto* g = std::get_if<LineGeom>(&el.geometry)) {
        out += "<line";
        append_num_attr(out, "x1", g->x1);
        append_num_attr(out, "y1", g->y1);
        append_num_attr(out, "x2", g->x2);
        append_num_attr(out, "y2", g->y2);
        append_paint(out, el, false);
        out += "/>\n";
    } else if (const auto* g = std::get_if<PathGeom>(&el.geometry)) {
        out += "<path";
        append_attr(out, "d", g->d);
        append_paint(out, el, true);
        out += "/>\n";
    } else if (const auto* g = std::get_if<ArcGeom>(&el.geometry)) {
        out += "<path";
        append_attr(out, "d", arc_path_data(*g));
        if (g->sweep_deg >= 359.999 && g->r_inner > 0)
            append_attr(out, "fill-rule", "evenodd");
        append_paint(out, el, true);
        out += "/>\n";
    } else if (const auto* g = std::get_if<TextGeom>(&el.geometry)) {
        out += "<text";
        append_num_attr(out, "x", g->x);
        append_num_attr(out, "y", g->y);
        append_attr(out, "font-family", "Helvetica, Arial, sans-serif");
        append_num_attr(out, "font-size", g->size);
        if (g->bold) append_attr(out, "font-weight", "bold");
        if (g->anchor == TextAnchor::Middle) append_attr(out, "text-anchor", "middle");
        else if (g->anchor == TextAnchor::End) append_attr(out, "text-anchor", "end");
        append_paint(out, el, true);
        out += ">";
        out += xml_escape(el.text_content);
        out += "</text>\n";
    } else if (const auto* g = std::get_if<ImageGeom>(&el.geometry)) {
        out += "<image";
        append_num_attr(out, "x", g->x);
        append_num_attr(out, "y", g->y);
        append_num_attr(out, "width", g->w);
        append_num_attr(out, "height", g->h);
        append_attr(out, "href", el.image_href);
        if (el.opacity < 1.0) append_num_attr(out, "opacity", el.opacity);
        out += "/>\n";
    }
}

} // namespace

std::string serialize_svg(const SceneElement& root, double width, double height, Rgb background) {
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\"";
    append_num_attr(out, "width", width);
    append_num_attr(out, "height", height);
    append_attr(out, "viewBox", "0 0 " + fmt_num(width) + " " + fmt_num(height));
    out += ">\n";
    out += "  <rect";
    append_num_attr(out, "x", 0);
    append_num_attr(out, "y", 0);
    append_num_attr(out, "width", width);
    append_num_attr(out, "height", height);
    append_attr(out, "fill", format_color(background));
    out += "/>\n";
    for (const auto& ch : root.children) serialize_element(out, ch, 1);
    out += "</svg>\n";
    return out;
}

std::string serialize_svg(const ChartScene& scene, const Palette& palette) {
    return serialize_svg(scene.root, scene.width, scene.height, palette.background);
}

// ---- parsing ---------------------------------------------------------------

namespace {

std::string_view local_name(std::string_view tag) {
    std::size_t colon = tag.rfind(':');
    return colon == std::string_view::npos ? tag : tag.substr(colon + 1);
}

double parse_length(std::string_view s, double fallback) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    double v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{}) return fallback;
    return v;
}

std::vector<double> parse_number_list(std::string_view s) {
    std::vector<double> out;
    const char* p = s.data();
    const char* end = s.data() + s.size();
    while (p < end) {
        while (p < end && (std::isspace(static_cast<unsigned char>(*p)) || *p == ',')) ++p;
        if (p >= end) break;
        double v = 0;
        auto r = std::from_chars(p, end, v);
        if (r.ec != std::errc{}) break;
        out.push_back(v);
        p = r.ptr;
    }
    return out;
}

Mat2x3 parse_transform(std::string_view s) {
    Mat2x3 m = Mat2x3::identity();
    std::size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ','))
            ++i;
    };
    for (;;) {
        skip();
        if (i >= s.size()) break;
        std::size_t start = i;
        while (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])))) ++i;
        std::string_view name = s.substr(start, i - start);
        skip();
        if (i >= s.size() || s[i] != '(') break;
        std::size_t close = s.find(')', i);
        if (close == std::string_view::npos) break;
        std::vector<double> a = parse_number_list(s.substr(i + 1, close - i - 1));
        i = close + 1;

        Mat2x3 t = Mat2x3::identity();
        if (name == "translate" && !a.empty()) {
            t = Mat2x3::translate(a[0], a.size() > 1 ? a[1] : 0.0);
        } else if (name == "scale" && !a.empty()) {
            t = Mat2x3::scale(a[0], a.size() > 1 ? a[1] : a[0]);
        } else if (name == "matrix" && a.size() == 6) {
            t = Mat2x3{a[0], a[1], a[2], a[3], a[4], a[5]};
        } else if (name == "rotate" && !a.empty()) {
            if (a.size() >= 3) {
                t = Mat2x3::translate(a[1], a[2])
                        .then(Mat2x3::rotate_deg(a[0]))
                        .then(Mat2x3::translate(-a[1], -a[2]));
            } else {
                t = Mat2x3::rotate_deg(a[0]);
            }
        } else if (name == "skewX" && !a.empty()) {
            t = Mat2x3{1, 0, std::tan(a[0] * kPi / 180.0), 1, 0, 0};
        } else if (name == "skewY" && !a.empty()) {
            t = Mat2x3{1, std::tan(a[0] * kPi / 180.0), 0, 1, 0, 0};
        }
        m = m.then(t);
    }
    return m;
}

struct InheritedStyle {
    Mat2x3 transform = Mat2x3::identity();
    std::string fill = "black"; // SVG initial paint
    std::string stroke = "none";
    double font_size = 16;
    bool bold = false;
    TextAnchor anchor = TextAnchor::Start;
    bool display_none = false;
};

// Pull one property from a style="a:b;c:d" declaration block.
std::optional<std::string> style_property(std::string_view style, std::string_view key) {
    std::size_t i = 0;
    while (i < style.size()) {
        std::size_t semi = style.find(';', i);
        if (semi == std::string_view::npos) semi = style.size();
        std::string_view decl = style.substr(i, semi - i);
        std::size_t colon = decl.find(':');
        if (colon != std::string_view::npos) {
            std::string_view k = decl.substr(0, colon);
            std::string_view v = decl.substr(colon + 1);
            auto trim = [](std::string_view sv) {
                while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.front())))
                    sv.remove_prefix(1);
                while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.back())))
                    sv.remove_suffix(1);
                return sv;
            };
            if (trim(k) == key) return std::string(trim(v));
        }
        i = semi + 1;
    }
    return std::nullopt;
}

// Attribute, overridden by an inline style declaration if present.
std::optional<std::string> resolved_property(const XmlNode& node, const char* attr_name,
                                             const char* css_name) {
    std::optional<std::string> v;
    if (const std::string* a = node.attr(attr_name)) v = *a;
    if (const std::string* st = node.attr("style")) {
        if (auto sv = style_property(*st, css_name)) v = sv;
    }
    return v;
}

bool is_skipped_container(std::string_view tag) {
    static const char* kSkip[] = {"defs",     "clipPath", "mask",   "marker",        "symbol",
                                  "metadata", "title",    "desc",   "pattern",       "filter",
                                  "lineargradient", "radialgradient", "foreignObject"};
    std::string lower(tag);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const char* k : kSkip) {
        std::string kl(k);
        std::transform(kl.begin(), kl.end(), kl.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (lower == kl) return true;
    }
    return false;
}

class SvgReader {
public:
    SvgDocument run(const XmlNode& root) {
        if (local_name(root.tag) != "svg")
            throw Error(ErrorCode::MalformedSvg, "svg-parse",
                        "root element is <" + root.tag + ">, expected <svg>");

        double vb_w = 0, vb_h = 0;
        if (const std::string* vb = root.attr("viewBox")) {
            std::vector<double> v = parse_number_list(*vb);
            if (v.size() == 4) {
                vb_w = v[2];
                vb_h = v[3];
            }
        }
        doc_.width = root.attr("width") ? parse_length(*root.attr("width"), vb_w) : vb_w;
        doc_.height = root.attr("height") ? parse_length(*root.attr("height"), vb_h) : vb_h;
        if (doc_.width <= 0 || doc_.height <= 0)
            throw Error(ErrorCode::MalformedSvg, "svg-parse",
                        "svg has no usable width/height or viewBox");

        InheritedStyle base;
        for (const auto& ch : root.children) visit(ch, base);
        return std::move(doc_);
    }

private:
    SvgDocument doc_;
    const FontMetrics& metrics_ = FontMetrics::builtin();
    const FontMetrics& bold_metrics_ = FontMetrics::builtin_bold();

    void warn_once(const std::string& w) {
        if (std::find(doc_.warnings.begin(), doc_.warnings.end(), w) == doc_.warnings.end())
            doc_.warnings.push_back(w);
    }

    InheritedStyle merge(const XmlNode& node, const InheritedStyle& in) {
        InheritedStyle out = in;
        if (const std::string* t = node.attr("transform"))
            out.transform = in.transform.then(parse_transform(*t));
        if (auto f = resolved_property(node, "fill", "fill")) out.fill = *f;
        if (auto st = resolved_property(node, "stroke", "stroke")) out.stroke = *st;
        if (auto fs = resolved_property(node, "font-size", "font-size"))
            out.font_size = parse_length(*fs, in.font_size);
        if (auto fw = resolved_property(node, "font-weight", "font-weight")) {
            if (*fw == "bold" || *fw == "bolder") out.bold = true;
            else if (*fw == "normal") out.bold = false;
            else {
                double w = parse_length(*fw, in.bold ? 700 : 400);
                out.bold = w >= 600;
            }
        }
        if (auto ta = resolved_property(node, "text-anchor", "text-anchor")) {
            if (*ta == "middle") out.anchor = TextAnchor::Middle;
            else if (*ta == "end") out.anchor = TextAnchor::End;
            else out.anchor = TextAnchor::Start;
        }
        if (auto d = resolved_property(node, "display", "display"))
            if (*d == "none") out.display_none = true;
        if (auto v = resolved_property(node, "visibility", "visibility"))
            if (*v == "hidden") out.display_none = true;
        return out;
    }

    void visit(const XmlNode& node, const InheritedStyle& in) {
        if (node.is_text()) return;
        std::string_view tag = local_name(node.tag);
        if (tag == "style") {
            warn_once("stylesheet ignored");
            return;
        }
        if (tag == "script") {
            warn_once("script ignored");
            return;
        }
        if (tag == "use") {
            warn_once("use element not resolved");
            return;
        }
        if (is_skipped_container(tag)) return;

        InheritedStyle st = merge(node, in);
        if (st.display_none) return;

        if (tag == "g" || tag == "svg" || tag == "a" || tag == "switch") {
            for (const auto& ch : node.children) visit(ch, st);
            return;
        }
        emit_leaf(node, tag, st);
    }

    double num_attr(const XmlNode& n, const char* name, double fallback = 0) {
        const std::string* a = n.attr(name);
        return a ? parse_length(*a, fallback) : fallback;
    }

    void emit_leaf(const XmlNode& node, std::string_view tag, const InheritedStyle& st) {
        SvgLeaf leaf;
        bool recognized = true;
        BoundsAccum acc;

        if (tag == "rect") {
            leaf.kind = LeafKind::Rect;
            Rect r{num_attr(node, "x"), num_attr(node, "y"), num_attr(node, "width"),
                   num_attr(node, "height")};
            acc.add(st.transform.apply_rect(r));
        } else if (tag == "circle") {
            leaf.kind = LeafKind::Circle;
            double r = num_attr(node, "r");
            Rect box{num_attr(node, "cx") - r, num_attr(node, "cy") - r, 2 * r, 2 * r};
            acc.add(st.transform.apply_rect(box));
        } else if (tag == "ellipse") {
            leaf.kind = LeafKind::Ellipse;
            double rx = num_attr(node, "rx"), ry = num_attr(node, "ry");
            Rect box{num_attr(node, "cx") - rx, num_attr(node, "cy") - ry, 2 * rx, 2 * ry};
            acc.add(st.transform.apply_rect(box));
        } else if (tag == "line") {
            leaf.kind = LeafKind::Line;
            Vec2 p1 = st.transform.apply(num_attr(node, "x1"), num_attr(node, "y1"));
            Vec2 p2 = st.transform.apply(num_attr(node, "x2"), num_attr(node, "y2"));
            acc.add(p1.x, p1.y);
            acc.add(p2.x, p2.y);
        } else if (tag == "polyline" || tag == "polygon") {
            leaf.kind = LeafKind::Polygon;
            std::vector<double> pts;
            if (const std::string* p = node.attr("points")) pts = parse_number_list(*p);
            for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
                Vec2 p = st.transform.apply(pts[i], pts[i + 1]);
                acc.add(p.x, p.y);
            }
        } else if (tag == "path") {
            leaf.kind = LeafKind::Path;
            const std::string* d = node.attr("d");
            if (d && !d->empty()) {
                for (const auto& sub : flatten_path_data(*d)) {
                    for (const Vec2& p : sub) {
                        Vec2 q = st.transform.apply(p.x, p.y);
                        acc.add(q.x, q.y);
                    }
                }
            }
        } else if (tag == "text") {
            leaf.kind = LeafKind::Text;
            leaf.text = gather_text(node);
            const FontMetrics& m = st.bold ? bold_metrics_ : metrics_;
            TextSize sz = m.measure(leaf.text, st.font_size);
            double x = num_attr(node, "x");
            double y = num_attr(node, "y");
            if (st.anchor == TextAnchor::Middle) x -= sz.w / 2;
            else if (st.anchor == TextAnchor::End) x -= sz.w;
            Rect box{x, y - m.baseline_offset(st.font_size), sz.w, sz.h};
            acc.add(st.transform.apply_rect(box));
        } else if (tag == "image") {
            leaf.kind = LeafKind::Image;
            Rect r{num_attr(node, "x"), num_attr(node, "y"), num_attr(node, "width"),
                   num_attr(node, "height")};
            acc.add(st.transform.apply_rect(r));
            const std::string* href = node.attr("href");
            if (!href) href = node.attr("xlink:href");
            leaf.image_hash = href ? fnv1a64(*href) : 0;
        } else {
            recognized = false;
        }
        if (!recognized) return;

        leaf.bbox = acc.valid() ? acc.rect() : Rect{};
        Vec2 c = leaf.bbox.center();
        leaf.cx = c.x / doc_.width;
        leaf.cy = c.y / doc_.height;
        leaf.area = (leaf.bbox.w * leaf.bbox.h) / (doc_.width * doc_.height);
        leaf.zero_area = leaf.area <= 0;

        // Paint: fill first, stroke as fallback for unfilled marks.
        auto classify = [&](const std::string& paint, bool& is_url) -> std::optional<Rgb> {
            if (paint.rfind("url(", 0) == 0) {
                is_url = true;
                return std::nullopt;
            }
            return parse_color(paint);
        };
        bool fill_url = false, stroke_url = false;
        std::optional<Rgb> fill = classify(st.fill, fill_url);
        std::optional<Rgb> stroke = classify(st.stroke, stroke_url);
        if (leaf.kind == LeafKind::Line) {
            leaf.color = stroke ? stroke : fill;
        } else {
            leaf.color = fill ? fill : stroke;
        }
        leaf.url_fill = fill_url || stroke_url;

        leaf.source_index = static_cast<int>(doc_.leaves.size());
        doc_.leaves.push_back(std::move(leaf));
    }

    static std::string gather_text(const XmlNode& node) {
        std::string out;
        for (const auto& ch : node.children) {
            if (ch.is_text()) out += ch.text;
            else if (local_name(ch.tag) == "tspan" || local_name(ch.tag) == "textPath")
                out += gather_text(ch);
        }
        // Collapse whitespace runs the way renderers do.
        std::string collapsed;
        bool in_ws = false;
        for (char c : out) {
            if (std::isspace(static_cast<unsigned char>(c))) {
                in_ws = true;
                continue;
            }
            if (in_ws && !collapsed.empty()) collapsed.push_back(' ');
            in_ws = false;
            collapsed.push_back(c);
        }
        return collapsed;
    }
};

} // namespace

SvgDocument parse_svg(std::string_view text) {
    XmlNode root = parse_xml(text);
    return SvgReader().run(root);
}

} // namespace foundry
