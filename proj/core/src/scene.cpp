#include "foundry/scene.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "foundry/errors.hpp"
#include "foundry/pathdata.hpp"

namespace foundry {

namespace {

constexpr double kPi = 3.14159265358979323846;

double luminance(Rgb c) {
    return 0.2126 * c.r + 0.7152 * c.g + 0.0722 * c.b;
}

} // namespace

const char* role_class_name(Role r) {
    switch (r) {
        case Role::Title: return "title";
        case Role::Image: return "image";
        case Role::Legend: return "legend";
        case Role::Axis: return "axis";
        default: return nullptr;
    }
}

Rgb Palette::text_color() const {
    return luminance(background) >= 128.0 ? Rgb{33, 37, 41} : Rgb{245, 246, 250};
}

Rect SceneElement::bbox(const FontMetrics& metrics) const {
    if (is_group()) {
        BoundsAccum acc;
        for (const auto& ch : children) {
            Rect r = ch.bbox(metrics);
            if (r.w > 0 || r.h > 0 || !ch.is_group()) acc.add(r);
        }
        return acc.rect();
    }
    if (const auto* g = std::get_if<RectGeom>(&geometry)) return {g->x, g->y, g->w, g->h};
    if (const auto* g = std::get_if<CircleGeom>(&geometry))
        return {g->cx - g->r, g->cy - g->r, 2 * g->r, 2 * g->r};
    if (const auto* g = std::get_if<LineGeom>(&geometry)) {
        BoundsAccum acc;
        acc.add(g->x1, g->y1);
        acc.add(g->x2, g->y2);
        return acc.rect();
    }
    if (const auto* g = std::get_if<PathGeom>(&geometry)) return path_data_bbox(g->d);
    if (const auto* g = std::get_if<ArcGeom>(&geometry)) {
        // Conservative: sample the outer radius across the sweep.
        BoundsAccum acc;
        int steps = std::max(8, static_cast<int>(std::fabs(g->sweep_deg) / 5.0));
        for (int k = 0; k <= steps; ++k) {
            double a = (g->start_deg + g->sweep_deg * k / steps - 90.0) * kPi / 180.0;
            acc.add(g->cx + g->r_outer * std::cos(a), g->cy + g->r_outer * std::sin(a));
            acc.add(g->cx + g->r_inner * std::cos(a), g->cy + g->r_inner * std::sin(a));
        }
        return acc.rect();
    }
    if (const auto* g = std::get_if<TextGeom>(&geometry)) {
        const FontMetrics& m = g->bold ? FontMetrics::builtin_bold() : metrics;
        TextSize sz = m.measure(text_content, g->size);
        double x = g->x;
        if (g->anchor == TextAnchor::Middle) x -= sz.w / 2;
        else if (g->anchor == TextAnchor::End) x -= sz.w;
        return {x, g->y - m.baseline_offset(g->size), sz.w, sz.h};
    }
    if (const auto* g = std::get_if<ImageGeom>(&geometry)) return {g->x, g->y, g->w, g->h};
    return {};
}

void for_each_leaf(const SceneElement& root,
                   const std::function<void(const SceneElement&)>& fn) {
    if (root.is_group()) {
        for (const auto& ch : root.children) for_each_leaf(ch, fn);
    } else {
        fn(root);
    }
}

TickSpec nice_ticks(double min_value, double max_value, bool include_zero) {
    double lo = min_value, hi = max_value;
    if (include_zero) {
        lo = std::min(lo, 0.0);
        hi = std::max(hi, 0.0);
    }
    if (hi <= lo) hi = lo + 1.0;

    double span = hi - lo;
    static const double mults[] = {1.0, 2.0, 2.5, 5.0, 10.0};
    TickSpec best;
    double k = std::floor(std::log10(span)) - 1.0;
    for (int exp = 0; exp < 4 && best.ticks.empty(); ++exp) {
        for (double m : mults) {
            double step = m * std::pow(10.0, k + exp);
            double t0 = std::floor(lo / step) * step;
            double t1 = std::ceil(hi / step) * step;
            int count = static_cast<int>(std::round((t1 - t0) / step)) + 1;
            if (count >= 4 && count <= 7) {
                best.step = step;
                best.lo = t0;
                best.hi = t1;
                for (int i = 0; i < count; ++i) best.ticks.push_back(round3(t0 + i * step));
                break;
            }
        }
    }
    if (best.ticks.empty()) {
        // Degenerate span; fall back to 5 even divisions.
        double step = span / 4.0;
        best.step = step;
        best.lo = lo;
        best.hi = hi;
        for (int i = 0; i < 5; ++i) best.ticks.push_back(round3(lo + i * step));
    }
    return best;
}

namespace {

std::string format_value(double v) {
    double r = std::round(v * 100.0) / 100.0;
    if (r == std::floor(r) && std::fabs(r) < 1e15) {
        return std::to_string(static_cast<long long>(r));
    }
    return fmt_num(r);
}

struct RenderContext {
    const DataTable& table;
    const ChartSpec& spec;
    Palette palette;
    double width;
    double height;
    const FontMetrics& metrics = FontMetrics::builtin();

    bool has_axis(const char* which) const { return true; }
    bool has_style(const char* axis) const {
        for (const auto& a : spec.style_axes)
            if (a == axis) return true;
        return false;
    }

    const Column& col(int idx, const char* what) const {
        if (idx < 0 || static_cast<std::size_t>(idx) >= table.columns.size())
            throw Error(ErrorCode::EncodingMismatch, "scene",
                        std::string("missing ") + what + " binding for " + spec.type_name);
        return table.columns[static_cast<std::size_t>(idx)];
    }
};

struct PlotArea {
    Rect plot;
    double tick_label_size = 11;
    double axis_label_size = 12;
};

SceneElement make_group(Role role = Role::None) {
    SceneElement g;
    g.geometry = GroupGeom{};
    g.role = role;
    return g;
}

SceneElement make_rect(double x, double y, double w, double h, Rgb fill, Role role,
                       double rx = 0) {
    SceneElement e;
    e.geometry = RectGeom{round3(x), round3(y), round3(w), round3(h), round3(rx)};
    e.fill = fill;
    e.role = role;
    return e;
}

SceneElement make_circle(double cx, double cy, double r, Rgb fill, Role role) {
    SceneElement e;
    e.geometry = CircleGeom{round3(cx), round3(cy), round3(r)};
    e.fill = fill;
    e.role = role;
    return e;
}

SceneElement make_line(double x1, double y1, double x2, double y2, Rgb stroke, double width,
                       Role role) {
    SceneElement e;
    e.geometry = LineGeom{round3(x1), round3(y1), round3(x2), round3(y2)};
    e.stroke = stroke;
    e.stroke_width = width;
    e.role = role;
    return e;
}

SceneElement make_text(const std::string& content, double x, double y, double size,
                       TextAnchor anchor, Rgb fill, Role role, bool bold = false) {
    SceneElement e;
    e.geometry = TextGeom{round3(x), round3(y), size, bold, anchor};
    e.text_content = content;
    e.fill = fill;
    e.role = role;
    return e;
}

// Pie/donut slice with exact sweep bookkeeping.
SceneElement make_arc(double cx, double cy, double r_outer, double r_inner, double start_deg,
                      double sweep_deg, Rgb fill, Role role) {
    SceneElement e;
    e.geometry = ArcGeom{cx, cy, r_outer, r_inner, start_deg, sweep_deg};
    e.fill = fill;
    e.role = role;
    return e;
}

struct SeriesTable {
    std::vector<std::string> keys;             // series names, first appearance order
    std::map<std::string, std::size_t> index;

    std::size_t intern(const std::string& k) {
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        std::size_t id = keys.size();
        index.emplace(k, id);
        keys.push_back(k);
        return id;
    }
};

// Shared categorical x (or y) band scale.
struct BandScale {
    double start = 0, size = 0;
    std::size_t n = 1;
    double padding = 0.2;

    double band_width() const {
        return size / (static_cast<double>(n) + padding * (static_cast<double>(n) + 1));
    }
    double band_start(std::size_t i) const {
        double bw = band_width();
        return start + bw * padding + static_cast<double>(i) * bw * (1 + padding);
    }
    double band_center(std::size_t i) const { return band_start(i) + band_width() / 2; }
};

struct LinearScale {
    double d0 = 0, d1 = 1;   // domain
    double r0 = 0, r1 = 1;   // range
    double map(double v) const {
        if (d1 == d0) return (r0 + r1) / 2;
        return r0 + (v - d0) / (d1 - d0) * (r1 - r0);
    }
};

class ChartBuilder {
public:
    ChartBuilder(const RenderContext& ctx) : ctx_(ctx) {
        scene_.width = ctx.width;
        scene_.height = ctx.height;
        scene_.root = make_group();
        scene_.data_element_index.assign(ctx.table.row_count, {});
    }

    ChartScene finish() && {
        assign_leaf_ids();
        return std::move(scene_);
    }

    RenderContext ctx_;
    ChartScene scene_;
    SceneElement data_group_ = make_group();

    Rgb text_color() const { return ctx_.palette.text_color(); }
    Rgb grid_color() const {
        Rgb t = text_color();
        Rgb b = ctx_.palette.background;
        auto mix = [](std::uint8_t a, std::uint8_t c) {
            return static_cast<std::uint8_t>((a * 30 + c * 70) / 100);
        };
        return {mix(t.r, b.r), mix(t.g, b.g), mix(t.b, b.b)};
    }

    // Margins sized from tick/category label measurements.
    PlotArea compute_plot(double left_label_w, bool bottom_labels, bool top_pad) {
        PlotArea pa;
        double pad = 8;
        double left = left_label_w + 10;
        double bottom = bottom_labels ? 24 : 10;
        double top = top_pad ? 18 : 10;
        pa.plot = {round3(left + pad), round3(top), round3(ctx_.width - left - 2 * pad - 6),
                   round3(ctx_.height - top - bottom)};
        return pa;
    }

    double max_label_width(const std::vector<std::string>& labels, double size) {
        double w = 0;
        for (const auto& s : labels)
            w = std::max(w, ctx_.metrics.measure(s, size).w);
        return w;
    }

    // Vertical numeric axis with ticks and labels.
    void add_value_axis_y(const PlotArea& pa, const TickSpec& ticks, const LinearScale& y,
                          const std::string& name) {
        SceneElement axis = make_group(Role::Axis);
        axis.children.push_back(
            make_line(pa.plot.x, pa.plot.y, pa.plot.x, pa.plot.y2(), grid_color(), 1, Role::Axis));
        for (double t : ticks.ticks) {
            double py = y.map(t);
            axis.children.push_back(
                make_line(pa.plot.x - 4, py, pa.plot.x, py, grid_color(), 1, Role::Axis));
            axis.children.push_back(make_text(format_value(t), pa.plot.x - 7,
                                              py + pa.tick_label_size * 0.35, pa.tick_label_size,
                                              TextAnchor::End, text_color(), Role::Axis));
        }
        if (!name.empty())
            axis.children.push_back(make_text(name, pa.plot.x, pa.plot.y - 6, pa.axis_label_size,
                                              TextAnchor::Start, text_color(), Role::Axis, true));
        scene_.root.children.push_back(std::move(axis));
    }

    // Horizontal numeric axis.
    void add_value_axis_x(const PlotArea& pa, const TickSpec& ticks, const LinearScale& x,
                          const std::string& name) {
        SceneElement axis = make_group(Role::Axis);
        double base = pa.plot.y2();
        axis.children.push_back(
            make_line(pa.plot.x, base, pa.plot.x2(), base, grid_color(), 1, Role::Axis));
        for (double t : ticks.ticks) {
            double px = x.map(t);
            axis.children.push_back(make_line(px, base, px, base + 4, grid_color(), 1, Role::Axis));
            axis.children.push_back(make_text(format_value(t), px, base + 4 + pa.tick_label_size,
                                              pa.tick_label_size, TextAnchor::Middle, text_color(),
                                              Role::Axis));
        }
        if (!name.empty())
            axis.children.push_back(make_text(name, pa.plot.x2(), base + 4 + 2.2 * pa.tick_label_size,
                                              pa.axis_label_size, TextAnchor::End, text_color(),
                                              Role::Axis, true));
        scene_.root.children.push_back(std::move(axis));
    }

    // Categorical labels along the bottom.
    void add_category_axis_x(const PlotArea& pa, const BandScale& bands,
                             const std::vector<std::string>& labels, const std::string& name) {
        SceneElement axis = make_group(Role::Axis);
        double base = pa.plot.y2();
        axis.children.push_back(
            make_line(pa.plot.x, base, pa.plot.x2(), base, grid_color(), 1, Role::Axis));
        double size = pa.tick_label_size;
        double bw = bands.band_width() * (1 + bands.padding);
        for (std::size_t i = 0; i < labels.size(); ++i) {
            std::string label = labels[i];
            // Truncate labels too wide for their band.
            while (label.size() > 1 && ctx_.metrics.measure(label, size).w > bw)
                label.resize(label.size() - 1);
            axis.children.push_back(make_text(label, bands.band_center(i), base + 4 + size,
                                              size, TextAnchor::Middle, text_color(), Role::Axis));
        }
        if (!name.empty())
            axis.children.push_back(make_text(name, pa.plot.x2(), base + 4 + 2.2 * size,
                                              pa.axis_label_size, TextAnchor::End, text_color(),
                                              Role::Axis, true));
        scene_.root.children.push_back(std::move(axis));
    }

    // Categorical labels along the left side.
    void add_category_axis_y(const PlotArea& pa, const BandScale& bands,
                             const std::vector<std::string>& labels, const std::string& name) {
        SceneElement axis = make_group(Role::Axis);
        axis.children.push_back(
            make_line(pa.plot.x, pa.plot.y, pa.plot.x, pa.plot.y2(), grid_color(), 1, Role::Axis));
        double size = pa.tick_label_size;
        for (std::size_t i = 0; i < labels.size(); ++i)
            axis.children.push_back(make_text(labels[i], pa.plot.x - 7,
                                              bands.band_center(i) + size * 0.35, size,
                                              TextAnchor::End, text_color(), Role::Axis));
        if (!name.empty())
            axis.children.push_back(make_text(name, pa.plot.x, pa.plot.y - 6, pa.axis_label_size,
                                              TextAnchor::Start, text_color(), Role::Axis, true));
        scene_.root.children.push_back(std::move(axis));
    }

    void add_legend(const std::vector<std::string>& series) {
        if (series.size() < 2) return;
        SceneElement legend = make_group(Role::Legend);
        double size = 11;
        double y = 4 + size;
        double x = ctx_.width - 8;
        // Right-aligned rows, swatch + label.
        for (std::size_t i = series.size(); i-- > 0;) {
            double tw = ctx_.metrics.measure(series[i], size).w;
            double row_y = y + static_cast<double>(i) * (size + 6);
            legend.children.push_back(make_text(series[i], x, row_y, size, TextAnchor::End,
                                                text_color(), Role::Legend));
            legend.children.push_back(make_rect(x - tw - 16, row_y - size * 0.75, 10, 10,
                                                ctx_.palette.color(i), Role::Legend));
        }
        std::reverse(legend.children.begin(), legend.children.end());
        scene_.root.children.push_back(std::move(legend));
    }

    void push_data_group() { scene_.root.children.push_back(std::move(data_group_)); }

    void add_data(SceneElement e, int row) {
        e.data_row = row;
        data_group_.children.push_back(std::move(e));
    }

    void assign_leaf_ids() {
        int next = 0;
        std::function<void(const SceneElement&)> walk = [&](const SceneElement& el) {
            if (el.is_group()) {
                for (const auto& ch : el.children) walk(ch);
                return;
            }
            if (el.data_row >= 0)
                scene_.data_element_index[static_cast<std::size_t>(el.data_row)].push_back(next);
            ++next;
        };
        walk(scene_.root);
    }
};

double icon_glyph(ChartBuilder& b, double cx, double cy, double r, Rgb color) {
    // Placeholder pictogram: dot over a pedestal, no external payload needed.
    b.data_group_.children.push_back(make_circle(cx, cy - r * 0.35, r * 0.5, color, Role::None));
    b.data_group_.children.push_back(
        make_rect(cx - r * 0.55, cy + r * 0.05, r * 1.1, r * 0.75, color, Role::None));
    return r;
}

// ---- renderers ------------------------------------------------------------

void render_bars(ChartBuilder& b, bool vertical) {
    const auto& ctx = b.ctx_;
    const Column& cat = ctx.col(ctx.spec.bindings.category_col, "category");
    const Column& val = ctx.col(ctx.spec.bindings.value_col, "value");

    TickSpec ticks = nice_ticks(*std::min_element(val.numbers.begin(), val.numbers.end()),
                                *std::max_element(val.numbers.begin(), val.numbers.end()), true);
    bool rounded = ctx.has_style("bar_corner");
    bool labels = ctx.has_style("value_label_position");
    bool icons = ctx.has_style("icon_placement");

    if (vertical) {
        std::vector<std::string> tick_labels;
        for (double t : ticks.ticks) tick_labels.push_back(format_value(t));
        PlotArea pa = b.compute_plot(b.max_label_width(tick_labels, 11), true, labels || icons);
        LinearScale y{ticks.lo, ticks.hi, pa.plot.y2(), pa.plot.y};
        BandScale bands{pa.plot.x, pa.plot.w, ctx.table.row_count, 0.25};
        double zero = y.map(0);
        for (std::size_t i = 0; i < ctx.table.row_count; ++i) {
            double v = val.numbers[i];
            double py = y.map(v);
            double top = std::min(py, zero), hgt = std::fabs(py - zero);
            double bw = bands.band_width();
            double rx = rounded ? std::min(4.0, bw / 4) : 0.0;
            b.add_data(make_rect(bands.band_start(i), top, bw, hgt, ctx.palette.color(0),
                                 Role::Data, rx),
                       static_cast<int>(i));
            if (labels)
                b.data_group_.children.push_back(
                    make_text(format_value(v), bands.band_center(i), top - 4, 10,
                              TextAnchor::Middle, b.text_color(), Role::None));
            if (icons)
                icon_glyph(b, bands.band_center(i), top - 12, std::min(9.0, bw / 3),
                           ctx.palette.color(0));
        }
        b.push_data_group();
        b.add_value_axis_y(pa, ticks, y, val.name);
        b.add_category_axis_x(pa, bands, cat.values, cat.name);
    } else {
        PlotArea pa = b.compute_plot(b.max_label_width(cat.values, 11), true, false);
        LinearScale x{ticks.lo, ticks.hi, pa.plot.x, pa.plot.x2()};
        BandScale bands{pa.plot.y, pa.plot.h, ctx.table.row_count, 0.25};
        double zero = x.map(0);
        for (std::size_t i = 0; i < ctx.table.row_count; ++i) {
            double v = val.numbers[i];
            double px = x.map(v);
            double left = std::min(px, zero), wid = std::fabs(px - zero);
            double bw = bands.band_width();
            double rx = rounded ? std::min(4.0, bw / 4) : 0.0;
            b.add_data(make_rect(left, bands.band_start(i), wid, bw, ctx.palette.color(0),
                                 Role::Data, rx),
                       static_cast<int>(i));
            if (labels)
                b.data_group_.children.push_back(
                    make_text(format_value(v), left + wid + 4, bands.band_center(i) + 3.5, 10,
                              TextAnchor::Start, b.text_color(), Role::None));
            if (icons)
                icon_glyph(b, left + wid + 14, bands.band_center(i), std::min(9.0, bw / 2.2),
                           ctx.palette.color(0));
        }
        b.push_data_group();
        b.add_value_axis_x(pa, ticks, x, val.name);
        b.add_category_axis_y(pa, bands, cat.values, "");
    }
}

void render_grouped_or_stacked(ChartBuilder& b, bool stacked) {
    const auto& ctx = b.ctx_;
    const Column& cat = ctx.col(ctx.spec.bindings.category_col, "category");
    const Column& ser = ctx.col(ctx.spec.bindings.series_col, "series");
    const Column& val = ctx.col(ctx.spec.bindings.value_col, "value");

    SeriesTable groups, series;
    for (std::size_t i = 0; i < ctx.table.row_count; ++i) {
        groups.intern(cat.values[i]);
        series.intern(ser.values[i]);
    }
    // Aggregate duplicates by sum; absent combinations render as zero bars.
    std::vector<std::vector<double>> cell(groups.keys.size(),
                                          std::vector<double>(series.keys.size(), 0.0));
    std::vector<std::vector<int>> cell_row(groups.keys.size(),
                                           std::vector<int>(series.keys.size(), -1));
    for (std::size_t i = 0; i < ctx.table.row_count; ++i) {
        std::size_t g = groups.intern(cat.values[i]);
        std::size_t s = series.intern(ser.values[i]);
        cell[g][s] += val.numbers[i];
        if (cell_row[g][s] < 0) cell_row[g][s] = static_cast<int>(i);
    }

    double max_v = 0;
    for (std::size_t g = 0; g < groups.keys.size(); ++g) {
        double total = 0;
        for (std::size_t s = 0; s < series.keys.size(); ++s) {
            double v = std::max(0.0, cell[g][s]);
            total += v;
            max_v = std::max(max_v, v);
        }
        if (stacked) max_v = std::max(max_v, total);
    }
    TickSpec ticks = nice_ticks(0, max_v, true);

    std::vector<std::string> tick_labels;
    for (double t : ticks.ticks) tick_labels.push_back(format_value(t));
    PlotArea pa = b.compute_plot(b.max_label_width(tick_labels, 11), true, false);
    LinearScale y{ticks.lo, ticks.hi, pa.plot.y2(), pa.plot.y};
    BandScale bands{pa.plot.x, pa.plot.w, groups.keys.size(), 0.25};
    bool rounded = ctx.has_style("bar_corner");
    bool outline = ctx.has_style("outline_style");
    bool labels = ctx.has_style("value_label_position");

    Palette pal = ctx.palette.colors.size() >= series.keys.size()
                      ? ctx.palette
                      : supplement_palette(ctx.palette, series.keys.size());
    for (std::size_t g = 0; g < groups.keys.size(); ++g) {
        double bw = bands.band_width();
        double acc = 0;
        for (std::size_t s = 0; s < series.keys.size(); ++s) {
            double v = std::max(0.0, cell[g][s]);
            SceneElement r;
            if (stacked) {
                double y1 = y.map(acc + v), y0 = y.map(acc);
                r = make_rect(bands.band_start(g), y1, bw, y0 - y1, pal.color(s), Role::Data,
                              rounded ? 2.0 : 0.0);
                acc += v;
            } else {
                double sw = bw / static_cast<double>(series.keys.size());
                double py = y.map(v), zero = y.map(0);
                r = make_rect(bands.band_start(g) + sw * static_cast<double>(s), py,
                              sw * 0.92, zero - py, pal.color(s), Role::Data, rounded ? 2.0 : 0.0);
                if (labels && v > 0)
                    b.data_group_.children.push_back(make_text(
                        format_value(v), bands.band_start(g) + sw * (static_cast<double>(s) + 0.46),
                        py - 3, 9, TextAnchor::Middle, b.text_color(), Role::None));
            }
            if (outline) {
                r.stroke = pal.background;
                r.stroke_width = 1;
            }
            b.add_data(std::move(r), cell_row[g][s]);
        }
    }
    b.push_data_group();
    b.add_value_axis_y(pa, ticks, y, val.name);
    b.add_category_axis_x(pa, bands, groups.keys, cat.name);
    b.add_legend(series.keys);
    b.scene_.series_count = series.keys.size();
    b.scene_.color_binding = ser.name;
}

struct SeriesPoints {
    std::vector<std::size_t> rows; // sorted by temporal ordinal
};

// Shared point layout for line / spline / area families.
struct TemporalLayout {
    SeriesTable series;
    std::vector<SeriesPoints> per_series;
    std::vector<double> xs; // per row, temporal ordinal
    TickSpec yticks;
    PlotArea pa;
    LinearScale x, y;
    std::vector<std::string> x_labels;
    std::vector<double> x_label_pos;
};

TemporalLayout temporal_layout(ChartBuilder& b, bool stacked) {
    const auto& ctx = b.ctx_;
    const Column& tcol = ctx.col(ctx.spec.bindings.temporal_col, "temporal");
    const Column& val = ctx.col(ctx.spec.bindings.value_col, "value");
    const Column* ser = ctx.spec.bindings.series_col >= 0
                            ? &ctx.col(ctx.spec.bindings.series_col, "series")
                            : nullptr;

    TemporalLayout L;
    L.xs = tcol.numbers;
    for (std::size_t i = 0; i < ctx.table.row_count; ++i)
        L.series.intern(ser ? ser->values[i] : val.name);
    L.per_series.resize(L.series.keys.size());
    for (std::size_t i = 0; i < ctx.table.row_count; ++i) {
        std::size_t s = L.series.intern(ser ? ser->values[i] : val.name);
        L.per_series[s].rows.push_back(i);
    }
    for (auto& sp : L.per_series)
        std::sort(sp.rows.begin(), sp.rows.end(), [&](std::size_t a, std::size_t c) {
            if (L.xs[a] != L.xs[c]) return L.xs[a] < L.xs[c];
            return a < c;
        });

    double vmin = *std::min_element(val.numbers.begin(), val.numbers.end());
    double vmax = *std::max_element(val.numbers.begin(), val.numbers.end());
    if (stacked) {
        // Max stacked total across distinct x.
        std::map<double, double> totals;
        for (std::size_t i = 0; i < ctx.table.row_count; ++i)
            totals[L.xs[i]] += std::max(0.0, val.numbers[i]);
        vmax = 0;
        for (auto& [_, t] : totals) vmax = std::max(vmax, t);
        vmin = 0;
    }
    L.yticks = nice_ticks(vmin, vmax, true);

    std::vector<std::string> tick_labels;
    for (double t : L.yticks.ticks) tick_labels.push_back(format_value(t));
    L.pa = b.compute_plot(b.max_label_width(tick_labels, 11), true, false);
    double xmin = *std::min_element(L.xs.begin(), L.xs.end());
    double xmax = *std::max_element(L.xs.begin(), L.xs.end());
    L.x = {xmin, xmax, L.pa.plot.x + 4, L.pa.plot.x2() - 4};
    L.y = {L.yticks.lo, L.yticks.hi, L.pa.plot.y2(), L.pa.plot.y};

    // Up to 6 x labels at distinct temporal values.
    std::vector<std::pair<double, std::string>> distinct;
    std::set<double> seen;
    for (std::size_t i = 0; i < ctx.table.row_count; ++i)
        if (seen.insert(L.xs[i]).second)
            distinct.emplace_back(L.xs[i], tcol.values[i]);
    std::sort(distinct.begin(), distinct.end());
    std::size_t step = std::max<std::size_t>(1, (distinct.size() + 5) / 6);
    for (std::size_t i = 0; i < distinct.size(); i += step) {
        L.x_labels.push_back(distinct[i].second);
        L.x_label_pos.push_back(L.x.map(distinct[i].first));
    }
    return L;
}

void add_temporal_axes(ChartBuilder& b, const TemporalLayout& L) {
    const auto& ctx = b.ctx_;
    const Column& tcol = ctx.col(ctx.spec.bindings.temporal_col, "temporal");
    const Column& val = ctx.col(ctx.spec.bindings.value_col, "value");
    b.add_value_axis_y(L.pa, L.yticks, L.y, val.name);

    SceneElement axis = make_group(Role::Axis);
    double base = L.pa.plot.y2();
    axis.children.push_back(
        make_line(L.pa.plot.x, base, L.pa.plot.x2(), base, b.grid_color(), 1, Role::Axis));
    for (std::size_t i = 0; i < L.x_labels.size(); ++i) {
        axis.children.push_back(
            make_line(L.x_label_pos[i], base, L.x_label_pos[i], base + 4, b.grid_color(), 1,
                      Role::Axis));
        axis.children.push_back(make_text(L.x_labels[i], L.x_label_pos[i], base + 15, 11,
                                          TextAnchor::Middle, b.text_color(), Role::Axis));
    }
    axis.children.push_back(make_text(tcol.name, L.pa.plot.x2(), base + 4 + 2.2 * 11, 12,
                                      TextAnchor::End, b.text_color(), Role::Axis, true));
    b.scene_.root.children.push_back(std::move(axis));
}

// Catmull-Rom spline through the points, emitted as cubic Beziers.
void spline_segments(PathBuilder& pb, const std::vector<Vec2>& pts) {
    if (pts.size() < 3) {
        for (std::size_t i = 1; i < pts.size(); ++i) pb.line_to(pts[i].x, pts[i].y);
        return;
    }
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Vec2 p0 = i == 0 ? pts[0] : pts[i - 1];
        Vec2 p1 = pts[i];
        Vec2 p2 = pts[i + 1];
        Vec2 p3 = i + 2 < pts.size() ? pts[i + 2] : p2;
        Vec2 c1{p1.x + (p2.x - p0.x) / 6.0, p1.y + (p2.y - p0.y) / 6.0};
        Vec2 c2{p2.x - (p3.x - p1.x) / 6.0, p2.y - (p3.y - p1.y) / 6.0};
        pb.cubic_to(c1.x, c1.y, c2.x, c2.y, p2.x, p2.y);
    }
}

void render_line_family(ChartBuilder& b, bool spline, bool area, bool stacked) {
    const auto& ctx = b.ctx_;
    const Column& val = ctx.col(ctx.spec.bindings.value_col, "value");
    TemporalLayout L = temporal_layout(b, stacked);
    bool markers = ctx.has_style("outline_style");
    bool labels = ctx.has_style("value_label_position");

    Palette pal = ctx.palette.colors.size() >= L.series.keys.size()
                      ? ctx.palette
                      : supplement_palette(ctx.palette, L.series.keys.size());

    if (stacked) {
        // Cumulative baselines over distinct sorted x.
        std::vector<double> xs_sorted;
        {
            std::set<double> s(L.xs.begin(), L.xs.end());
            xs_sorted.assign(s.begin(), s.end());
        }
        std::map<double, double> base;
        for (double x : xs_sorted) base[x] = 0;
        for (std::size_t s = 0; s < L.series.keys.size(); ++s) {
            std::map<double, double> v;
            int first_row = -1;
            for (std::size_t r : L.per_series[s].rows) {
                v[L.xs[r]] += std::max(0.0, val.numbers[r]);
                if (first_row < 0) first_row = static_cast<int>(r);
            }
            PathBuilder pb;
            std::vector<Vec2> top;
            for (double x : xs_sorted)
                top.push_back({L.x.map(x), L.y.map(base[x] + (v.count(x) ? v[x] : 0.0))});
            pb.move_to(top.front().x, top.front().y);
            for (std::size_t i = 1; i < top.size(); ++i) pb.line_to(top[i].x, top[i].y);
            for (std::size_t i = xs_sorted.size(); i-- > 0;)
                pb.line_to(L.x.map(xs_sorted[i]), L.y.map(base[xs_sorted[i]]));
            pb.close();
            SceneElement e;
            e.geometry = PathGeom{pb.str()};
            e.fill = pal.color(s);
            e.role = Role::Data;
            b.add_data(std::move(e), first_row);
            for (double x : xs_sorted) base[x] += v.count(x) ? v[x] : 0.0;
        }
        // Index remaining rows of each series to its area path.
        b.push_data_group();
        add_temporal_axes(b, L);
        b.add_legend(L.series.keys);
        b.scene_.series_count = L.series.keys.size();
        if (ctx.spec.bindings.series_col >= 0)
            b.scene_.color_binding =
                ctx.table.columns[static_cast<std::size_t>(ctx.spec.bindings.series_col)].name;
        return;
    }

    for (std::size_t s = 0; s < L.series.keys.size(); ++s) {
        const auto& rows = L.per_series[s].rows;
        std::vector<Vec2> pts;
        for (std::size_t r : rows) pts.push_back({L.x.map(L.xs[r]), L.y.map(val.numbers[r])});
        PathBuilder pb;
        if (area) {
            double y0 = L.y.map(std::max(0.0, L.yticks.lo));
            pb.move_to(pts.front().x, y0);
            pb.line_to(pts.front().x, pts.front().y);
            if (spline) spline_segments(pb, pts);
            else
                for (std::size_t i = 1; i < pts.size(); ++i) pb.line_to(pts[i].x, pts[i].y);
            pb.line_to(pts.back().x, y0);
            pb.close();
        } else {
            pb.move_to(pts.front().x, pts.front().y);
            if (spline) spline_segments(pb, pts);
            else
                for (std::size_t i = 1; i < pts.size(); ++i) pb.line_to(pts[i].x, pts[i].y);
        }
        SceneElement e;
        e.geometry = PathGeom{pb.str()};
        e.role = Role::Data;
        if (area) {
            e.fill = pal.color(s);
            e.opacity = L.series.keys.size() > 1 ? 0.75 : 1.0;
        } else {
            e.stroke = pal.color(s);
            e.stroke_width = 2.5;
        }
        b.add_data(std::move(e), rows.empty() ? -1 : static_cast<int>(rows.front()));

        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (markers || !area) {
                SceneElement c = make_circle(pts[k].x, pts[k].y, markers ? 3.5 : 2.5,
                                             pal.color(s), Role::Data);
                if (markers) {
                    c.fill = pal.background;
                    c.stroke = pal.color(s);
                    c.stroke_width = 2;
                }
                b.add_data(std::move(c), static_cast<int>(rows[k]));
            }
            if (labels)
                b.data_group_.children.push_back(make_text(format_value(val.numbers[rows[k]]),
                                                           pts[k].x, pts[k].y - 7, 9,
                                                           TextAnchor::Middle, b.text_color(),
                                                           Role::None));
        }
    }
    b.push_data_group();
    add_temporal_axes(b, L);
    b.add_legend(L.series.keys);
    b.scene_.series_count = L.series.keys.size();
    if (ctx.spec.bindings.series_col >= 0)
        b.scene_.color_binding =
            ctx.table.columns[static_cast<std::size_t>(ctx.spec.bindings.series_col)].name;
}

void render_pie(ChartBuilder& b, bool donut) {
    const auto& ctx = b.ctx_;
    const Column& cat = ctx.col(ctx.spec.bindings.category_col, "category");
    const Column& val = ctx.col(ctx.spec.bindings.value_col, "value");

    // One slice per distinct category, values aggregated by sum.
    SeriesTable cats;
    std::vector<double> sums;
    std::vector<int> first_row;
    for (std::size_t i = 0; i < ctx.table.row_count; ++i) {
        std::size_t k = cats.intern(cat.values[i]);
        if (k == sums.size()) {
            sums.push_back(0);
            first_row.push_back(static_cast<int>(i));
        }
        sums[k] += val.numbers[i];
    }
    double total = 0;
    for (double v : sums) total += std::max(0.0, v);
    if (total <= 0)
        throw Error(ErrorCode::EncodingMismatch, "scene", "pie requires a positive value total");

    Palette pal = ctx.palette.colors.size() >= cats.keys.size()
                      ? ctx.palette
                      : supplement_palette(ctx.palette, cats.keys.size());
    double cx = ctx.width * 0.42;
    double cy = ctx.height * 0.52;
    double r = std::min(ctx.width * 0.36, ctx.height * 0.40);
    double inner = donut ? r * 0.55 : 0.0;
    bool outline = ctx.has_style("outline_style");
    bool labels = ctx.has_style("value_label_position");
    double start = ctx.has_style("orientation_flourish") ? 90.0 : 0.0;

    for (std::size_t k = 0; k < cats.keys.size(); ++k) {
        double sweep = 360.0 * std::max(0.0, sums[k]) / total;
        SceneElement slice = make_arc(cx, cy, r, inner, start, sweep, pal.color(k), Role::Data);
        if (outline) {
            slice.stroke = pal.background;
            slice.stroke_width = 2;
        }
        b.add_data(std::move(slice), first_row[k]);
        if (labels && sweep > 14.0) {
            double mid = (start + sweep / 2.0 - 90.0) * kPi / 180.0;
            double lr = (donut ? (r + inner) / 2.0 : r * 0.65);
            double share = 100.0 * std::max(0.0, sums[k]) / total;
            b.data_group_.children.push_back(
                make_text(format_value(std::round(share)) + "%", cx + lr * std::cos(mid),
                          cy + lr * std::sin(mid) + 3.5, 10, TextAnchor::Middle,
                          Rgb{255, 255, 255}, Role::None));
        }
        start += sweep;
    }
    b.push_data_group();
    b.add_legend(cats.keys);
    b.scene_.series_count = cats.keys.size();
    b.scene_.color_binding = cat.name;
}

void render_scatter(ChartBuilder& b, bool bubble) {
    const auto& ctx = b.ctx_;
    const Column& cat = ctx.col(ctx.spec.bindings.category_col, "category");
    const Column& v1 = ctx.col(ctx.spec.bindings.value_col, "value");
    const Column& v2 = ctx.col(ctx.spec.bindings.value2_col, "second value");
    bool outline = ctx.has_style("outline_style");
    bool labels = ctx.has_style("value_label_position");

    if (!bubble) {
        TickSpec tx = nice_ticks(*std::min_element(v1.numbers.begin(), v1.numbers.end()),
                                 *std::max_element(v1.numbers.begin(), v1.numbers.end()), false);
        TickSpec ty = nice_ticks(*std::min_element(v2.numbers.begin(), v2.numbers.end()),
                                 *std::max_element(v2.numbers.begin(), v2.numbers.end()), false);
        std::vector<std::string> tick_labels;
        for (double t : ty.ticks) tick_labels.push_back(format_value(t));
        PlotArea pa = b.compute_plot(b.max_label_width(tick_labels, 11), true, false);
        LinearScale x{tx.lo, tx.hi, pa.plot.x + 6, pa.plot.x2() - 6};
        LinearScale y{ty.lo, ty.hi, pa.plot.y2() - 6, pa.plot.y + 6};
        for (std::size_t i = 0; i < ctx.table.row_count; ++i) {
            SceneElement c = make_circle(x.map(v1.numbers[i]), y.map(v2.numbers[i]), 5,
                                         ctx.palette.color(0), Role::Data);
            if (outline) {
                c.fill = ctx.palette.background;
                c.stroke = ctx.palette.color(0);
                c.stroke_width = 2;
            }
            b.add_data(std::move(c), static_cast<int>(i));
            if (labels)
                b.data_group_.children.push_back(
                    make_text(cat.values[i], x.map(v1.numbers[i]), y.map(v2.numbers[i]) - 8, 9,
                              TextAnchor::Middle, b.text_color(), Role::None));
        }
        b.push_data_group();
        b.add_value_axis_y(pa, ty, y, v2.name);
        b.add_value_axis_x(pa, tx, x, v1.name);
        return;
    }

    // Bubble: category bands on x, first numeric on y, second numeric as size.
    TickSpec ty = nice_ticks(*std::min_element(v1.numbers.begin(), v1.numbers.end()),
                             *std::max_element(v1.numbers.begin(), v1.numbers.end()), false);
    std::vector<std::string> tick_labels;
    for (double t : ty.ticks) tick_labels.push_back(format_value(t));
    PlotArea pa = b.compute_plot(b.max_label_width(tick_labels, 11), true, false);
    BandScale bands{pa.plot.x, pa.plot.w, ctx.table.row_count, 0.2};
    LinearScale y{ty.lo, ty.hi, pa.plot.y2() - 10, pa.plot.y + 10};
    double smin = *std::min_element(v2.numbers.begin(), v2.numbers.end());
    double smax = *std::max_element(v2.numbers.begin(), v2.numbers.end());
    double rmin = 4, rmax = std::min(bands.band_width() / 2, 22.0);
    for (std::size_t i = 0; i < ctx.table.row_count; ++i) {
        double t = smax > smin ? (v2.numbers[i] - smin) / (smax - smin) : 0.5;
        double r = rmin + (rmax - rmin) * std::sqrt(std::max(0.0, t));
        SceneElement c = make_circle(bands.band_center(i), y.map(v1.numbers[i]), r,
                                     ctx.palette.color(0), Role::Data);
        c.opacity = 0.85;
        if (outline) {
            c.fill = ctx.palette.background;
            c.stroke = ctx.palette.color(0);
            c.stroke_width = 2;
        }
        b.add_data(std::move(c), static_cast<int>(i));
    }
    b.push_data_group();
    b.add_value_axis_y(pa, ty, y, v1.name);
    b.add_category_axis_x(pa, bands, cat.values, cat.name);
}

void render_lollipop(ChartBuilder& b) {
    const auto& ctx = b.ctx_;
    const Column& cat = ctx.col(ctx.spec.bindings.category_col, "category");
    const Column& val = ctx.col(ctx.spec.bindings.value_col, "value");
    TickSpec ticks = nice_ticks(*std::min_element(val.numbers.begin(), val.numbers.end()),
                                *std::max_element(val.numbers.begin(), val.numbers.end()), true);
    std::vector<std::string> tick_labels;
    for (double t : ticks.ticks) tick_labels.push_back(format_value(t));
    bool labels = ctx.has_style("value_label_position");
    bool icons = ctx.has_style("icon_placement");
    PlotArea pa = b.compute_plot(b.max_label_width(tick_labels, 11), true, labels || icons);
    LinearScale y{ticks.lo, ticks.hi, pa.plot.y2(), pa.plot.y};
    BandScale bands{pa.plot.x, pa.plot.w, ctx.table.row_count, 0.25};
    double zero = y.map(0);
    double head_r = std::min(7.0, bands.band_width() / 2.5);
    for (std::size_t i = 0; i < ctx.table.row_count; ++i) {
        double py = y.map(val.numbers[i]);
        double cxx = bands.band_center(i);
        // The head circle is the data mark; the stem is decoration.
        b.data_group_.children.push_back(
            make_line(cxx, zero, cxx, py, ctx.palette.color(0), 2, Role::None));
        b.add_data(make_circle(cxx, py, head_r, ctx.palette.color(0), Role::Data),
                   static_cast<int>(i));
        if (labels)
            b.data_group_.children.push_back(make_text(format_value(val.numbers[i]), cxx,
                                                       py - head_r - 4, 10, TextAnchor::Middle,
                                                       b.text_color(), Role::None));
        if (icons) icon_glyph(b, cxx, py - head_r - 13, head_r, ctx.palette.color(0));
    }
    b.push_data_group();
    b.add_value_axis_y(pa, ticks, y, val.name);
    b.add_category_axis_x(pa, bands, cat.values, cat.name);
}

void render_waffle(ChartBuilder& b) {
    const auto& ctx = b.ctx_;
    const Column& val = ctx.col(ctx.spec.bindings.value_col, "value");
    // First value read as a fraction (<= 1) or a percentage.
    double raw = val.numbers.front();
    double fraction = raw <= 1.0 ? raw : raw / 100.0;
    fraction = std::clamp(fraction, 0.0, 1.0);
    constexpr int kCells = 100, kSide = 10;
    int filled = static_cast<int>(std::llround(fraction * kCells));

    double size = std::min(ctx.width, ctx.height) * 0.8;
    double x0 = (ctx.width - size) / 2, y0 = (ctx.height - size) / 2;
    double cell = size / kSide;
    double pad = cell * 0.12;
    bool rounded = ctx.has_style("bar_corner");
    Rgb off = b.grid_color();
    // Bottom-up fill order, row-major.
    for (int i = 0; i < kCells; ++i) {
        int row = i / kSide, colk = i % kSide;
        double x = x0 + colk * cell + pad;
        double y = y0 + size - (row + 1) * cell + pad;
        bool on = i < filled;
        SceneElement r = make_rect(x, y, cell - 2 * pad, cell - 2 * pad,
                                   on ? ctx.palette.color(0) : off,
                                   on ? Role::Data : Role::None, rounded ? cell * 0.18 : 0.0);
        if (on) b.add_data(std::move(r), 0);
        else b.data_group_.children.push_back(std::move(r));
    }
    if (ctx.has_style("value_label_position"))
        b.data_group_.children.push_back(
            make_text(format_value(std::round(fraction * 100)) + "%", ctx.width / 2, y0 - 8, 16,
                      TextAnchor::Middle, b.text_color(), Role::None, true));
    b.push_data_group();
}

} // namespace

EncodingBindings default_bindings(const DataTable& table, const std::string& type_name) {
    EncodingBindings bind;
    std::vector<int> cats, nums, temps;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        switch (table.columns[i].kind) {
            case AttributeKind::Categorical: cats.push_back(static_cast<int>(i)); break;
            case AttributeKind::Numeric: nums.push_back(static_cast<int>(i)); break;
            case AttributeKind::Temporal: temps.push_back(static_cast<int>(i)); break;
        }
    }
    if (!cats.empty()) bind.category_col = cats[0];
    if (cats.size() > 1) bind.series_col = cats[1];
    if (!nums.empty()) bind.value_col = nums[0];
    if (nums.size() > 1) bind.value2_col = nums[1];
    if (!temps.empty()) bind.temporal_col = temps[0];
    // Line-family charts with one categorical treat it as the series.
    if (bind.temporal_col >= 0 && bind.series_col < 0 && bind.category_col >= 0) {
        bind.series_col = bind.category_col;
        bind.category_col = -1;
    }
    (void)type_name;
    return bind;
}

ChartScene render_chart(const DataTable& table, const ChartSpec& spec, const Palette& palette,
                        double width, double height) {
    RenderContext ctx{table, spec, palette, width, height};
    ChartBuilder b(ctx);
    const std::string& t = spec.type_name;

    if (t == "Vertical Bar Chart") render_bars(b, true);
    else if (t == "Horizontal Bar Chart") render_bars(b, false);
    else if (t == "Vertical Stacked Bar Chart") render_grouped_or_stacked(b, true);
    else if (t == "Vertical Grouped Bar Chart") render_grouped_or_stacked(b, false);
    else if (t == "Line Graph") render_line_family(b, false, false, false);
    else if (t == "Spline Graph") render_line_family(b, true, false, false);
    else if (t == "Area Chart") render_line_family(b, false, true, false);
    else if (t == "Stacked Area Chart") render_line_family(b, false, true, true);
    else if (t == "Pie Chart") render_pie(b, false);
    else if (t == "Donut Chart") render_pie(b, true);
    else if (t == "Scatterplot") render_scatter(b, false);
    else if (t == "Bubble Chart") render_scatter(b, true);
    else if (t == "Lollipop Chart") render_lollipop(b);
    else if (t == "Waffle Chart") render_waffle(b);
    else
        throw Error(ErrorCode::UnsupportedChartType, "scene", "no renderer for '" + t + "'");

    return std::move(b).finish();
}

namespace {

double adjacent_min_de(const std::vector<Rgb>& colors) {
    double best = 1e9;
    for (std::size_t i = 0; i + 1 < colors.size(); ++i)
        best = std::min(best, ciede2000(colors[i], colors[i + 1]));
    return best;
}

} // namespace

Palette supplement_palette(const Palette& base, std::size_t needed) {
    Palette out = base;
    if (out.colors.empty()) out.colors.push_back(Rgb{70, 130, 180});
    while (out.colors.size() < needed) {
        Lch prev = lab_to_lch(rgb_to_lab(out.colors.back()));
        // Achromatic colors have no usable hue; give them one.
        if (prev.c < 12.0) {
            prev.c = 42.0;
            prev.l = std::clamp(prev.l, 32.0, 78.0);
        }
        Rgb next{};
        bool found = false;
        for (int attempt = 0; attempt < 24 && !found; ++attempt) {
            Lch cand = prev;
            cand.h = std::fmod(prev.h + 137.508 * (1 + attempt), 360.0);
            if (attempt >= 8) cand.l = std::clamp(prev.l + ((attempt % 2) ? 18.0 : -18.0), 25.0, 85.0);
            next = lab_to_rgb(lch_to_lab(cand));
            if (ciede2000(next, out.colors.back()) >= 10.0) found = true;
        }
        if (!found) next = luminance(out.colors.back()) < 128 ? Rgb{235, 235, 235} : Rgb{25, 25, 25};
        out.colors.push_back(next);
    }
    (void)adjacent_min_de;
    return out;
}

} // namespace foundry
