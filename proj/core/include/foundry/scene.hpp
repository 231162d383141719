#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "foundry/color.hpp"
#include "foundry/geometry.hpp"
#include "foundry/tabular.hpp"
#include "foundry/text_metrics.hpp"

namespace foundry {

enum class Role { None, Title, Image, Legend, Axis, Data };

const char* role_class_name(Role r); // nullptr for None/Data (no class emitted)

struct RectGeom {
    double x = 0, y = 0, w = 0, h = 0;
    double rx = 0; // corner radius
};

struct CircleGeom {
    double cx = 0, cy = 0, r = 0;
};

struct LineGeom {
    double x1 = 0, y1 = 0, x2 = 0, y2 = 0;
};

struct PathGeom {
    std::string d;
};

/// Annular sector (pie/donut slice); serialized as a path element.
/// Angles in degrees, 0 at 12 o'clock, sweeping clockwise.
struct ArcGeom {
    double cx = 0, cy = 0;
    double r_outer = 0;
    double r_inner = 0; // 0 for a full pie slice
    double start_deg = 0;
    double sweep_deg = 0;
};

enum class TextAnchor { Start, Middle, End };

struct TextGeom {
    double x = 0, y = 0; // baseline position
    double size = 12;
    bool bold = false;
    TextAnchor anchor = TextAnchor::Start;
};

struct ImageGeom {
    double x = 0, y = 0, w = 0, h = 0;
};

struct GroupGeom {};

using Geometry =
    std::variant<RectGeom, CircleGeom, LineGeom, PathGeom, ArcGeom, TextGeom, ImageGeom, GroupGeom>;

struct SceneElement {
    Geometry geometry;
    Role role = Role::None;
    std::optional<Rgb> fill;     // absent => fill="none"
    std::optional<Rgb> stroke;
    double stroke_width = 0.0;
    double opacity = 1.0;
    std::string text_content;    // text leaves
    std::string image_href;      // image leaves (data URI or handle)
    int data_row = -1;           // source table row for data marks
    std::vector<SceneElement> children; // groups only

    bool is_group() const { return std::holds_alternative<GroupGeom>(geometry); }

    /// Tight bbox of this element (leaf) or of all descendants (group).
    Rect bbox(const FontMetrics& metrics) const;
};

struct ChartScene {
    double width = 0;
    double height = 0;
    SceneElement root;              // group
    std::size_t series_count = 1;
    std::string color_binding;      // column name colors encode, empty if none
    std::vector<std::vector<int>> data_element_index; // row -> leaf ids (preorder leaf index)

    Rect bounds(const FontMetrics& metrics) const { return root.bbox(metrics); }
};

struct Palette {
    std::vector<Rgb> colors;
    Rgb background{255, 255, 255};

    Rgb color(std::size_t i) const { return colors[i % colors.size()]; }
    /// Near-black on light backgrounds, near-white on dark ones.
    Rgb text_color() const;
};

/// Built-in curated palette pool (>= 20 entries, adjacent dE00 >= 10).
const std::vector<Palette>& builtin_palettes();

/// Extend a palette to `needed` colors by HCL hue rotation, preserving the
/// base colors and the adjacent-distance invariant.
Palette supplement_palette(const Palette& base, std::size_t needed);

struct EncodingBindings {
    int category_col = -1;
    int series_col = -1;
    int value_col = -1;
    int value2_col = -1;
    int temporal_col = -1;
};

struct ChartSpec {
    std::string type_name;
    std::string variation_id;
    std::vector<std::string> style_axes;
    EncodingBindings bindings;
};

/// Derive default encoding bindings for a chart type from the table's column
/// kinds (first categorical -> category, second -> series, and so on).
EncodingBindings default_bindings(const DataTable& table, const std::string& type_name);

/// Render a table into a chart scene. The spec's type must be in the
/// rendered subset and its signature must match the table.
ChartScene render_chart(const DataTable& table, const ChartSpec& spec, const Palette& palette,
                        double width, double height);

/// 4-7 axis ticks using nice steps {1, 2, 2.5, 5, 10} x 10^k.
struct TickSpec {
    std::vector<double> ticks;
    double step = 0;
    double lo = 0;
    double hi = 0;
};
TickSpec nice_ticks(double min_value, double max_value, bool include_zero);

/// Walk all leaves in document (preorder) order.
void for_each_leaf(const SceneElement& root,
                   const std::function<void(const SceneElement&)>& fn);

} // namespace foundry
