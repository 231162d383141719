#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "foundry/color.hpp"
#include "foundry/geometry.hpp"
#include "foundry/scene.hpp"

namespace foundry {

/// Normalized leaf tag for matching. polyline is folded into Polygon.
enum class LeafKind { Rect, Circle, Ellipse, Line, Polygon, Path, Text, Image };

const char* leaf_kind_name(LeafKind k);

/// One rendered leaf extracted from an SVG document, with transforms
/// flattened and inherited paint resolved.
struct SvgLeaf {
    LeafKind kind = LeafKind::Rect;
    Rect bbox;                     // px, post-transform
    double cx = 0, cy = 0;         // bbox center normalized by canvas size
    double area = 0;               // bbox area as a share of the canvas area
    std::optional<Rgb> color;      // fill if paintable, else stroke
    std::string text;              // text leaves: concatenated content
    std::uint64_t image_hash = 0;  // image leaves: hash of the href payload
    int source_index = 0;          // document order among leaves
    bool zero_area = false;
    bool url_fill = false;         // paint referenced a url(); treated as none
};

struct SvgDocument {
    double width = 0;
    double height = 0;
    std::vector<SvgLeaf> leaves;
    std::vector<std::string> warnings; // e.g. ignored stylesheets/scripts
};

/// Parse an SVG document into its leaf feature set. Unknown containers are
/// recursed, non-rendered subtrees (defs, clipPath, ...) are skipped.
/// Throws Error(MalformedSvg) on unparseable input.
SvgDocument parse_svg(std::string_view text);

/// Serialize a scene tree to a standalone SVG string. Group roles become
/// class attributes; every number goes through fmt_num so output re-parses
/// to identical geometry.
std::string serialize_svg(const SceneElement& root, double width, double height, Rgb background);

std::string serialize_svg(const ChartScene& scene, const Palette& palette);

} // namespace foundry
