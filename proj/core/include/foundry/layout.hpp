#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "foundry/geometry.hpp"
#include "foundry/scene.hpp"

namespace foundry {

enum class SlotRole { Title, Subtitle, Chart, Image, Footnote };

const char* slot_role_name(SlotRole r);
SlotRole slot_role_from_name(const std::string& name);

/// One of 9 anchor cells in a 3x3 canvas grid, row-major from top-left.
/// Parsed from names like "top-left", "center", "bottom-right".
int anchor_from_name(const std::string& name);
const char* anchor_name(int anchor);

struct TemplateSlot {
    SlotRole role = SlotRole::Chart;
    int anchor = 4;               // 0..8
    double size_lo = 0;           // canvas-area fraction range for the block
    double size_hi = 1;
    int z = 0;                    // paint order, low first
};

struct LayoutTemplate {
    std::string id;
    std::vector<TemplateSlot> slots;
    std::vector<std::vector<bool>> overlap_allowed; // symmetric, diagonal true

    bool overlap_ok(std::size_t a, std::size_t b) const {
        return a == b || (a < overlap_allowed.size() && b < overlap_allowed[a].size() &&
                          overlap_allowed[a][b]);
    }
};

/// Parse a template file (JSON: {"id","slots":[{"role","anchor","size_range",
/// "z"}],"overlap":[[i,j],...]}). Validates invariants (exactly one chart
/// slot, anchors valid, lo <= hi, symmetric overlap pairs).
LayoutTemplate template_from_json_text(const std::string& text);
std::vector<LayoutTemplate> load_templates_dir(const std::string& dir);

/// Built-in curated library (12 templates, one per element-set shape).
const std::vector<LayoutTemplate>& builtin_templates();

/// A box of ink inside a block, with its fill weight (text boxes weigh 0.62,
/// solid marks 1.0). Coordinates are block-local with origin at (0,0).
struct InkBox {
    Rect box;
    double fill = 1.0;
};

/// A measured content block ready for placement. `content` is the scene
/// subtree in block-local coordinates; its bbox is exactly (0,0,width,height).
struct LayoutBlock {
    SlotRole role = SlotRole::Chart;
    double width = 0;
    double height = 0;
    std::vector<InkBox> ink;
    SceneElement content;
};

struct PlacedElement {
    SlotRole role = SlotRole::Chart;
    std::size_t block_index = 0;
    Rect bbox;       // px, block box after scaling
    double scale = 1.0;
};

struct LayoutSolution {
    std::string template_id;
    std::vector<PlacedElement> placements; // one per block, block order
    double ink_ratio = 0;
    double min_pairwise_gap = 0;           // over non-overlap-allowed pairs
};

struct LayoutParams {
    double canvas_w = 800;
    double canvas_h = 600;
    double gap_px = 8;     // effective minimum pairwise bbox gap
    int grid_n = 24;       // position sub-grid per anchor cell
    double cell_size = 4;  // occupancy raster cell, px
};

/// Keep templates whose slot roles exactly match the block roles (as
/// multisets), where every block has a feasible scale for its slot, and where
/// forbidden-overlap pairs can be separated by >= gap. Returns indices into
/// `templates`; throws NoFeasibleTemplate when none survive.
std::vector<std::size_t> filter_templates(const std::vector<LayoutTemplate>& templates,
                                          const std::vector<LayoutBlock>& blocks,
                                          const LayoutParams& params);

/// Ink ratio of a set of placements: summed fractional cell coverage of all
/// ink (per-cell max across boxes) divided by the exact area of the tight
/// bbox around all ink, both in cell units.
double ink_ratio(const std::vector<PlacedElement>& placements,
                 const std::vector<LayoutBlock>& blocks, const LayoutParams& params);

/// Grid search placement: greedy in decreasing block area over anchor-cell
/// candidate positions (centroid first, then a grid_n x grid_n lattice by
/// distance) x feasible scales, followed by refinement sweeps. Maximizes
/// ink_ratio subject to pairwise bbox gap >= gap_px for forbidden pairs and
/// canvas containment. Throws InfeasibleLayout when a block cannot be placed,
/// EmptyLayout when `blocks` is empty.
LayoutSolution optimize_layout(const LayoutTemplate& tmpl,
                               const std::vector<LayoutBlock>& blocks,
                               const LayoutParams& params);

/// Optimize every feasible template and return the best (highest ink_ratio,
/// ties broken by smaller template id). Throws NoFeasibleTemplate.
std::pair<std::size_t, LayoutSolution> select_template(
    const std::vector<LayoutTemplate>& templates, const std::vector<LayoutBlock>& blocks,
    const LayoutParams& params);

struct GroundTruthMetadata {
    std::string table_ref;
    std::string chart_type;
    std::string variation_id;
    std::string template_id;
    std::vector<std::string> style_axes;
    EncodingBindings bindings;
    std::string color_binding; // column name driving color, "" when none
    double ink_ratio = 0;
    double canvas_w = 0;
    double canvas_h = 0;
    std::string title;
    std::string subtitle;
    struct ElementInfo {
        std::string role;
        Rect bbox;
    };
    std::vector<ElementInfo> elements;
    // category -> icon content handle, for icon-encoded charts only
    std::vector<std::pair<std::string, std::string>> icon_map;

    std::string to_json_string() const;
};

struct ComposeResult {
    SceneElement root; // final scene, block groups in z order
    LayoutSolution solution;
    GroundTruthMetadata metadata;
};

/// Select a template, place the blocks, and build the final scene with role
/// classes (title/subtitle -> "title", image -> "image"). Block content is
/// scaled and translated into its placed bbox.
ComposeResult compose_infographic(const std::vector<LayoutBlock>& blocks,
                                  const std::vector<LayoutTemplate>& templates,
                                  const LayoutParams& params);

/// Uniformly scale then translate a scene subtree in place (geometry,
/// text sizes and stroke widths all scale; coordinates re-rounded).
void transform_scene(SceneElement& el, double scale, double dx, double dy);

} // namespace foundry
