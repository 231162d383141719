#include "foundry/layout.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "foundry/errors.hpp"
#include "foundry/pathdata.hpp"

#include <nlohmann/json.hpp>

namespace foundry {

using json = nlohmann::json;

// Defined in template_data.cpp.
const char* builtin_templates_json();

const char* slot_role_name(SlotRole r) {
    switch (r) {
        case SlotRole::Title: return "title";
        case SlotRole::Subtitle: return "subtitle";
        case SlotRole::Chart: return "chart";
        case SlotRole::Image: return "image";
        case SlotRole::Footnote: return "footnote";
    }
    return "?";
}

SlotRole slot_role_from_name(const std::string& name) {
    if (name == "title") return SlotRole::Title;
    if (name == "subtitle") return SlotRole::Subtitle;
    if (name == "chart") return SlotRole::Chart;
    if (name == "image") return SlotRole::Image;
    if (name == "footnote") return SlotRole::Footnote;
    throw Error(ErrorCode::MalformedInput, "templates", "unknown slot role '" + name + "'");
}

namespace {

const char* const kAnchorNames[9] = {"top-left",    "top-center",    "top-right",
                                     "center-left", "center",        "center-right",
                                     "bottom-left", "bottom-center", "bottom-right"};

} // namespace

int anchor_from_name(const std::string& name) {
    for (int i = 0; i < 9; ++i)
        if (name == kAnchorNames[i]) return i;
    throw Error(ErrorCode::MalformedInput, "templates", "unknown anchor '" + name + "'");
}

const char* anchor_name(int anchor) {
    return (anchor >= 0 && anchor < 9) ? kAnchorNames[anchor] : "?";
}

// ---- template files ---------------------------------------------------------

namespace {

LayoutTemplate template_from_json_obj(const json& j) {
    LayoutTemplate t;
    if (!j.is_object() || !j.contains("id") || !j.contains("slots"))
        throw Error(ErrorCode::MalformedInput, "templates", "template needs id and slots");
    t.id = j.at("id").get<std::string>();

    int chart_slots = 0;
    for (const auto& js : j.at("slots")) {
        TemplateSlot s;
        s.role = slot_role_from_name(js.at("role").get<std::string>());
        if (s.role == SlotRole::Chart) ++chart_slots;
        const auto& anchor = js.at("anchor");
        s.anchor = anchor.is_number_integer() ? anchor.get<int>()
                                              : anchor_from_name(anchor.get<std::string>());
        if (s.anchor < 0 || s.anchor > 8)
            throw Error(ErrorCode::MalformedInput, "templates",
                        "template '" + t.id + "': anchor out of range");
        auto range = js.at("size_range");
        s.size_lo = range.at(0).get<double>();
        s.size_hi = range.at(1).get<double>();
        if (!(s.size_lo <= s.size_hi) || s.size_lo < 0)
            throw Error(ErrorCode::MalformedInput, "templates",
                        "template '" + t.id + "': bad size_range");
        s.z = js.value("z", 0);
        t.slots.push_back(s);
    }
    if (chart_slots != 1)
        throw Error(ErrorCode::MalformedInput, "templates",
                    "template '" + t.id + "' must have exactly one chart slot");

    std::size_t n = t.slots.size();
    t.overlap_allowed.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) t.overlap_allowed[i][i] = true;
    if (j.contains("overlap")) {
        for (const auto& pair : j.at("overlap")) {
            std::size_t a = pair.at(0).get<std::size_t>();
            std::size_t b = pair.at(1).get<std::size_t>();
            if (a >= n || b >= n)
                throw Error(ErrorCode::MalformedInput, "templates",
                            "template '" + t.id + "': overlap index out of range");
            t.overlap_allowed[a][b] = true;
            t.overlap_allowed[b][a] = true;
        }
    }
    return t;
}

} // namespace

LayoutTemplate template_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedInput, "templates",
                    std::string("template JSON parse error: ") + e.what());
    }
    return template_from_json_obj(j);
}

std::vector<LayoutTemplate> load_templates_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    if (ec)
        throw Error(ErrorCode::IoError, "templates", "cannot read directory '" + dir + "'");
    std::sort(files.begin(), files.end());
    std::vector<LayoutTemplate> out;
    for (const auto& f : files) {
        std::ifstream in(f);
        std::stringstream ss;
        ss << in.rdbuf();
        out.push_back(template_from_json_text(ss.str()));
    }
    if (out.empty())
        throw Error(ErrorCode::NoFeasibleTemplate, "templates",
                    "no template files in '" + dir + "'");
    return out;
}

const std::vector<LayoutTemplate>& builtin_templates() {
    static const std::vector<LayoutTemplate> lib = [] {
        std::vector<LayoutTemplate> v;
        json arr = json::parse(builtin_templates_json());
        for (const auto& j : arr) v.push_back(template_from_json_obj(j));
        return v;
    }();
    return lib;
}

// ---- placement machinery ----------------------------------------------------

namespace {

struct AnchorCell {
    double x0, y0, x1, y1;
    double cx() const { return (x0 + x1) / 2; }
    double cy() const { return (y0 + y1) / 2; }
};

AnchorCell anchor_cell(int anchor, double W, double H) {
    int row = anchor / 3, col = anchor % 3;
    return {col * W / 3.0, row * H / 3.0, (col + 1) * W / 3.0, (row + 1) * H / 3.0};
}

// Scan order over scales: base size first, then nearby, then extremes.
constexpr double kScales[5] = {1.0, 0.9, 1.1, 0.8, 1.25};

std::vector<double> feasible_scales(const LayoutBlock& block, const TemplateSlot& slot,
                                    const LayoutParams& p) {
    std::vector<double> out;
    double canvas_area = p.canvas_w * p.canvas_h;
    for (double s : kScales) {
        double frac = (s * block.width) * (s * block.height) / canvas_area;
        if (frac < slot.size_lo - 1e-12 || frac > slot.size_hi + 1e-12) continue;
        if (s * block.width > p.canvas_w || s * block.height > p.canvas_h) continue;
        out.push_back(s);
    }
    return out;
}

struct Candidate {
    double cx, cy;
};

// Anchor-cell centroid first, then the sub-grid lattice ordered by distance
// from the centroid (ties: y, then x). "First in scan order" ties resolve
// toward the anchor's natural position.
std::vector<Candidate> candidate_positions(const AnchorCell& cell, int grid_n) {
    std::vector<Candidate> pts;
    pts.push_back({cell.cx(), cell.cy()});
    double w = cell.x1 - cell.x0, h = cell.y1 - cell.y0;
    for (int iy = 0; iy < grid_n; ++iy) {
        for (int ix = 0; ix < grid_n; ++ix) {
            pts.push_back({cell.x0 + (ix + 0.5) * w / grid_n, cell.y0 + (iy + 0.5) * h / grid_n});
        }
    }
    auto key = [&](const Candidate& c) {
        double dx = c.cx - cell.cx(), dy = c.cy - cell.cy();
        return dx * dx + dy * dy;
    };
    std::stable_sort(pts.begin() + 1, pts.end(), [&](const Candidate& a, const Candidate& b) {
        double ka = key(a), kb = key(b);
        if (ka != kb) return ka < kb;
        if (a.cy != b.cy) return a.cy < b.cy;
        return a.cx < b.cx;
    });
    return pts;
}

Rect block_box(const LayoutBlock& block, double scale, double cx, double cy,
               const LayoutParams& p) {
    double w = scale * block.width, h = scale * block.height;
    double x = std::clamp(cx - w / 2, 0.0, std::max(0.0, p.canvas_w - w));
    double y = std::clamp(cy - h / 2, 0.0, std::max(0.0, p.canvas_h - h));
    return {x, y, w, h};
}

// Exact per-cell fractional coverage raster, per-cell max across boxes.
class CoverGrid {
public:
    CoverGrid(double W, double H, double cell) : cell_(cell) {
        nx_ = static_cast<int>(std::ceil(W / cell)) + 1;
        ny_ = static_cast<int>(std::ceil(H / cell)) + 1;
        w_.assign(static_cast<std::size_t>(nx_) * ny_, 0.0);
    }

    void clear() { std::fill(w_.begin(), w_.end(), 0.0); }

    // Returns the added ink (sum of weight increases), in cell units.
    double stamp(const Rect& box, double fill) {
        if (box.w <= 0 || box.h <= 0) return 0.0;
        int ix0 = static_cast<int>(std::floor(box.x / cell_));
        int iy0 = static_cast<int>(std::floor(box.y / cell_));
        int ix1 = static_cast<int>(std::ceil(box.x2() / cell_)) - 1;
        int iy1 = static_cast<int>(std::ceil(box.y2() / cell_)) - 1;
        ix0 = std::max(ix0, 0);
        iy0 = std::max(iy0, 0);
        ix1 = std::min(ix1, nx_ - 1);
        iy1 = std::min(iy1, ny_ - 1);
        double added = 0;
        for (int iy = iy0; iy <= iy1; ++iy) {
            double fy = overlap_len(box.y, box.y2(), iy) / cell_;
            for (int ix = ix0; ix <= ix1; ++ix) {
                double fx = overlap_len(box.x, box.x2(), ix, true) / cell_;
                double v = fx * fy * fill;
                double& cur = w_[static_cast<std::size_t>(iy) * nx_ + ix];
                if (v > cur) {
                    added += v - cur;
                    cur = v;
                }
            }
        }
        return added;
    }

    double total() const {
        double s = 0;
        for (double v : w_) s += v;
        return s;
    }

private:
    double cell_;
    int nx_ = 0, ny_ = 0;
    std::vector<double> w_;

    double overlap_len(double a0, double a1, int idx, bool /*x*/ = false) const {
        double c0 = idx * cell_, c1 = c0 + cell_;
        return std::max(0.0, std::min(a1, c1) - std::max(a0, c0));
    }
};

// Sum of union ink for one block at a given scale, measured on a block-local
// raster (cell units). Cached per scale by the optimizer.
double block_ink_cells(const LayoutBlock& block, double scale, double cell) {
    CoverGrid g(block.width * scale + cell, block.height * scale + cell, cell);
    double total = 0;
    for (const auto& ib : block.ink) {
        Rect b{ib.box.x * scale, ib.box.y * scale, ib.box.w * scale, ib.box.h * scale};
        total += g.stamp(b, ib.fill);
    }
    return total;
}

Rect block_ink_bounds(const LayoutBlock& block) {
    BoundsAccum acc;
    for (const auto& ib : block.ink)
        if (ib.box.w > 0 && ib.box.h > 0) acc.add(ib.box);
    return acc.valid() ? acc.rect() : Rect{0, 0, block.width, block.height};
}

struct SlotAssignment {
    std::vector<std::size_t> slot_of_block; // block index -> slot index
    bool ok = false;
};

// Blocks claim same-role slots in slot order; exact multiset match required.
SlotAssignment assign_slots(const LayoutTemplate& tmpl, const std::vector<LayoutBlock>& blocks) {
    SlotAssignment out;
    out.slot_of_block.assign(blocks.size(), 0);
    std::map<SlotRole, std::vector<std::size_t>> free_slots;
    for (std::size_t si = 0; si < tmpl.slots.size(); ++si)
        free_slots[tmpl.slots[si].role].push_back(si);
    std::map<SlotRole, std::size_t> next;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        auto it = free_slots.find(blocks[bi].role);
        std::size_t& cursor = next[blocks[bi].role];
        if (it == free_slots.end() || cursor >= it->second.size()) return out;
        out.slot_of_block[bi] = it->second[cursor++];
    }
    for (const auto& [role, slots] : free_slots)
        if (next[role] != slots.size()) return out;
    out.ok = true;
    return out;
}

struct Placement {
    Rect box;
    double scale = 1.0;
    double ink_cells = 0;   // cached block ink at this scale
    Rect ink_bounds;        // canvas px, exact
    bool placed = false;
};

// Effective center range once clamped to keep the block inside the canvas.
struct CenterRange {
    double x0, x1, y0, y1;
};

CenterRange center_range(const AnchorCell& cell, double w, double h, const LayoutParams& p) {
    auto clamp_range = [](double lo, double hi, double min_c, double max_c) {
        double a = std::clamp(lo, min_c, max_c);
        double b = std::clamp(hi, min_c, max_c);
        return std::pair<double, double>{a, b};
    };
    double min_cx = w / 2, max_cx = std::max(w / 2, p.canvas_w - w / 2);
    double min_cy = h / 2, max_cy = std::max(h / 2, p.canvas_h - h / 2);
    auto [x0, x1] = clamp_range(cell.x0, cell.x1, min_cx, max_cx);
    auto [y0, y1] = clamp_range(cell.y0, cell.y1, min_cy, max_cy);
    return {x0, x1, y0, y1};
}

class Optimizer {
public:
    Optimizer(const LayoutTemplate& tmpl, const std::vector<LayoutBlock>& blocks,
              const LayoutParams& params)
        : tmpl_(tmpl), blocks_(blocks), p_(params), cover_(params.canvas_w, params.canvas_h,
                                                           params.cell_size) {
        assignment_ = assign_slots(tmpl, blocks);
        if (!assignment_.ok)
            throw Error(ErrorCode::InfeasibleLayout, "layout",
                        "template '" + tmpl.id + "' does not match the element set");
        for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
            const TemplateSlot& slot = tmpl.slots[assignment_.slot_of_block[bi]];
            scales_.push_back(feasible_scales(blocks[bi], slot, p_));
            if (scales_.back().empty())
                throw Error(ErrorCode::InfeasibleLayout, "layout",
                            "no feasible scale for a " +
                                std::string(slot_role_name(blocks[bi].role)) + " block in '" +
                                tmpl.id + "'");
            positions_.push_back(candidate_positions(anchor_cell(slot.anchor, p_.canvas_w,
                                                                 p_.canvas_h),
                                                     p_.grid_n));
            std::map<double, double> ink_by_scale;
            for (double s : scales_.back())
                ink_by_scale[s] = block_ink_cells(blocks[bi], s, p_.cell_size);
            ink_cache_.push_back(std::move(ink_by_scale));
            ink_bounds_local_.push_back(block_ink_bounds(blocks[bi]));
        }
        order_.resize(blocks.size());
        for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            return blocks[a].width * blocks[a].height > blocks[b].width * blocks[b].height;
        });
        placements_.assign(blocks.size(), Placement{});
    }

    LayoutSolution run() {
        for (std::size_t bi : order_) place_best(bi, true);

        // Refinement sweeps until stable (small instances converge fast).
        int max_passes = blocks_.size() <= 3 ? 8 : 3;
        for (int pass = 0; pass < max_passes; ++pass) {
            bool changed = false;
            for (std::size_t bi : order_) {
                Placement before = placements_[bi];
                placements_[bi].placed = false;
                if (!place_best(bi, false)) {
                    placements_[bi] = before;
                    continue;
                }
                if (std::fabs(placements_[bi].box.x - before.box.x) > 1e-9 ||
                    std::fabs(placements_[bi].box.y - before.box.y) > 1e-9 ||
                    placements_[bi].scale != before.scale)
                    changed = true;
            }
            if (!changed) break;
        }

        return finalize();
    }

private:
    const LayoutTemplate& tmpl_;
    const std::vector<LayoutBlock>& blocks_;
    const LayoutParams& p_;
    CoverGrid cover_; // scratch for exact recomputes
    SlotAssignment assignment_;
    std::vector<std::vector<double>> scales_;
    std::vector<std::vector<Candidate>> positions_;
    std::vector<std::map<double, double>> ink_cache_;
    std::vector<Rect> ink_bounds_local_;
    std::vector<std::size_t> order_;
    std::vector<Placement> placements_;

    Rect scaled_ink_bounds(std::size_t bi, const Rect& box, double s) const {
        const Rect& l = ink_bounds_local_[bi];
        return {box.x + l.x * s, box.y + l.y * s, l.w * s, l.h * s};
    }

    bool gap_ok(std::size_t bi, const Rect& box) const {
        std::size_t sa = assignment_.slot_of_block[bi];
        for (std::size_t oj = 0; oj < placements_.size(); ++oj) {
            if (oj == bi || !placements_[oj].placed) continue;
            std::size_t sb = assignment_.slot_of_block[oj];
            if (tmpl_.overlap_ok(sa, sb)) continue;
            if (bbox_gap(box, placements_[oj].box) < p_.gap_px) return false;
        }
        return true;
    }

    // Search objective: cached ink sums (dedup-corrected for allowed
    // overlaps) over the exact union ink bbox area, in cell units.
    double objective(std::size_t bi, const Rect& box, double s, double ink) const {
        BoundsAccum acc;
        acc.add(scaled_ink_bounds(bi, box, s));
        double total = ink;
        for (std::size_t oj = 0; oj < placements_.size(); ++oj) {
            if (oj == bi || !placements_[oj].placed) continue;
            total += placements_[oj].ink_cells;
            acc.add(placements_[oj].ink_bounds);
            // Allowed-overlap pairs can double count; subtract a bbox-ratio
            // estimate (search heuristic only, the final ratio is exact).
            if (tmpl_.overlap_ok(assignment_.slot_of_block[bi], assignment_.slot_of_block[oj])) {
                Rect mine = scaled_ink_bounds(bi, box, s);
                double inter = mine.intersection_area(placements_[oj].ink_bounds);
                if (inter > 0) {
                    double denom = std::min(mine.area(), placements_[oj].ink_bounds.area());
                    if (denom > 0)
                        total -= std::min(ink, placements_[oj].ink_cells) * (inter / denom);
                }
            }
        }
        Rect bb = acc.rect();
        double bbox_cells = (bb.w / p_.cell_size) * (bb.h / p_.cell_size);
        return bbox_cells > 0 ? total / bbox_cells : 0.0;
    }

    bool place_best(std::size_t bi, bool required) {
        const TemplateSlot& slot = tmpl_.slots[assignment_.slot_of_block[bi]];
        const AnchorCell cell = anchor_cell(slot.anchor, p_.canvas_w, p_.canvas_h);
        double best = -1;
        Placement chosen;
        for (double s : scales_[bi]) {
            double ink = ink_cache_[bi].at(s);
            double w = s * blocks_[bi].width, h = s * blocks_[bi].height;
            CenterRange cr = center_range(cell, w, h, p_);
            double last_cx = std::numeric_limits<double>::quiet_NaN();
            double last_cy = std::numeric_limits<double>::quiet_NaN();
            for (const Candidate& cand : positions_[bi]) {
                double cx = std::clamp(cand.cx, cr.x0, cr.x1);
                double cy = std::clamp(cand.cy, cr.y0, cr.y1);
                if (cx == last_cx && cy == last_cy) continue; // clamped duplicate
                last_cx = cx;
                last_cy = cy;
                Rect box = block_box(blocks_[bi], s, cx, cy, p_);
                if (!gap_ok(bi, box)) continue;
                double obj = objective(bi, box, s, ink);
                if (obj > best + 1e-12) {
                    best = obj;
                    chosen.box = box;
                    chosen.scale = s;
                    chosen.ink_cells = ink;
                    chosen.ink_bounds = scaled_ink_bounds(bi, box, s);
                    chosen.placed = true;
                }
            }
        }
        if (!chosen.placed) {
            if (required)
                throw Error(ErrorCode::InfeasibleLayout, "layout",
                            "cannot place a " + std::string(slot_role_name(blocks_[bi].role)) +
                                " block in template '" + tmpl_.id + "' under the gap constraint");
            return false;
        }
        placements_[bi] = chosen;
        return true;
    }

    LayoutSolution finalize() {
        LayoutSolution sol;
        sol.template_id = tmpl_.id;
        for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
            PlacedElement pe;
            pe.role = blocks_[bi].role;
            pe.block_index = bi;
            pe.bbox = placements_[bi].box;
            pe.scale = placements_[bi].scale;
            sol.placements.push_back(pe);
        }
        sol.ink_ratio = ink_ratio(sol.placements, blocks_, p_);

        double min_gap = std::hypot(p_.canvas_w, p_.canvas_h);
        for (std::size_t a = 0; a < sol.placements.size(); ++a) {
            for (std::size_t b = a + 1; b < sol.placements.size(); ++b) {
                if (tmpl_.overlap_ok(assignment_.slot_of_block[a], assignment_.slot_of_block[b]))
                    continue;
                min_gap = std::min(min_gap, bbox_gap(sol.placements[a].bbox,
                                                     sol.placements[b].bbox));
            }
        }
        sol.min_pairwise_gap = min_gap;
        return sol;
    }
};

} // namespace

std::vector<std::size_t> filter_templates(const std::vector<LayoutTemplate>& templates,
                                          const std::vector<LayoutBlock>& blocks,
                                          const LayoutParams& params) {
    if (blocks.empty())
        throw Error(ErrorCode::EmptyLayout, "layout", "no blocks to lay out");

    std::vector<std::size_t> keep;
    for (std::size_t ti = 0; ti < templates.size(); ++ti) {
        const LayoutTemplate& t = templates[ti];
        SlotAssignment as = assign_slots(t, blocks);
        if (!as.ok) continue;

        bool ok = true;
        std::vector<double> min_scale(blocks.size());
        for (std::size_t bi = 0; bi < blocks.size() && ok; ++bi) {
            std::vector<double> fs = feasible_scales(blocks[bi], t.slots[as.slot_of_block[bi]],
                                                     params);
            if (fs.empty()) {
                ok = false;
                break;
            }
            min_scale[bi] = *std::min_element(fs.begin(), fs.end());
        }
        if (!ok) continue;

        // Forbidden pairs must admit >= gap separation at the smallest sizes.
        for (std::size_t a = 0; a < blocks.size() && ok; ++a) {
            for (std::size_t b = a + 1; b < blocks.size() && ok; ++b) {
                std::size_t sa = as.slot_of_block[a], sb = as.slot_of_block[b];
                if (t.overlap_ok(sa, sb)) continue;
                double wa = min_scale[a] * blocks[a].width, ha = min_scale[a] * blocks[a].height;
                double wb = min_scale[b] * blocks[b].width, hb = min_scale[b] * blocks[b].height;
                CenterRange ra = center_range(anchor_cell(t.slots[sa].anchor, params.canvas_w,
                                                          params.canvas_h),
                                              wa, ha, params);
                CenterRange rb = center_range(anchor_cell(t.slots[sb].anchor, params.canvas_w,
                                                          params.canvas_h),
                                              wb, hb, params);
                double dx = std::max(rb.x1 - ra.x0, ra.x1 - rb.x0); // max center distance
                double dy = std::max(rb.y1 - ra.y0, ra.y1 - rb.y0);
                double gap_x = dx - (wa + wb) / 2;
                double gap_y = dy - (ha + hb) / 2;
                if (std::max(gap_x, gap_y) < params.gap_px) ok = false;
            }
        }
        if (ok) keep.push_back(ti);
    }
    if (keep.empty())
        throw Error(ErrorCode::NoFeasibleTemplate, "layout",
                    "no template is compatible with the element set");
    return keep;
}

double ink_ratio(const std::vector<PlacedElement>& placements,
                 const std::vector<LayoutBlock>& blocks, const LayoutParams& params) {
    if (placements.empty())
        throw Error(ErrorCode::EmptyLayout, "layout", "ink_ratio of an empty placement set");
    CoverGrid grid(params.canvas_w, params.canvas_h, params.cell_size);
    BoundsAccum bounds;
    double total = 0;
    for (const PlacedElement& pe : placements) {
        const LayoutBlock& b = blocks[pe.block_index];
        double s = pe.scale;
        for (const auto& ib : b.ink) {
            Rect box{pe.bbox.x + ib.box.x * s, pe.bbox.y + ib.box.y * s, ib.box.w * s,
                     ib.box.h * s};
            if (box.w <= 0 || box.h <= 0) continue;
            total += grid.stamp(box, ib.fill);
            bounds.add(box);
        }
    }
    if (!bounds.valid()) return 0.0;
    Rect bb = bounds.rect();
    double bbox_cells = (bb.w / params.cell_size) * (bb.h / params.cell_size);
    if (bbox_cells <= 0) return 1.0;
    return std::min(1.0, total / bbox_cells);
}

LayoutSolution optimize_layout(const LayoutTemplate& tmpl, const std::vector<LayoutBlock>& blocks,
                               const LayoutParams& params) {
    if (blocks.empty())
        throw Error(ErrorCode::EmptyLayout, "layout", "no blocks to lay out");
    return Optimizer(tmpl, blocks, params).run();
}

std::pair<std::size_t, LayoutSolution> select_template(
    const std::vector<LayoutTemplate>& templates, const std::vector<LayoutBlock>& blocks,
    const LayoutParams& params) {
    std::vector<std::size_t> feasible = filter_templates(templates, blocks, params);
    bool have = false;
    std::size_t best_index = 0;
    LayoutSolution best;
    for (std::size_t ti : feasible) {
        LayoutSolution sol;
        try {
            sol = optimize_layout(templates[ti], blocks, params);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::InfeasibleLayout) continue;
            throw;
        }
        bool wins = !have || sol.ink_ratio > best.ink_ratio + 1e-12 ||
                    (std::fabs(sol.ink_ratio - best.ink_ratio) <= 1e-12 &&
                     templates[ti].id < templates[best_index].id);
        if (wins) {
            have = true;
            best_index = ti;
            best = std::move(sol);
        }
    }
    if (!have)
        throw Error(ErrorCode::NoFeasibleTemplate, "layout",
                    "every compatible template failed the gap constraints");
    return {best_index, std::move(best)};
}

// ---- composition -------------------------------------------------------------

void transform_scene(SceneElement& el, double scale, double dx, double dy) {
    if (el.is_group()) {
        for (auto& ch : el.children) transform_scene(ch, scale, dx, dy);
        return;
    }
    el.stroke_width = round3(el.stroke_width * scale);
    if (auto* g = std::get_if<RectGeom>(&el.geometry)) {
        g->x = round3(g->x * scale + dx);
        g->y = round3(g->y * scale + dy);
        g->w = round3(g->w * scale);
        g->h = round3(g->h * scale);
        g->rx = round3(g->rx * scale);
    } else if (auto* g = std::get_if<CircleGeom>(&el.geometry)) {
        g->cx = round3(g->cx * scale + dx);
        g->cy = round3(g->cy * scale + dy);
        g->r = round3(g->r * scale);
    } else if (auto* g = std::get_if<LineGeom>(&el.geometry)) {
        g->x1 = round3(g->x1 * scale + dx);
        g->y1 = round3(g->y1 * scale + dy);
        g->x2 = round3(g->x2 * scale + dx);
        g->y2 = round3(g->y2 * scale + dy);
    } else if (auto* g = std::get_if<PathGeom>(&el.geometry)) {
        g->d = transform_path_data(g->d, scale, dx, dy);
    } else if (auto* g = std::get_if<ArcGeom>(&el.geometry)) {
        g->cx = round3(g->cx * scale + dx);
        g->cy = round3(g->cy * scale + dy);
        g->r_outer = round3(g->r_outer * scale);
        g->r_inner = round3(g->r_inner * scale);
    } else if (auto* g = std::get_if<TextGeom>(&el.geometry)) {
        g->x = round3(g->x * scale + dx);
        g->y = round3(g->y * scale + dy);
        g->size = round3(g->size * scale);
    } else if (auto* g = std::get_if<ImageGeom>(&el.geometry)) {
        g->x = round3(g->x * scale + dx);
        g->y = round3(g->y * scale + dy);
        g->w = round3(g->w * scale);
        g->h = round3(g->h * scale);
    }
}

namespace {

std::string first_text(const SceneElement& el) {
    std::string out;
    for_each_leaf(el, [&](const SceneElement& leaf) {
        if (out.empty() && std::holds_alternative<TextGeom>(leaf.geometry))
            out = leaf.text_content;
    });
    return out;
}

} // namespace

ComposeResult compose_infographic(const std::vector<LayoutBlock>& blocks,
                                  const std::vector<LayoutTemplate>& templates,
                                  const LayoutParams& params) {
    if (blocks.empty())
        throw Error(ErrorCode::EmptyLayout, "layout", "no blocks to compose");

    auto [ti, solution] = select_template(templates, blocks, params);
    const LayoutTemplate& tmpl = templates[ti];
    SlotAssignment as = assign_slots(tmpl, blocks);

    // Paint order: slot z ascending, then slot index.
    std::vector<std::size_t> paint(blocks.size());
    for (std::size_t i = 0; i < paint.size(); ++i) paint[i] = i;
    std::stable_sort(paint.begin(), paint.end(), [&](std::size_t a, std::size_t b) {
        int za = tmpl.slots[as.slot_of_block[a]].z;
        int zb = tmpl.slots[as.slot_of_block[b]].z;
        if (za != zb) return za < zb;
        return as.slot_of_block[a] < as.slot_of_block[b];
    });

    ComposeResult out;
    out.root.geometry = GroupGeom{};
    out.solution = solution;

    for (std::size_t bi : paint) {
        const PlacedElement& pe = solution.placements[bi];
        SceneElement group;
        group.geometry = GroupGeom{};
        switch (blocks[bi].role) {
            case SlotRole::Title:
            case SlotRole::Subtitle: group.role = Role::Title; break;
            case SlotRole::Image: group.role = Role::Image; break;
            default: group.role = Role::None; break;
        }
        SceneElement content = blocks[bi].content;
        transform_scene(content, pe.scale, pe.bbox.x, pe.bbox.y);
        if (content.is_group() && content.role == Role::None) {
            for (auto& ch : content.children) group.children.push_back(std::move(ch));
        } else {
            group.children.push_back(std::move(content));
        }
        out.root.children.push_back(std::move(group));
    }

    GroundTruthMetadata& md = out.metadata;
    md.template_id = tmpl.id;
    md.ink_ratio = solution.ink_ratio;
    md.canvas_w = params.canvas_w;
    md.canvas_h = params.canvas_h;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        md.elements.push_back({slot_role_name(blocks[bi].role), solution.placements[bi].bbox});
        if (blocks[bi].role == SlotRole::Title && md.title.empty())
            md.title = first_text(blocks[bi].content);
        if (blocks[bi].role == SlotRole::Subtitle && md.subtitle.empty())
            md.subtitle = first_text(blocks[bi].content);
    }
    return out;
}

std::string GroundTruthMetadata::to_json_string() const {
    json j;
    j["table"] = table_ref;
    j["chart_type"] = chart_type;
    j["variation"] = variation_id;
    j["template_id"] = template_id;
    j["style_axes"] = style_axes;
    auto col_or_null = [](int c) { return c < 0 ? json(nullptr) : json(c); };
    j["bindings"] = {{"category", col_or_null(bindings.category_col)},
                     {"series", col_or_null(bindings.series_col)},
                     {"value", col_or_null(bindings.value_col)},
                     {"value2", col_or_null(bindings.value2_col)},
                     {"temporal", col_or_null(bindings.temporal_col)}};
    j["color_binding"] = color_binding;
    json icons = json::array();
    for (const auto& [cat, href] : icon_map)
        icons.push_back({{"category", cat}, {"href", href}});
    j["icons"] = icons;
    j["ink_ratio"] = round3(ink_ratio);
    j["canvas"] = {{"w", canvas_w}, {"h", canvas_h}};
    j["title"] = title;
    j["subtitle"] = subtitle;
    json els = json::array();
    for (const auto& e : elements) {
        json je;
        je["role"] = e.role;
        je["bbox"] = {round3(e.bbox.x), round3(e.bbox.y), round3(e.bbox.w), round3(e.bbox.h)};
        els.push_back(je);
    }
    j["elements"] = els;
    return j.dump(2) + "\n";
}

} // namespace foundry
