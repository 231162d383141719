#include "foundry/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "foundry/assignment.hpp"
#include "foundry/errors.hpp"
#include "foundry/text_metrics.hpp"

#include <nlohmann/json.hpp>

namespace foundry {

using json = nlohmann::json;

double position_similarity(double dcx, double dcy) {
    return std::clamp(1.0 - std::max(std::fabs(dcx), std::fabs(dcy)), 0.0, 1.0);
}

double size_similarity(double sg, double sp) {
    double mx = std::max(sg, sp);
    if (mx <= 0) return 1.0; // both degenerate: identical
    return std::clamp(1.0 - std::fabs(sg - sp) / mx, 0.0, 1.0);
}

double leaf_cost(const SvgLeaf& g, const SvgLeaf& p) {
    if (g.kind != p.kind) return 2.0;
    double pos = std::max(std::fabs(g.cx - p.cx), std::fabs(g.cy - p.cy));
    double mx = std::max(g.area, p.area);
    double ratio = mx <= 0 ? 1.0 : std::min(g.area, p.area) / mx;
    return 0.5 * pos + 0.5 * (1.0 - ratio);
}

Matching match_elements(const SvgDocument& gt, const SvgDocument& pr) {
    Matching m;
    std::size_t ng = gt.leaves.size(), np = pr.leaves.size();
    m.gt_matched.assign(ng, -1);
    m.pr_matched.assign(np, -1);
    if (ng == 0 || np == 0) return m;

    std::vector<std::vector<double>> cost(ng, std::vector<double>(np));
    for (std::size_t i = 0; i < ng; ++i)
        for (std::size_t j = 0; j < np; ++j) cost[i][j] = leaf_cost(gt.leaves[i], pr.leaves[j]);

    std::vector<int> row_to_col = solve_assignment(cost);
    for (std::size_t i = 0; i < ng; ++i) {
        int j = row_to_col[i];
        if (j < 0) continue;
        double c = cost[i][static_cast<std::size_t>(j)];
        if (c > 1.0) continue; // rejected: both endpoints stay unmatched
        m.gt_matched[i] = j;
        m.pr_matched[static_cast<std::size_t>(j)] = static_cast<int>(i);
        m.pair_costs.push_back(c);
    }
    return m;
}

double metric_area(const SvgDocument& gt, const SvgDocument& pr, const Matching& m) {
    double matched = 0, total = 0;
    for (std::size_t i = 0; i < gt.leaves.size(); ++i) {
        total += gt.leaves[i].area;
        if (m.gt_matched[i] >= 0) matched += gt.leaves[i].area;
    }
    for (std::size_t j = 0; j < pr.leaves.size(); ++j) {
        total += pr.leaves[j].area;
        if (m.pr_matched[j] >= 0) matched += pr.leaves[j].area;
    }
    if (total <= 0) return 1.0; // no measurable area anywhere: identical in this respect
    return std::clamp(matched / total, 0.0, 1.0);
}

double sorensen_dice(const std::string& a, const std::string& b) {
    std::vector<char32_t> ca = decode_utf8_all(a), cb = decode_utf8_all(b);
    if (ca.empty() && cb.empty()) return 1.0;
    std::map<char32_t, int> count;
    for (char32_t c : ca) ++count[c];
    int overlap = 0;
    for (char32_t c : cb) {
        auto it = count.find(c);
        if (it != count.end() && it->second > 0) {
            --it->second;
            ++overlap;
        }
    }
    return 2.0 * overlap / (static_cast<double>(ca.size()) + static_cast<double>(cb.size()));
}

double metric_text(const SvgDocument& gt, const SvgDocument& pr, const Matching& m) {
    double sum = 0;
    int n = 0;
    for (std::size_t i = 0; i < gt.leaves.size(); ++i) {
        if (gt.leaves[i].kind != LeafKind::Text) continue;
        ++n;
        int j = m.gt_matched[i];
        if (j < 0) continue; // unmatched GT text scores 0
        sum += sorensen_dice(gt.leaves[i].text, pr.leaves[static_cast<std::size_t>(j)].text);
    }
    return n == 0 ? 1.0 : sum / n;
}

double metric_image(const SvgDocument& gt, const SvgDocument& pr, const Matching& m,
                    const ImageScorer& scorer, bool* used_fallback) {
    double sum = 0;
    int n = 0;
    for (std::size_t i = 0; i < gt.leaves.size(); ++i) {
        if (gt.leaves[i].kind != LeafKind::Image) continue;
        ++n;
        int j = m.gt_matched[i];
        if (j < 0) continue;
        const SvgLeaf& g = gt.leaves[i];
        const SvgLeaf& p = pr.leaves[static_cast<std::size_t>(j)];
        double s = -1;
        if (scorer) {
            try {
                s = std::clamp(scorer(g, p), 0.0, 1.0);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::ExternalScorerFailure) throw;
                if (used_fallback) *used_fallback = true;
            }
        }
        if (s < 0) s = g.image_hash == p.image_hash ? 1.0 : 0.0;
        sum += s;
    }
    return n == 0 ? 1.0 : sum / n;
}

double metric_color(const SvgDocument& gt, const SvgDocument& pr, const Matching& m) {
    double sum = 0;
    int n = 0;
    for (std::size_t i = 0; i < gt.leaves.size(); ++i) {
        int j = m.gt_matched[i];
        if (j < 0) continue;
        const auto& cg = gt.leaves[i].color;
        const auto& cp = pr.leaves[static_cast<std::size_t>(j)].color;
        if (!cg || !cp) continue; // unresolvable on either side: not counted
        sum += color_similarity(*cg, *cp);
        ++n;
    }
    return n == 0 ? 1.0 : sum / n;
}

namespace {

// Position/size average over matched pairs; without any pair the score is 0
// unless both documents are empty (then trivially 1).
template <typename PairScore>
double mean_over_pairs(const SvgDocument& gt, const SvgDocument& pr, const Matching& m,
                       PairScore score) {
    double sum = 0;
    int n = 0;
    for (std::size_t i = 0; i < gt.leaves.size(); ++i) {
        int j = m.gt_matched[i];
        if (j < 0) continue;
        sum += score(gt.leaves[i], pr.leaves[static_cast<std::size_t>(j)]);
        ++n;
    }
    if (n == 0) return gt.leaves.empty() && pr.leaves.empty() ? 1.0 : 0.0;
    return sum / n;
}

} // namespace

double metric_position(const SvgDocument& gt, const SvgDocument& pr, const Matching& m) {
    return mean_over_pairs(gt, pr, m, [](const SvgLeaf& g, const SvgLeaf& p) {
        return position_similarity(g.cx - p.cx, g.cy - p.cy);
    });
}

double metric_size(const SvgDocument& gt, const SvgDocument& pr, const Matching& m) {
    return mean_over_pairs(gt, pr, m, [](const SvgLeaf& g, const SvgLeaf& p) {
        return size_similarity(g.area, p.area);
    });
}

double low_level_score(const MetricBreakdown& b) {
    return 100.0 * (b.area + b.text + b.image + b.color + b.position + b.size) / 6.0;
}

EvalReport evaluate_documents(const SvgDocument& gt, const SvgDocument& pr, bool exec_ok,
                              const ImageScorer& scorer) {
    EvalReport r;
    r.exec_ok = exec_ok;
    if (!exec_ok) {
        // Failed execution zeroes both scores outright.
        r.low_level = 0;
        r.high_level = 0;
        r.overall = 0;
        r.unmatched_gt = static_cast<int>(gt.leaves.size());
        r.unmatched_pr = static_cast<int>(pr.leaves.size());
        return r;
    }

    Matching m = match_elements(gt, pr);
    bool fallback = false;
    r.breakdown.area = metric_area(gt, pr, m);
    r.breakdown.text = metric_text(gt, pr, m);
    r.breakdown.image = metric_image(gt, pr, m, scorer, &fallback);
    r.breakdown.color = metric_color(gt, pr, m);
    r.breakdown.position = metric_position(gt, pr, m);
    r.breakdown.size = metric_size(gt, pr, m);
    r.low_level = low_level_score(r.breakdown);

    for (int j : m.gt_matched)
        if (j < 0) ++r.unmatched_gt;
    for (int i : m.pr_matched)
        if (i < 0) ++r.unmatched_pr;

    if (fallback) r.flags.push_back("image scorer failed; hash fallback used");
    auto note_zero_area = [&](const SvgDocument& doc, const char* which) {
        int zeros = 0;
        for (const auto& leaf : doc.leaves)
            if (leaf.zero_area) ++zeros;
        if (zeros > 0)
            r.flags.push_back(std::string(which) + ": " + std::to_string(zeros) +
                              " zero-area leaves retained");
    };
    note_zero_area(gt, "gt");
    note_zero_area(pr, "pr");
    for (const auto& w : gt.warnings) r.flags.push_back("gt: " + w);
    for (const auto& w : pr.warnings) r.flags.push_back("pr: " + w);
    return r;
}

EvalReport evaluate_svg_strings(const std::string& gt_svg, const std::string& pr_svg,
                                bool exec_ok) {
    if (!exec_ok) return evaluate_documents(SvgDocument{}, SvgDocument{}, false);
    SvgDocument gt = parse_svg(gt_svg);
    SvgDocument pr = parse_svg(pr_svg);
    return evaluate_documents(gt, pr, true);
}

std::string EvalReport::to_json_string() const {
    json j;
    j["exec_ok"] = exec_ok;
    j["breakdown"] = {{"area", breakdown.area},       {"text", breakdown.text},
                      {"image", breakdown.image},     {"color", breakdown.color},
                      {"position", breakdown.position}, {"size", breakdown.size}};
    j["low_level"] = low_level;
    j["high_level"] = high_level ? json(*high_level) : json(nullptr);
    j["overall"] = overall ? json(*overall) : json(nullptr);
    j["unmatched_gt"] = unmatched_gt;
    j["unmatched_pr"] = unmatched_pr;
    j["flags"] = flags;
    return j.dump(2) + "\n";
}

} // namespace foundry
