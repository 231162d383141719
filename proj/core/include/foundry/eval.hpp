#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "foundry/svgdom.hpp"

namespace foundry {

struct Matching {
    std::vector<int> gt_matched;     // per GT leaf: predicted index or -1
    std::vector<int> pr_matched;     // per predicted leaf: GT index or -1
    std::vector<double> pair_costs;  // accepted pairs, in GT-leaf order
};

struct MetricBreakdown {
    double area = 0;
    double text = 0;
    double image = 0;
    double color = 0;
    double position = 0;
    double size = 0;
};

struct EvalReport {
    bool exec_ok = true;
    MetricBreakdown breakdown;
    double low_level = 0;
    std::optional<double> high_level;
    std::optional<double> overall;
    int unmatched_gt = 0;
    int unmatched_pr = 0;
    std::vector<std::string> flags; // zero-area leaves, scorer fallbacks, parse warnings

    std::string to_json_string() const;
};

/// Pair cost for matching: > 1 (never accepted) when tag kinds differ, else
/// equal-weight center distance and size-ratio terms. Symmetric.
double leaf_cost(const SvgLeaf& g, const SvgLeaf& p);

/// Min-cost assignment over the full cost matrix; pairs costing > 1 are
/// rejected with both endpoints left unmatched.
Matching match_elements(const SvgDocument& gt, const SvgDocument& pr);

/// Optional per-pair image scorer (e.g. an embedding service); throwing
/// Error(ExternalScorerFailure) falls back to hash equality for that pair.
using ImageScorer = std::function<double(const SvgLeaf& gt, const SvgLeaf& pr)>;

double metric_area(const SvgDocument& gt, const SvgDocument& pr, const Matching& m);
double metric_text(const SvgDocument& gt, const SvgDocument& pr, const Matching& m);
double metric_image(const SvgDocument& gt, const SvgDocument& pr, const Matching& m,
                    const ImageScorer& scorer = nullptr, bool* used_fallback = nullptr);
double metric_color(const SvgDocument& gt, const SvgDocument& pr, const Matching& m);
double metric_position(const SvgDocument& gt, const SvgDocument& pr, const Matching& m);
double metric_size(const SvgDocument& gt, const SvgDocument& pr, const Matching& m);

/// 100 x unweighted mean of the six metrics.
double low_level_score(const MetricBreakdown& b);

/// Similarity pieces, exposed for direct testing.
double sorensen_dice(const std::string& a, const std::string& b);
double position_similarity(double dcx, double dcy);
double size_similarity(double sg, double sp);

/// Full pipeline: match, score, and assemble the report. exec_ok=false
/// zeroes the scores per the benchmark rule.
EvalReport evaluate_documents(const SvgDocument& gt, const SvgDocument& pr, bool exec_ok = true,
                              const ImageScorer& scorer = nullptr);

EvalReport evaluate_svg_strings(const std::string& gt_svg, const std::string& pr_svg,
                                bool exec_ok = true);

} // namespace foundry
