#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "foundry/assignment.hpp"
#include "foundry/color.hpp"
#include "foundry/errors.hpp"
#include "foundry/eval.hpp"
#include "foundry/rng.hpp"
#include "foundry/scene.hpp"
#include "foundry/svgdom.hpp"
#include "foundry/tabular.hpp"

using namespace foundry;

namespace {

SvgLeaf leaf(LeafKind k, double cx, double cy, double area, const std::string& text = "") {
    SvgLeaf l;
    l.kind = k;
    l.cx = cx;
    l.cy = cy;
    l.area = area;
    l.text = text;
    return l;
}

SvgDocument doc_of(std::vector<SvgLeaf> leaves) {
    SvgDocument d;
    d.width = 100;
    d.height = 100;
    for (std::size_t i = 0; i < leaves.size(); ++i) leaves[i].source_index = static_cast<int>(i);
    d.leaves = std::move(leaves);
    return d;
}

std::string render_svg(const char* csv, const char* type) {
    DataTable t = load_table_text(csv);
    ChartSpec spec;
    spec.type_name = type;
    spec.bindings = default_bindings(t, type);
    ChartScene scene = render_chart(t, spec, builtin_palettes()[0], 520, 390);
    return serialize_svg(scene, builtin_palettes()[0]);
}

} // namespace

TEST_CASE("leaf_cost basics") {
    SvgLeaf a = leaf(LeafKind::Rect, 0.5, 0.5, 0.1);
    CHECK(leaf_cost(a, a) == 0.0);

    SvgLeaf circle = leaf(LeafKind::Circle, 0.5, 0.5, 0.1);
    CHECK(leaf_cost(a, circle) > 1.0);

    // centers off by (0.2, 0.1), areas 100 vs 80 scaled into canvas share
    SvgLeaf g = leaf(LeafKind::Rect, 0.4, 0.4, 0.100);
    SvgLeaf p = leaf(LeafKind::Rect, 0.6, 0.5, 0.080);
    CHECK(leaf_cost(g, p) == doctest::Approx(0.5 * 0.2 + 0.5 * 0.2).epsilon(1e-12));
    CHECK(leaf_cost(g, p) == leaf_cost(p, g));

    // zero areas on both sides: ratio treated as 1
    SvgLeaf z1 = leaf(LeafKind::Line, 0.1, 0.1, 0.0);
    SvgLeaf z2 = leaf(LeafKind::Line, 0.1, 0.1, 0.0);
    CHECK(leaf_cost(z1, z2) == 0.0);
}

namespace {

// min total cost over complete injective row->col maps (size = min(m,n))
double brute_force_assignment(const std::vector<std::vector<double>>& cost) {
    int m = static_cast<int>(cost.size());
    int n = static_cast<int>(cost[0].size());
    double best = 1e18;
    std::vector<int> used(static_cast<std::size_t>(n), 0);
    std::function<void(int, int, double)> rec = [&](int row, int assigned, double acc) {
        if (assigned == std::min(m, n)) {
            best = std::min(best, acc);
            return;
        }
        if (row == m) return;
        // skipping this row is allowed only when rows outnumber columns
        if (m > n) rec(row + 1, assigned, acc);
        for (int j = 0; j < n; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            used[static_cast<std::size_t>(j)] = 1;
            rec(row + 1, assigned + 1,
                acc + cost[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)]);
            used[static_cast<std::size_t>(j)] = 0;
        }
    };
    rec(0, 0, 0.0);
    return best;
}

} // namespace

TEST_CASE("solve_assignment matches brute force on random matrices") {
    Rng rng(404);
    for (int trial = 0; trial < 60; ++trial) {
        int m = 1 + static_cast<int>(rng.next_index(5));
        int n = 1 + static_cast<int>(rng.next_index(5));
        std::vector<std::vector<double>> cost(static_cast<std::size_t>(m),
                                              std::vector<double>(static_cast<std::size_t>(n)));
        for (auto& row : cost)
            for (double& c : row) c = rng.next_double() * 3.0;

        std::vector<int> assign = solve_assignment(cost);
        REQUIRE(assign.size() == static_cast<std::size_t>(m));
        double total = 0;
        int count = 0;
        std::vector<int> seen(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < m; ++i) {
            int j = assign[static_cast<std::size_t>(i)];
            if (j < 0) continue;
            REQUIRE(j < n);
            CHECK(!seen[static_cast<std::size_t>(j)]);
            seen[static_cast<std::size_t>(j)] = 1;
            total += cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            ++count;
        }
        CHECK(count == std::min(m, n)); // complete on the smaller side
        CHECK(total == doctest::Approx(brute_force_assignment(cost)).epsilon(1e-9));
    }
}

TEST_CASE("match_elements is mutual and rejects costly pairs") {
    Rng rng(505);
    for (int trial = 0; trial < 40; ++trial) {
        auto random_leaves = [&](int n) {
            std::vector<SvgLeaf> ls;
            for (int i = 0; i < n; ++i)
                ls.push_back(leaf(rng.next_double() < 0.3 ? LeafKind::Circle : LeafKind::Rect,
                                  rng.next_double(), rng.next_double(), rng.next_double() * 0.2));
            return ls;
        };
        SvgDocument gd = doc_of(random_leaves(1 + static_cast<int>(rng.next_index(4))));
        SvgDocument pd = doc_of(random_leaves(1 + static_cast<int>(rng.next_index(4))));
        Matching m = match_elements(gd, pd);
        REQUIRE(m.gt_matched.size() == gd.leaves.size());
        REQUIRE(m.pr_matched.size() == pd.leaves.size());
        for (std::size_t i = 0; i < m.gt_matched.size(); ++i) {
            int j = m.gt_matched[i];
            if (j >= 0) {
                CHECK(m.pr_matched[static_cast<std::size_t>(j)] == static_cast<int>(i));
                CHECK(leaf_cost(gd.leaves[i], pd.leaves[static_cast<std::size_t>(j)]) <= 1.0);
            }
        }
        for (std::size_t j = 0; j < m.pr_matched.size(); ++j) {
            int i = m.pr_matched[j];
            if (i >= 0) CHECK(m.gt_matched[static_cast<std::size_t>(i)] == static_cast<int>(j));
        }
        // kind mismatch can never be matched
        for (std::size_t i = 0; i < gd.leaves.size(); ++i) {
            int j = m.gt_matched[i];
            if (j >= 0) CHECK(gd.leaves[i].kind == pd.leaves[static_cast<std::size_t>(j)].kind);
        }
    }
}

TEST_CASE("metric_area follows the matched-share rule") {
    SvgDocument gt = doc_of({leaf(LeafKind::Rect, 0.2, 0.2, 0.10),
                             leaf(LeafKind::Circle, 0.8, 0.8, 0.10)});
    SvgDocument pr = doc_of({leaf(LeafKind::Rect, 0.2, 0.2, 0.10)});
    Matching m = match_elements(gt, pr);
    // matched mass: 0.10 + 0.10 over total 0.30
    CHECK(metric_area(gt, pr, m) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    Matching none;
    none.gt_matched = {-1, -1};
    none.pr_matched = {-1};
    CHECK(metric_area(gt, pr, none) == 0.0);

    SvgDocument empty = doc_of({});
    Matching trivial = match_elements(empty, empty);
    CHECK(metric_area(empty, empty, trivial) == 1.0);
}

TEST_CASE("sorensen_dice examples") {
    CHECK(sorensen_dice("night", "nacht") == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(sorensen_dice("", "") == 1.0);
    CHECK(sorensen_dice("abc", "") == 0.0);
    CHECK(sorensen_dice("same", "same") == 1.0);
    // multiset counting: "aa" vs "a" shares one 'a'
    CHECK(sorensen_dice("aa", "a") == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("metric_text zeroes unmatched GT text") {
    SvgDocument gt = doc_of({leaf(LeafKind::Text, 0.2, 0.2, 0.01, "night"),
                             leaf(LeafKind::Text, 0.8, 0.8, 0.01, "lost")});
    SvgDocument pr = doc_of({leaf(LeafKind::Text, 0.2, 0.2, 0.01, "nacht")});
    Matching m = match_elements(gt, pr);
    REQUIRE(m.gt_matched[0] == 0);
    REQUIRE(m.gt_matched[1] == -1);
    CHECK(metric_text(gt, pr, m) == doctest::Approx(0.3).epsilon(1e-12));

    // no text anywhere: vacuously perfect
    SvgDocument rects = doc_of({leaf(LeafKind::Rect, 0.5, 0.5, 0.1)});
    Matching mr = match_elements(rects, rects);
    CHECK(metric_text(rects, rects, mr) == 1.0);
}

TEST_CASE("position and size similarities") {
    CHECK(position_similarity(0.25, 0.10) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(position_similarity(-0.25, 0.10) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(position_similarity(1.5, 0.0) == 0.0); // clamped
    CHECK(position_similarity(0.0, 0.0) == 1.0);

    CHECK(size_similarity(100, 50) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(size_similarity(50, 100) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(size_similarity(0, 0) == 1.0);
    CHECK(size_similarity(0, 5) == 0.0);
}

TEST_CASE("metric_color averages resolvable pairs only") {
    auto with_color = [](SvgLeaf l, Rgb c) {
        l.color = c;
        return l;
    };
    SvgLeaf base = leaf(LeafKind::Rect, 0.5, 0.5, 0.1);
    SvgDocument gt = doc_of({with_color(base, Rgb{255, 0, 0}),
                             leaf(LeafKind::Circle, 0.2, 0.2, 0.05)});
    SvgDocument pr = doc_of({with_color(base, Rgb{255, 0, 0}),
                             leaf(LeafKind::Circle, 0.2, 0.2, 0.05)});
    Matching m = match_elements(gt, pr);
    CHECK(metric_color(gt, pr, m) == 1.0); // colorless pair is not counted

    SvgDocument pr2 = doc_of({with_color(base, Rgb{254, 0, 0}),
                              leaf(LeafKind::Circle, 0.2, 0.2, 0.05)});
    double s = metric_color(gt, pr2, match_elements(gt, pr2));
    CHECK(s < 1.0);
    CHECK(s > 0.98); // near-identical reds
    CHECK(s == doctest::Approx(color_similarity(Rgb{255, 0, 0}, Rgb{254, 0, 0})).epsilon(1e-12));
}

TEST_CASE("color similarity is a clipped CIEDE2000 complement") {
    CHECK(color_similarity(Rgb{10, 20, 30}, Rgb{10, 20, 30}) == 1.0);
    Rgb a{255, 255, 255}, b{0, 0, 0};
    CHECK(color_similarity(a, b) ==
          doctest::Approx(std::clamp(1.0 - ciede2000(a, b) / 100.0, 0.0, 1.0)).epsilon(1e-12));
    CHECK(color_similarity(a, b) < 0.1);
}

TEST_CASE("low_level_score is the unweighted mean times 100") {
    MetricBreakdown b;
    b.area = 1.0;
    b.text = 0.6;
    b.image = 1.0;
    b.color = 1.0;
    b.position = 0.75;
    b.size = 0.5;
    CHECK(low_level_score(b) == doctest::Approx(4.85 / 6.0 * 100.0).epsilon(1e-12));
    MetricBreakdown perfect{1, 1, 1, 1, 1, 1};
    CHECK(low_level_score(perfect) == 100.0);
}

TEST_CASE("execution failure zeroes everything") {
    SvgDocument gt = doc_of({leaf(LeafKind::Rect, 0.5, 0.5, 0.1)});
    EvalReport r = evaluate_documents(gt, gt, false);
    CHECK(!r.exec_ok);
    CHECK(r.low_level == 0.0);
    REQUIRE(r.high_level.has_value());
    CHECK(*r.high_level == 0.0);
    REQUIRE(r.overall.has_value());
    CHECK(*r.overall == 0.0);
}

TEST_CASE("external scorer failure falls back to hash equality") {
    SvgLeaf img = leaf(LeafKind::Image, 0.5, 0.5, 0.1);
    img.image_hash = 777;
    SvgDocument gt = doc_of({img}), pr = doc_of({img});
    ImageScorer broken = [](const SvgLeaf&, const SvgLeaf&) -> double {
        throw Error(ErrorCode::ExternalScorerFailure, "eval", "scorer down");
    };
    bool fb = false;
    Matching m = match_elements(gt, pr);
    CHECK(metric_image(gt, pr, m, broken, &fb) == 1.0);
    CHECK(fb);

    EvalReport r = evaluate_documents(gt, pr, true, broken);
    CHECK(r.breakdown.image == 1.0);
    bool flagged = false;
    for (const auto& f : r.flags) flagged = flagged || f.find("fallback") != std::string::npos;
    CHECK(flagged);

    // a working scorer overrides the hash
    ImageScorer working = [](const SvgLeaf&, const SvgLeaf&) { return 0.25; };
    CHECK(metric_image(gt, pr, m, working) == 0.25);

    // other error codes propagate
    ImageScorer fatal = [](const SvgLeaf&, const SvgLeaf&) -> double {
        throw Error(ErrorCode::IoError, "eval", "disk gone");
    };
    CHECK_THROWS_AS((void)metric_image(gt, pr, m, fatal), Error);
}

TEST_CASE("report JSON carries the documented keys") {
    SvgDocument gt = doc_of({leaf(LeafKind::Rect, 0.5, 0.5, 0.1)});
    EvalReport r = evaluate_documents(gt, gt, true);
    std::string js = r.to_json_string();
    for (const char* key : {"exec_ok", "breakdown", "low_level", "high_level", "overall",
                            "unmatched_gt", "unmatched_pr", "flags", "area", "position"})
        CHECK_MESSAGE(js.find(std::string("\"") + key + "\"") != std::string::npos, key);
}

TEST_CASE("metrics stay in [0,1] under fuzzing") {
    Rng rng(9091);
    for (int trial = 0; trial < 60; ++trial) {
        auto random_doc = [&]() {
            std::vector<SvgLeaf> ls;
            int n = static_cast<int>(rng.next_index(6));
            for (int i = 0; i < n; ++i) {
                LeafKind k = static_cast<LeafKind>(rng.next_index(8));
                SvgLeaf l = leaf(k, rng.next_double() * 2 - 0.5, rng.next_double() * 2 - 0.5,
                                 rng.next_double() * 0.5);
                if (k == LeafKind::Text) l.text = rng.next_double() < 0.5 ? "alpha" : "beta";
                if (rng.next_double() < 0.7)
                    l.color = Rgb{static_cast<std::uint8_t>(rng.next_index(256)),
                                  static_cast<std::uint8_t>(rng.next_index(256)),
                                  static_cast<std::uint8_t>(rng.next_index(256))};
                ls.push_back(l);
            }
            return doc_of(ls);
        };
        SvgDocument gt = random_doc(), pr = random_doc();
        EvalReport r = evaluate_documents(gt, pr, true);
        for (double v : {r.breakdown.area, r.breakdown.text, r.breakdown.image, r.breakdown.color,
                         r.breakdown.position, r.breakdown.size}) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        CHECK(r.low_level >= 0.0);
        CHECK(r.low_level <= 100.0);
    }
}

TEST_CASE("self evaluation of a rendered chart is exact") {
    std::string svg = render_svg("City,Pop\nOslo,5\nRiga,9\nBern,3\nCork,7\n",
                                 "Vertical Bar Chart");
    EvalReport r = evaluate_svg_strings(svg, svg, true);
    CHECK(r.exec_ok);
    CHECK(r.breakdown.area == 1.0);
    CHECK(r.breakdown.text == 1.0);
    CHECK(r.breakdown.image == 1.0);
    CHECK(r.breakdown.color == 1.0);
    CHECK(r.breakdown.position == 1.0);
    CHECK(r.breakdown.size == 1.0);
    CHECK(r.low_level == 100.0);
    CHECK(r.unmatched_gt == 0);
    CHECK(r.unmatched_pr == 0);
}
