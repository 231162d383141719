// Acceptance gate: ten end-to-end checks with pinned tolerances, one
// PASS/FAIL line each. Exits nonzero if any check fails.
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "foundry/assignment.hpp"
#include "foundry/chartmap.hpp"
#include "foundry/color.hpp"
#include "foundry/errors.hpp"
#include "foundry/eval.hpp"
#include "foundry/layout.hpp"
#include "foundry/pipeline.hpp"
#include "foundry/qa.hpp"
#include "foundry/rng.hpp"
#include "foundry/scene.hpp"
#include "foundry/svgdom.hpp"
#include "foundry/tabular.hpp"

using namespace foundry;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kMetricTol = 1e-9;       // hand-derived position/size values
constexpr double kCiedeTol = 1e-4;        // vs the published CIEDE2000 pairs
constexpr double kPackingSlack = 0.02;    // grid search vs exhaustive 1px optimum
constexpr double kRatioCrossTol = 1e-6;   // reported ink_ratio vs closed form
constexpr double kPerturbTol = 1e-12;     // position shift law
constexpr double kSamplerMaxRatio = 1.5;  // variation count spread
constexpr double kMinBatchSuccess = 0.95; // desk-scale corpus success rate
constexpr double kStatsSumTol = 1e-6;     // stats percentages vs 100

struct Result {
    bool pass = true;
    std::string summary;
    std::vector<std::string> errors;

    void fail(std::string msg) {
        pass = false;
        if (errors.size() < 6) errors.push_back(std::move(msg));
    }
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// ---------------------------------------------------------------------------
// Deterministic table builders shared by several checks.

const char* kCatPool[] = {"Alta",    "Brio",  "Cedar", "Dune",  "Ember", "Flint",
                          "Grove",   "Harbor", "Iris",  "Juniper", "Krill", "Lumen",
                          "Maple",   "Nadir", "Opal",  "Pike"};
const char* kSeriesPool[] = {"North", "South", "East", "West", "Core", "Rim"};

std::string num1(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.1f", v);
    return b;
}

std::string csv_c1n1(Rng r, int rows) {
    std::string s = "Region,Score\n";
    for (int i = 0; i < rows; ++i)
        s += std::string(kCatPool[i]) + "," +
             num1(8.0 + 7.0 * i + 0.5 * static_cast<double>(r.next_index(8))) + "\n";
    return s;
}

std::string csv_c2n1(Rng r, int groups, int series) {
    std::string s = "Quarter,Team,Output\n";
    for (int g = 0; g < groups; ++g)
        for (int t = 0; t < series; ++t)
            s += std::string(kCatPool[g]) + "," + kSeriesPool[t] + "," +
                 num1(6.0 + 4.0 * g + 2.0 * t + 0.5 * static_cast<double>(r.next_index(4))) +
                 "\n";
    return s;
}

std::string csv_t1n1(Rng r, int rows) {
    std::string s = "Year,Index\n";
    for (int i = 0; i < rows; ++i)
        s += std::to_string(2004 + i) + "," +
             num1(20.0 + 5.0 * i + 0.5 * static_cast<double>(r.next_index(6))) + "\n";
    return s;
}

// Team columns are strictly ordered per year so fact checks have a signal.
std::string csv_t1n1c1(Rng r, int years, int series) {
    std::string s = "Year,Team,Index\n";
    for (int y = 0; y < years; ++y)
        for (int t = 0; t < series; ++t)
            s += std::to_string(2010 + y) + "," + kSeriesPool[t] + "," +
                 num1(10.0 + 3.0 * y + 6.0 * t + 0.5 * static_cast<double>(r.next_index(4))) +
                 "\n";
    return s;
}

std::string csv_c1n2(Rng r, int rows, bool two_rating_levels = false) {
    std::string s = "Item,Cost,Rating\n";
    for (int i = 0; i < rows; ++i) {
        double rating = two_rating_levels ? 2.0 + i % 2 : 1.0 + i % 4;
        s += std::string(kCatPool[i]) + "," +
             num1(30.0 + 9.0 * i + 0.5 * static_cast<double>(r.next_index(6))) + "," +
             num1(rating) + "\n";
    }
    return s;
}

std::string csv_n1(Rng r, int rows) {
    std::string s = "Share\n";
    for (int i = 0; i < rows; ++i)
        s += num1(18.0 + 23.0 * i + static_cast<double>(r.next_index(4))) + "\n";
    return s;
}

enum SigId { kSigC1N1 = 0, kSigC2N1, kSigT1N1, kSigT1N1C1, kSigC1N2, kSigN1, kSigCount };

DataTable make_table(int sig, Rng r) {
    switch (sig) {
        case kSigC1N1: return load_table_text(csv_c1n1(r.child("v"), 3 + static_cast<int>(r.next_index(6))));
        case kSigC2N1:
            return load_table_text(csv_c2n1(r.child("v"), 3 + static_cast<int>(r.next_index(3)),
                                            2 + static_cast<int>(r.next_index(2))));
        case kSigT1N1: return load_table_text(csv_t1n1(r.child("v"), 5 + static_cast<int>(r.next_index(6))));
        case kSigT1N1C1:
            return load_table_text(csv_t1n1c1(r.child("v"), 4 + static_cast<int>(r.next_index(3)),
                                              2 + static_cast<int>(r.next_index(2))));
        case kSigC1N2: return load_table_text(csv_c1n2(r.child("v"), 4 + static_cast<int>(r.next_index(4))));
        default: return load_table_text(csv_n1(r.child("v"), 1 + static_cast<int>(r.next_index(3))));
    }
}

const char* kRenderedTypes[14] = {
    "Vertical Bar Chart", "Vertical Stacked Bar Chart", "Vertical Grouped Bar Chart",
    "Horizontal Bar Chart", "Lollipop Chart", "Line Graph", "Spline Graph", "Area Chart",
    "Stacked Area Chart", "Pie Chart", "Donut Chart", "Scatterplot", "Bubble Chart",
    "Waffle Chart"};

int sig_for_rendered(int ti) {
    switch (ti) {
        case 1: case 2: return kSigC2N1;
        case 5: case 6: case 7: return kSigT1N1;
        case 8: return kSigT1N1C1;
        case 11: case 12: return kSigC1N2;
        case 13: return kSigN1;
        default: return kSigC1N1; // vertical/horizontal bar, lollipop, pie, donut
    }
}

void write_acceptance_pool(const fs::path& dir) {
    fs::create_directories(dir);
    Rng r(31337);
    auto put = [&](const char* name, const std::string& text) {
        write_file((dir / name).string(), text);
    };
    put("c1n1_a.csv", csv_c1n1(r.child("1a"), 4));
    put("c1n1_b.csv", csv_c1n1(r.child("1b"), 6));
    put("c1n1_c.csv", csv_c1n1(r.child("1c"), 8));
    put("c1n1_d.csv", csv_c1n1(r.child("1d"), 5));
    put("c2n1_a.csv", csv_c2n1(r.child("2a"), 3, 2));
    put("c2n1_b.csv", csv_c2n1(r.child("2b"), 4, 3));
    put("c2n1_c.csv", csv_c2n1(r.child("2c"), 5, 2));
    put("t1n1_a.csv", csv_t1n1(r.child("3a"), 6));
    put("t1n1_b.csv", csv_t1n1(r.child("3b"), 9));
    put("t1n1_c.csv", csv_t1n1(r.child("3c"), 12));
    put("t1n1c1_a.csv", csv_t1n1c1(r.child("4a"), 4, 2));
    put("t1n1c1_b.csv", csv_t1n1c1(r.child("4b"), 5, 3));
    put("t1n1c1_c.csv", csv_t1n1c1(r.child("4c"), 6, 2));
    put("c1n2_a.csv", csv_c1n2(r.child("5a"), 5));
    put("c1n2_b.csv", csv_c1n2(r.child("5b"), 7));
    put("c1n2_c.csv", csv_c1n2(r.child("5c"), 4, true));
    put("n1_a.csv", csv_n1(r.child("6a"), 1));
    put("n1_b.csv", csv_n1(r.child("6b"), 3));
}

// ---------------------------------------------------------------------------
// 1. Mapping-rule conformance over the full 75-row rule table.

struct RuleRow {
    const char* name;
    const char* combos; // space-separated tokens, e.g. "C1N1 T1N1C1*"
};

const RuleRow kRuleTable[] = {
    {"Vertical Bar Chart", "C1N1"},
    {"Vertical Stacked Bar Chart", "C2N1"},
    {"Vertical Grouped Bar Chart", "C2N1"},
    {"Horizontal Bar Chart", "C1N1"},
    {"Horizontal Stacked Bar Chart", "C2N1"},
    {"Horizontal Grouped Bar Chart", "C2N1"},
    {"Radial Bar Chart", "C1N1"},
    {"Radial Stacked Bar Chart", "C2N1"},
    {"Radial Grouped Bar Chart", "C2N1"},
    {"Circular Bar Chart", "C1N1"},
    {"Circular Stacked Bar Chart", "C2N1"},
    {"Circular Grouped Bar Chart", "C2N1"},
    {"Pictorial Percentage Bar Chart", "C1N1"},
    {"Histogram", "C1N1 T1N1"},
    {"Lollipop Chart", "C1N1"},
    {"Dot chart", "C1N1 C2N1"},
    {"Diverging Bar Chart", "C2N1*"},
    {"Vertical Bar Chart With Circle", "C1N2"},
    {"Horizontal Bar Chart With Circle", "C1N2"},
    {"Vertical Dot Bar Chart", "C1N1"},
    {"Horizontal Dot Bar Chart", "C1N1"},
    {"Dumbbell Plot", "T1N1C1*"},
    {"Span Chart", "C1N2"},
    {"Bump Chart", "T1N1C1"},
    {"Line Graph", "T1N1 T1N1C1"},
    {"Spline Graph", "T1N1 T1N1C1"},
    {"Stepped Line Graph", "T1N1 T1N1C1"},
    {"Slope Chart", "T1N1C1"},
    {"Small Multiples of Line Graphs", "T1N1C1"},
    {"Small Multiples of Spline Graphs", "T1N1C1"},
    {"Small Multiples of Stepped Line Graphs", "T1N1C1"},
    {"Area Chart", "T1N1 T1N1C1"},
    {"Spline Area Chart", "T1N1 T1N1C1"},
    {"Layered Area Chart", "T1N1C1"},
    {"Layered Spline Area Chart", "T1N1C1"},
    {"Range Area Chart", "T1N1C1*"},
    {"Stacked Area Chart", "T1N1C1"},
    {"Radial Area Chart", "T1N1C1"},
    {"Radial Spline Area Chart", "T1N1C1"},
    {"Radial Layered Area Chart", "T1N1C1"},
    {"Radial Layered Spline Area Chart", "T1N1C1"},
    {"Radial Range Area Chart", "T1N1C1*"},
    {"Radial Stacked Area Chart", "T1N1C1"},
    {"Diverging Area Chart", "T1N1C1*"},
    {"Diverging Spline Area Chart", "T1N1C1*"},
    {"Small Multiples of Area Charts", "T1N1C1"},
    {"Small Multiples of Spline Area Charts", "T1N1C1"},
    {"Pie Chart", "C1N1"},
    {"Donut Chart", "C1N1"},
    {"Semicircle Pie Chart", "C1N1"},
    {"Semicircle Donut Chart", "C1N1"},
    {"Rose Chart", "C1N1"},
    {"Small Multiples of Pie Charts", "C2N1"},
    {"Small Multiples of Donut Charts", "C2N1"},
    {"Small Multiples of Semicircle Pie Charts", "C2N1"},
    {"Small Multiples of Semicircle Donut Charts", "C2N1"},
    {"Small Multiples of Rose Charts", "C2N1"},
    {"Radar Line Chart", "C1N1"},
    {"Radar Spline Chart", "C1N1"},
    {"Small Multiples of Radar Line Charts", "C2N1"},
    {"Small Multiples of Radar Spline Charts", "C2N1"},
    {"Proportional Area Chart", "C1N1"},
    {"Scatterplot", "C1N2"},
    {"Grouped Scatterplot", "C2N2"},
    {"Bubble Chart", "C1N2"},
    {"Heatmap", "N2"},
    {"Waffle Chart", "N1"},
    {"Small Multiples of Waffle Charts", "C1N1"},
    {"Alluvial Diagram", "C1N1T1 C2N1"},
    {"Gauge Chart", "N1"},
    {"Small Multiples of Gauge Charts", "C1N1"},
    {"Funnel Chart", "C1N1"},
    {"Pyramid Chart", "C1N1"},
    {"Treemap", "C2N1"},
    {"Voronoi Treemap", "C2N1"},
};
static_assert(sizeof(kRuleTable) / sizeof(kRuleTable[0]) == 75);

struct Pat {
    int c = 0, n = 0, t = 0;
    bool star = false;
};

std::vector<Pat> parse_combos(const char* text) {
    std::vector<Pat> out;
    Pat cur;
    for (const char* p = text;; ++p) {
        char ch = *p;
        if (ch == 'C' || ch == 'N' || ch == 'T') {
            int k = *(++p) - '0';
            if (ch == 'C') cur.c = k;
            else if (ch == 'N') cur.n = k;
            else cur.t = k;
        } else if (ch == '*') {
            cur.star = true;
        } else if (ch == ' ' || ch == '\0') {
            out.push_back(cur);
            cur = Pat{};
            if (ch == '\0') break;
        }
    }
    return out;
}

AttributeSignature sig_from_pat(const Pat& p) {
    AttributeSignature sig;
    sig.categorical = p.c;
    sig.numeric = p.n;
    sig.temporal = p.t;
    for (int i = 0; i < p.c; ++i)
        sig.categorical_cardinalities.push_back(i == 0 ? (p.star ? 2 : 5) : 4);
    for (int i = 0; i < p.n; ++i) sig.numeric_cardinalities.push_back(9);
    for (int i = 0; i < p.t; ++i) sig.temporal_cardinalities.push_back(6);
    return sig;
}

bool pat_accepts(const Pat& p, const AttributeSignature& sig) {
    if (p.c != sig.categorical || p.n != sig.numeric || p.t != sig.temporal) return false;
    if (p.star)
        return !sig.categorical_cardinalities.empty() && sig.categorical_cardinalities[0] == 2;
    return true;
}

Result crit_mapping_rules() {
    Result res;
    const Registry& reg = Registry::builtin();
    if (reg.types().size() != 75)
        res.fail(fmt("registry has %zu types, want 75", reg.types().size()));

    std::set<std::string> rendered;
    for (const auto& t : reg.types())
        if (t.rendered) rendered.insert(t.name);
    if (rendered.size() != 14)
        res.fail(fmt("rendered subset has %zu types, want 14", rendered.size()));
    for (const char* want : kRenderedTypes)
        if (!rendered.count(want)) res.fail(fmt("'%s' missing from rendered subset", want));

    int rows_checked = 0;
    for (const RuleRow& row : kRuleTable) {
        for (const Pat& pat : parse_combos(row.combos)) {
            AttributeSignature sig = sig_from_pat(pat);
            std::vector<std::string> expected;
            for (const RuleRow& other : kRuleTable)
                for (const Pat& op : parse_combos(other.combos))
                    if (pat_accepts(op, sig)) {
                        expected.push_back(other.name);
                        break;
                    }

            std::vector<std::string> actual;
            for (const ChartType* t : candidate_chart_types(sig, reg)) actual.push_back(t->name);

            if (actual != expected)
                res.fail(fmt("'%s' signature %s: got %zu candidates, want %zu (or order differs)",
                             row.name, sig.to_string().c_str(), actual.size(), expected.size()));
            if (std::find(actual.begin(), actual.end(), row.name) == actual.end())
                res.fail(fmt("'%s' not offered for its own signature %s", row.name,
                             sig.to_string().c_str()));
            ++rows_checked;
        }
    }
    res.summary = fmt("%d row signatures, inclusion + exclusion + order exact", rows_checked);
    return res;
}

// ---------------------------------------------------------------------------
// 2. Self-evaluation identity over 200 charts spanning all rendered types.

Result crit_self_eval() {
    Result res;
    GenerateConfig base;
    PipelineEnv env = load_env(base);
    SamplerState sampler(7);
    Rng root(5150);

    std::set<std::string> seen;
    int charts = 0;
    for (int i = 0; i < 200; ++i) {
        int ti = i % 14;
        const char* type = kRenderedTypes[ti];
        Rng r = root.child(static_cast<std::uint64_t>(i));
        DataTable table = make_table(sig_for_rendered(ti), r.child("table"));

        GenerateConfig cfg = base;
        cfg.type_allowlist = {type};
        std::string id = fmt("acc2-%03d", i);
        try {
            ChartPlan plan = plan_chart(table, 0, id, cfg, env, r.child("plan"), sampler);
            if (plan.chart_type != type) {
                res.fail(fmt("%s: allowlist produced '%s'", type, plan.chart_type.c_str()));
                continue;
            }
            ChartArtifacts art = execute_plan(plan, table, "pool.csv", cfg, env);
            SvgDocument doc = parse_svg(art.svg);
            EvalReport rep = evaluate_documents(doc, doc);
            if (rep.low_level != 100.0)
                res.fail(fmt("%s: self low_level = %.17g", type, rep.low_level));
            if (rep.unmatched_gt != 0 || rep.unmatched_pr != 0)
                res.fail(fmt("%s: self-eval left %d+%d leaves unmatched", type, rep.unmatched_gt,
                             rep.unmatched_pr));
            seen.insert(type);
            ++charts;
        } catch (const Error& e) {
            res.fail(fmt("%s: %s (%s)", type, e.what(), error_code_name(e.code())));
        }
    }
    if (seen.size() != 14) res.fail(fmt("only %zu/14 types rendered", seen.size()));
    res.summary = fmt("%d/200 charts score 100.00 against themselves, %zu/14 types", charts,
                      seen.size());
    return res;
}

// ---------------------------------------------------------------------------
// 3. Assignment solver vs brute-force permutation minimum.

double brute_min_assignment(const std::vector<std::vector<double>>& cost) {
    std::size_t m = cost.size(), n = cost[0].size();
    if (m > n) {
        std::vector<std::vector<double>> t(n, std::vector<double>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) t[j][i] = cost[i][j];
        return brute_min_assignment(t);
    }
    std::vector<char> used(n, 0);
    std::function<double(std::size_t)> rec = [&](std::size_t row) -> double {
        if (row == m) return 0.0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            used[j] = 1;
            best = std::min(best, cost[row][j] + rec(row + 1));
            used[j] = 0;
        }
        return best;
    };
    return rec(0);
}

Result crit_assignment_oracle() {
    Result res;
    Rng root(1313);
    int exact = 0;
    for (int k = 0; k < 500; ++k) {
        Rng r = root.child(static_cast<std::uint64_t>(k));
        std::size_t m = 1 + r.next_index(7), n = 1 + r.next_index(7);
        // dyadic costs keep every partial sum exact, so == is meaningful
        std::vector<std::vector<double>> cost(m, std::vector<double>(n));
        for (auto& row : cost)
            for (double& c : row) c = static_cast<double>(r.next_index(4096)) / 1024.0;

        std::vector<int> assign = solve_assignment(cost);
        double total = 0;
        std::size_t pairs = 0;
        std::vector<char> col_used(n, 0);
        bool shape_ok = assign.size() == m;
        for (std::size_t i = 0; i < assign.size() && shape_ok; ++i) {
            if (assign[i] < 0) continue;
            if (assign[i] >= static_cast<int>(n) || col_used[assign[i]]) shape_ok = false;
            else {
                col_used[assign[i]] = 1;
                total += cost[i][assign[i]];
                ++pairs;
            }
        }
        if (!shape_ok || pairs != std::min(m, n)) {
            res.fail(fmt("case %d (%zux%zu): malformed assignment", k, m, n));
            continue;
        }
        double want = brute_min_assignment(cost);
        if (total != want)
            res.fail(fmt("case %d (%zux%zu): solver %.17g != brute force %.17g", k, m, n, total,
                         want));
        else
            ++exact;
    }
    res.summary = fmt("%d/500 random cost matrices solved to the exact optimum", exact);
    return res;
}

// ---------------------------------------------------------------------------
// 4. Metric formulas: hand-derived values + CIEDE2000 reference pairs
//    (Sharma, Wu & Dalal 2005 verification data).

struct CiedeCase {
    double l1, a1, b1, l2, a2, b2, de;
};

const CiedeCase kCiedePairs[] = {
    {50.0000, 2.6772, -79.7751, 50.0000, 0.0000, -82.7485, 2.0425},
    {50.0000, 3.1571, -77.2803, 50.0000, 0.0000, -82.7485, 2.8615},
    {50.0000, 2.8361, -74.0200, 50.0000, 0.0000, -82.7485, 3.4412},
    {50.0000, -1.3802, -84.2814, 50.0000, 0.0000, -82.7485, 1.0000},
    {50.0000, -1.1848, -84.8006, 50.0000, 0.0000, -82.7485, 1.0000},
    {50.0000, -0.9009, -85.5211, 50.0000, 0.0000, -82.7485, 1.0000},
    {50.0000, 0.0000, 0.0000, 50.0000, -1.0000, 2.0000, 2.3669},
    {50.0000, -1.0000, 2.0000, 50.0000, 0.0000, 0.0000, 2.3669},
    {50.0000, 2.4900, -0.0010, 50.0000, -2.4900, 0.0009, 7.1792},
    {50.0000, 2.4900, -0.0010, 50.0000, -2.4900, 0.0010, 7.1792},
    {50.0000, 2.4900, -0.0010, 50.0000, -2.4900, 0.0011, 7.2195},
    {50.0000, 2.4900, -0.0010, 50.0000, -2.4900, 0.0012, 7.2195},
    {50.0000, -0.0010, 2.4900, 50.0000, 0.0009, -2.4900, 4.8045},
    {50.0000, -0.0010, 2.4900, 50.0000, 0.0010, -2.4900, 4.8045},
    {50.0000, -0.0010, 2.4900, 50.0000, 0.0011, -2.4900, 4.7461},
    {50.0000, 2.5000, 0.0000, 50.0000, 0.0000, -2.5000, 4.3065},
    {50.0000, 2.5000, 0.0000, 73.0000, 25.0000, -18.0000, 27.1492},
    {50.0000, 2.5000, 0.0000, 61.0000, -5.0000, 29.0000, 22.8977},
    {50.0000, 2.5000, 0.0000, 56.0000, -27.0000, -3.0000, 31.9030},
    {50.0000, 2.5000, 0.0000, 58.0000, 24.0000, 15.0000, 19.4535},
    {50.0000, 2.5000, 0.0000, 50.0000, 3.1736, 0.5854, 1.0000},
    {50.0000, 2.5000, 0.0000, 50.0000, 3.2972, 0.0000, 1.0000},
    {50.0000, 2.5000, 0.0000, 50.0000, 1.8634, 0.5757, 1.0000},
    {50.0000, 2.5000, 0.0000, 50.0000, 3.2592, 0.3350, 1.0000},
    {60.2574, -34.0099, 36.2677, 60.4626, -34.1751, 39.4387, 1.2644},
    {63.0109, -31.0961, -5.8663, 62.8187, -29.7946, -4.0864, 1.2630},
    {61.2901, 3.7196, -5.3901, 61.4292, 2.2480, -4.9620, 1.8731},
    {35.0831, -44.1164, 3.7933, 35.0232, -40.0716, 1.5901, 1.8645},
    {22.7233, 20.0904, -46.6940, 23.0331, 14.9730, -42.5619, 2.0373},
    {36.4612, 47.8580, 18.3852, 36.2715, 50.5065, 21.2231, 1.4146},
    {90.8027, -2.0831, 1.4410, 91.1528, -1.6435, 0.0447, 1.4441},
    {90.9257, -0.5406, -0.9208, 88.6381, -0.8985, -0.7239, 1.5381},
    {6.7747, -0.2908, -2.4247, 5.8714, -0.0985, -2.2286, 0.6377},
    {2.0776, 0.0795, -1.1350, 0.9033, -0.0636, -0.5514, 0.9082},
};
static_assert(sizeof(kCiedePairs) / sizeof(kCiedePairs[0]) == 34);

Result crit_metric_formulas() {
    Result res;
    auto near = [&](double got, double want, double tol, const char* what) {
        if (std::fabs(got - want) > tol)
            res.fail(fmt("%s: got %.10f, want %.10f (tol %g)", what, got, want, tol));
    };
    near(position_similarity(0.25, 0.10), 0.75, kMetricTol, "position (0.25, 0.10)");
    near(position_similarity(-0.25, 0.10), 0.75, kMetricTol, "position (-0.25, 0.10)");
    near(size_similarity(100.0, 50.0), 0.5, kMetricTol, "size 100 vs 50");
    near(size_similarity(50.0, 100.0), 0.5, kMetricTol, "size 50 vs 100");

    int ok = 0;
    for (std::size_t i = 0; i < 34; ++i) {
        const CiedeCase& c = kCiedePairs[i];
        double d = ciede2000(Lab{c.l1, c.a1, c.b1}, Lab{c.l2, c.a2, c.b2});
        if (std::fabs(d - c.de) > kCiedeTol)
            res.fail(fmt("CIEDE2000 pair %zu: got %.6f, want %.4f", i + 1, d, c.de));
        else
            ++ok;
    }
    res.summary = fmt("position/size hand values to 1e-9, %d/34 CIEDE2000 pairs to 1e-4", ok);
    return res;
}

// ---------------------------------------------------------------------------
// 5. Packing vs an exhaustive 1px-step oracle on toy instances.

struct ToyRect {
    double x = 0, y = 0, w = 0, h = 0;
};

double toy_gap(const ToyRect& a, const ToyRect& b) {
    double dx = std::max({0.0, b.x - (a.x + a.w), a.x - (b.x + b.w)});
    double dy = std::max({0.0, b.y - (a.y + a.h), a.y - (b.y + b.h)});
    return std::max(dx, dy);
}

// Pairwise gap >= 1 keeps the boxes on disjoint raster cells, so the union of
// ink is the plain sum of areas and the ratio has a closed form.
double toy_ratio(const ToyRect* boxes, int nb) {
    double sum = 0, x0 = 1e18, y0 = 1e18, x1 = -1e18, y1 = -1e18;
    for (int i = 0; i < nb; ++i) {
        sum += boxes[i].w * boxes[i].h;
        x0 = std::min(x0, boxes[i].x);
        y0 = std::min(y0, boxes[i].y);
        x1 = std::max(x1, boxes[i].x + boxes[i].w);
        y1 = std::max(y1, boxes[i].y + boxes[i].h);
    }
    return sum / ((x1 - x0) * (y1 - y0));
}

// 1px-step box origins whose block center stays inside the anchor cell
// (clamped so the box stays on the canvas) — the same space the grid search
// draws its candidates from.
std::vector<double> toy_axis_positions(double cell_lo, double cell_hi, double w, double canvas) {
    double lo = std::max(cell_lo, w / 2), hi = std::min(cell_hi, canvas - w / 2);
    std::vector<double> out;
    for (double cx = lo; cx <= hi + 1e-9; cx += 1.0) out.push_back(cx - w / 2);
    return out;
}

struct ToyCase {
    double W = 0, H = 0, gap = 1;
    int nb = 1;
    double w[3] = {0, 0, 0}, h[3] = {0, 0, 0};
    int anchor[3] = {4, 4, 4};
};

double toy_oracle_best(const ToyCase& tc) {
    std::vector<double> xs[3], ys[3];
    for (int b = 0; b < tc.nb; ++b) {
        int col = tc.anchor[b] % 3, row = tc.anchor[b] / 3;
        xs[b] = toy_axis_positions(col * tc.W / 3, (col + 1) * tc.W / 3, tc.w[b], tc.W);
        ys[b] = toy_axis_positions(row * tc.H / 3, (row + 1) * tc.H / 3, tc.h[b], tc.H);
    }
    double best = -1;
    ToyRect r[3];
    for (int i = 0; i < tc.nb; ++i) {
        r[i].w = tc.w[i];
        r[i].h = tc.h[i];
    }
    if (tc.nb == 1) return 1.0; // a single solid box always fills its own bbox

    for (double xa : xs[0])
        for (double ya : ys[0]) {
            r[0].x = xa;
            r[0].y = ya;
            for (double xb : xs[1])
                for (double yb : ys[1]) {
                    r[1].x = xb;
                    r[1].y = yb;
                    if (toy_gap(r[0], r[1]) < tc.gap) continue;
                    if (tc.nb == 2) {
                        best = std::max(best, toy_ratio(r, 2));
                        continue;
                    }
                    for (double xc : xs[2])
                        for (double yc : ys[2]) {
                            r[2].x = xc;
                            r[2].y = yc;
                            if (toy_gap(r[0], r[2]) < tc.gap ||
                                toy_gap(r[1], r[2]) < tc.gap)
                                continue;
                            best = std::max(best, toy_ratio(r, 3));
                        }
                }
        }
    return best;
}

Result crit_packing_oracle() {
    Result res;
    Rng root(2718);
    const SlotRole roles[3] = {SlotRole::Chart, SlotRole::Image, SlotRole::Title};
    const int pair_anchors[6][2] = {{0, 8}, {2, 6}, {0, 2}, {6, 8}, {0, 6}, {2, 8}};
    const int trio_anchors[4][3] = {{0, 2, 6}, {0, 2, 8}, {0, 6, 8}, {2, 6, 8}};
    int solved = 0;
    double worst_slack = 0;

    for (int k = 0; k < 50; ++k) {
        Rng r = root.child(static_cast<std::uint64_t>(k));
        ToyCase tc;
        tc.nb = k < 14 ? 1 : k < 38 ? 2 : 3;
        const double dims2[4] = {60, 72, 90, 120};
        const double dims3[2] = {48, 60};
        tc.W = tc.nb == 3 ? dims3[r.next_index(2)] : dims2[r.next_index(4)];
        tc.H = tc.nb == 3 ? dims3[r.next_index(2)] : dims2[r.next_index(4)];
        tc.gap = 1.0 + static_cast<double>(r.next_index(3));
        if (tc.nb == 1) {
            tc.anchor[0] = static_cast<int>(r.next_index(9));
        } else if (tc.nb == 2) {
            const int* pa = pair_anchors[r.next_index(6)];
            tc.anchor[0] = pa[0];
            tc.anchor[1] = pa[1];
        } else {
            const int* ta = trio_anchors[r.next_index(4)];
            for (int b = 0; b < 3; ++b) tc.anchor[b] = ta[b];
        }
        double cw = tc.W / 3, ch = tc.H / 3;
        for (int b = 0; b < tc.nb; ++b) {
            tc.w[b] = 8 + 2.0 * static_cast<double>(r.next_index(static_cast<std::size_t>((cw - 8) / 2) + 1));
            tc.h[b] = 8 + 2.0 * static_cast<double>(r.next_index(static_cast<std::size_t>((ch - 8) / 2) + 1));
        }

        LayoutTemplate tmpl;
        tmpl.id = fmt("toy-%02d", k);
        std::vector<LayoutBlock> blocks;
        for (int b = 0; b < tc.nb; ++b) {
            TemplateSlot slot;
            slot.role = roles[b];
            slot.anchor = tc.anchor[b];
            slot.size_lo = slot.size_hi = (tc.w[b] * tc.h[b]) / (tc.W * tc.H); // pins scale 1
            tmpl.slots.push_back(slot);
            LayoutBlock blk;
            blk.role = roles[b];
            blk.width = tc.w[b];
            blk.height = tc.h[b];
            blk.ink.push_back({Rect{0, 0, tc.w[b], tc.h[b]}, 1.0});
            blocks.push_back(std::move(blk));
        }
        tmpl.overlap_allowed.assign(tc.nb, std::vector<bool>(tc.nb, false));
        for (int b = 0; b < tc.nb; ++b) tmpl.overlap_allowed[b][b] = true;

        LayoutParams params;
        params.canvas_w = tc.W;
        params.canvas_h = tc.H;
        params.gap_px = tc.gap;
        params.grid_n = 24;
        params.cell_size = 1.0;

        LayoutSolution sol;
        try {
            sol = optimize_layout(tmpl, blocks, params);
        } catch (const Error& e) {
            res.fail(fmt("case %d: %s", k, e.what()));
            continue;
        }

        ToyRect got[3];
        bool ok = true;
        for (int b = 0; b < tc.nb; ++b) {
            const PlacedElement& pe = sol.placements[b];
            got[b] = {pe.bbox.x, pe.bbox.y, pe.bbox.w, pe.bbox.h};
            if (pe.scale != 1.0) {
                res.fail(fmt("case %d: block %d scale %.3f, want 1", k, b, pe.scale));
                ok = false;
            }
            if (pe.bbox.x < -1e-9 || pe.bbox.y < -1e-9 || pe.bbox.x2() > tc.W + 1e-9 ||
                pe.bbox.y2() > tc.H + 1e-9) {
                res.fail(fmt("case %d: block %d leaves the canvas", k, b));
                ok = false;
            }
        }
        for (int a = 0; a < tc.nb && ok; ++a)
            for (int b = a + 1; b < tc.nb; ++b)
                if (toy_gap(got[a], got[b]) < tc.gap) {
                    res.fail(fmt("case %d: pair (%d,%d) gap %.6f < %.0f", k, a, b,
                                 toy_gap(got[a], got[b]), tc.gap));
                    ok = false;
                }
        if (!ok) continue;

        double closed = toy_ratio(got, tc.nb);
        if (std::fabs(closed - sol.ink_ratio) > kRatioCrossTol) {
            res.fail(fmt("case %d: reported ratio %.9f != closed form %.9f", k, sol.ink_ratio,
                         closed));
            continue;
        }
        double best = toy_oracle_best(tc);
        if (best < 0) {
            res.fail(fmt("case %d: oracle found no feasible placement", k));
            continue;
        }
        worst_slack = std::max(worst_slack, best - sol.ink_ratio);
        if (sol.ink_ratio < best - kPackingSlack)
            res.fail(fmt("case %d: grid %.6f vs exhaustive %.6f (slack %.4f)", k, sol.ink_ratio,
                         best, best - sol.ink_ratio));
        else
            ++solved;
    }
    res.summary = fmt("%d/50 toy instances within %.2f of the 1px optimum (worst slack %.4f)",
                      solved, kPackingSlack, worst_slack);
    return res;
}

// ---------------------------------------------------------------------------
// 6. Perturbation law: shifting every predicted leaf by delta moves the
//    position metric by exactly -delta and nothing else.

Result crit_perturbation() {
    Result res;
    // heterogeneous leaves, far apart, so identity matching stays optimal
    const char* svg =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\">"
        "<rect x=\"50\" y=\"60\" width=\"120\" height=\"80\" fill=\"#e63946\"/>"
        "<rect x=\"700\" y=\"80\" width=\"60\" height=\"40\" fill=\"#457b9d\"/>"
        "<circle cx=\"150\" cy=\"700\" r=\"60\" fill=\"#2a9d8f\"/>"
        "<line x1=\"500\" y1=\"900\" x2=\"800\" y2=\"900\" stroke=\"#264653\" stroke-width=\"4\"/>"
        "<text x=\"420\" y=\"420\" font-size=\"28\" fill=\"#1d3557\">Quarterly output</text>"
        "<text x=\"80\" y=\"320\" font-size=\"14\" fill=\"#6d597a\">melt</text>"
        "</svg>";
    SvgDocument doc = parse_svg(svg);
    if (doc.leaves.size() != 6) {
        res.fail(fmt("fixture parses to %zu leaves, want 6", doc.leaves.size()));
        return res;
    }
    Matching m0 = match_elements(doc, doc);
    double pos0 = metric_position(doc, doc, m0);
    if (pos0 != 1.0) res.fail(fmt("self position metric is %.17g, want 1", pos0));
    double base[5] = {metric_area(doc, doc, m0), metric_text(doc, doc, m0),
                      metric_image(doc, doc, m0), metric_color(doc, doc, m0),
                      metric_size(doc, doc, m0)};
    const char* names[5] = {"area", "text", "image", "color", "size"};

    for (double delta : {0.05, 0.1, 0.2}) {
        SvgDocument pr = doc;
        for (SvgLeaf& l : pr.leaves) {
            l.cx += delta;
            l.cy += delta;
        }
        Matching m = match_elements(doc, pr);
        bool identity = true;
        for (std::size_t i = 0; i < doc.leaves.size(); ++i)
            if (m.gt_matched[i] != static_cast<int>(i)) identity = false;
        if (!identity) {
            res.fail(fmt("delta %.2f: matching is not the identity", delta));
            continue;
        }
        double pos = metric_position(doc, pr, m);
        if (std::fabs((pos0 - pos) - delta) > kPerturbTol)
            res.fail(fmt("delta %.2f: position moved by %.17g", delta, pos0 - pos));
        double after[5] = {metric_area(doc, pr, m), metric_text(doc, pr, m),
                           metric_image(doc, pr, m), metric_color(doc, pr, m),
                           metric_size(doc, pr, m)};
        for (int j = 0; j < 5; ++j)
            if (after[j] != base[j])
                res.fail(fmt("delta %.2f: %s changed from %.17g to %.17g", delta, names[j],
                             base[j], after[j]));
    }
    res.summary = "deltas 0.05/0.10/0.20 move position by -delta, five metrics bit-stable";
    return res;
}

// ---------------------------------------------------------------------------
// 7. QA soundness against an independent in-test oracle.

std::string acc_style_name(const std::string& axis) {
    if (axis.empty()) return "plain";
    if (axis == "bar_corner") return "rounded corners";
    if (axis == "value_label_position") return "value labels on marks";
    if (axis == "icon_placement") return "icons on marks";
    if (axis == "outline_style") return "outlined marks";
    if (axis == "orientation_flourish") return "rotated orientation";
    return axis;
}

std::string acc_type_name(const std::string& raw) {
    bool snake = raw.find('_') != std::string::npos;
    if (!snake) {
        snake = true;
        for (char c : raw)
            if (c >= 'A' && c <= 'Z') snake = false; // mixed case: already a display name
    }
    if (!snake) return raw;
    std::string out;
    bool up = true;
    for (char c : raw) {
        if (c == '_' || c == ' ') {
            out += ' ';
            up = true;
        } else {
            out += up ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
            up = false;
        }
    }
    return out + " Chart";
}

QAAnswer acc_oracle(const QAInstance& inst, const DataTable& t) {
    auto cats = [&](int c) -> const std::vector<std::string>& {
        return t.columns[static_cast<std::size_t>(c)].values;
    };
    auto nums = [&](int c) -> const std::vector<double>& {
        return t.columns[static_cast<std::size_t>(c)].numbers;
    };
    auto text = [](std::string s) {
        QAAnswer a;
        a.text = std::move(s);
        return a;
    };
    auto numeric = [](double v) {
        QAAnswer a;
        a.number = v;
        a.numeric = true;
        a.text = "?"; // the text rendering is the library's concern
        return a;
    };

    if (inst.op == "closest") {
        const auto& v = nums(inst.value_col);
        std::size_t best = 0;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (std::fabs(v[i] - inst.target) < std::fabs(v[best] - inst.target)) best = i;
        return text(cats(inst.cat_col)[best]);
    }
    if (inst.op == "lookup" || inst.op == "cond_sum") {
        double sum = 0;
        const auto& v = nums(inst.value_col);
        const auto& c = cats(inst.cat_col);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (c[i] == inst.cat_a) sum += v[i];
        return numeric(sum);
    }
    if (inst.op == "range_diff") {
        const auto& v = nums(inst.value_col);
        double lo = v[0], hi = v[0];
        for (double x : v) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        return numeric(hi - lo);
    }
    if (inst.op == "consistent_less") {
        const auto& v = nums(inst.value_col);
        const auto& ser = cats(inst.cat_col);
        const auto& x = cats(inst.x_col);
        std::map<std::string, std::pair<double, double>> sums;
        std::map<std::string, std::pair<bool, bool>> seen;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (ser[i] == inst.cat_a) {
                sums[x[i]].first += v[i];
                seen[x[i]].first = true;
            } else if (ser[i] == inst.cat_b) {
                sums[x[i]].second += v[i];
                seen[x[i]].second = true;
            }
        }
        bool any = false, all = true;
        for (const auto& [key, have] : seen) {
            if (!have.first || !have.second) continue;
            any = true;
            if (!(sums[key].first < sums[key].second)) all = false;
        }
        return text(any && all ? "Yes" : "No");
    }
    if (inst.op == "pair_greater") {
        double a = 0, b = 0;
        const auto& v = nums(inst.value_col);
        const auto& c = cats(inst.cat_col);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (c[i] == inst.cat_a) a += v[i];
            if (c[i] == inst.cat_b) b += v[i];
        }
        return text(a > b ? "Yes" : "No");
    }
    if (inst.op == "style_axis") return text(acc_style_name(inst.style_pick));
    if (inst.op == "encoding_channel")
        return text(inst.bound_name.empty() ? "None" : inst.bound_name);
    if (inst.op == "chart_type") return text(acc_type_name(inst.chart_type));
    return text("<unknown op>");
}

GroundTruthMetadata acc_meta(const DataTable& t, const std::string& type, Rng r) {
    GroundTruthMetadata m;
    m.chart_type = type;
    m.variation_id = "acc-var";
    m.template_id = "acc-tmpl";
    m.bindings = default_bindings(t, type);
    static const char* axes[] = {"bar_corner", "value_label_position", "icon_placement",
                                 "outline_style", "orientation_flourish"};
    std::size_t na = r.next_index(3), start = r.next_index(5);
    for (std::size_t k = 0; k < na; ++k) m.style_axes.push_back(axes[(start + k) % 5]);
    if (!t.columns.empty() && r.next_index(2) == 0) m.color_binding = t.columns[0].name;
    if (m.bindings.category_col >= 0 && r.next_index(2) == 0)
        m.icon_map.push_back(
            {t.columns[static_cast<std::size_t>(m.bindings.category_col)].values.front(),
             "glyph-0"});
    return m;
}

Result crit_qa_soundness() {
    Result res;
    const std::vector<std::vector<std::string>> types_by_sig = {
        {"Vertical Bar Chart", "Pie Chart", "Lollipop Chart", "Horizontal Bar Chart",
         "Donut Chart"},
        {"Vertical Stacked Bar Chart", "Vertical Grouped Bar Chart"},
        {"Line Graph", "Spline Graph", "Area Chart"},
        {"Stacked Area Chart", "Line Graph"},
        {"Scatterplot", "Bubble Chart"},
        {"Waffle Chart"},
    };
    Rng root(60601);
    std::size_t total = 0, agree = 0, scored = 0;
    std::map<QAKind, std::size_t> per_kind;

    for (int round = 0; total < 10000; ++round) {
        Rng r = root.child(static_cast<std::uint64_t>(round));
        for (int sig = 0; sig < kSigCount && total < 10000; ++sig) {
            Rng sr = r.child(static_cast<std::uint64_t>(sig));
            DataTable table = make_table(sig, sr.child("table"));
            const auto& pool = types_by_sig[static_cast<std::size_t>(sig)];
            GroundTruthMetadata meta =
                acc_meta(table, pool[sr.next_index(pool.size())], sr.child("meta"));
            std::vector<QAPair> pairs;
            try {
                pairs = generate_qa(table, meta, supported_kinds(table, meta), sr.child("qa"));
            } catch (const Error& e) {
                res.fail(fmt("round %d sig %d: %s", round, sig, e.what()));
                continue;
            }
            for (const QAPair& p : pairs) {
                ++total;
                ++per_kind[p.kind];
                QAAnswer want = acc_oracle(p.inst, table);
                bool match = p.answer.numeric == want.numeric &&
                             (want.numeric ? p.answer.number == want.number
                                           : p.answer.text == want.text);
                if (!match)
                    res.fail(fmt("%s/%s: stored '%s' vs oracle '%s'", qa_kind_name(p.kind),
                                 p.inst.op.c_str(), p.answer.text.c_str(), want.text.c_str()));
                else
                    ++agree;
                if (p.answer_mode == AnswerMode::MultipleChoice &&
                    std::find(p.choices.begin(), p.choices.end(), p.answer.text) ==
                        p.choices.end())
                    res.fail(fmt("%s: answer '%s' missing from choices", qa_kind_name(p.kind),
                                 p.answer.text.c_str()));
                if (score_qa(p, p.answer.text) != 1.0)
                    res.fail(fmt("%s/%s: gold answer '%s' does not score 1",
                                 qa_kind_name(p.kind), p.inst.op.c_str(),
                                 p.answer.text.c_str()));
                else
                    ++scored;
            }
        }
    }
    std::string kinds;
    for (QAKind k : all_qa_kinds()) kinds += fmt(" %s:%zu", qa_kind_name(k), per_kind[k]);
    res.summary = fmt("%zu pairs, %zu oracle-exact, %zu gold self-scores of 1;%s", total, agree,
                      scored, kinds.c_str());
    return res;
}

// ---------------------------------------------------------------------------
// 8. Adaptive sampler balance.

Result crit_sampler_balance() {
    Result res;
    const Registry& reg = Registry::builtin();
    const ChartType* type = reg.find("Vertical Bar Chart");
    if (!type) {
        res.fail("'Vertical Bar Chart' missing from registry");
        return res;
    }
    SamplerState state(99);
    std::map<std::string, std::size_t> counts;
    for (int i = 0; i < 1000; ++i) counts[sample_variation(*type, reg, state)->id]++;

    std::size_t expected = reg.variations_of(type->name).size();
    if (counts.size() != expected)
        res.fail(fmt("%zu variations drawn, catalog has %zu", counts.size(), expected));
    std::size_t lo = SIZE_MAX, hi = 0;
    for (const auto& [id, c] : counts) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    double ratio = lo ? static_cast<double>(hi) / static_cast<double>(lo) : 1e18;
    if (ratio > kSamplerMaxRatio)
        res.fail(fmt("max/min draw ratio %.3f exceeds %.1f", ratio, kSamplerMaxRatio));
    res.summary = fmt("1000 draws over %zu variations, max/min ratio %.3f", counts.size(), ratio);
    return res;
}

// ---------------------------------------------------------------------------
// 9. Batch determinism: two n=500 runs are byte-identical.

Result crit_determinism(const fs::path& pool, const fs::path& out_a, const fs::path& out_b) {
    Result res;
    GenerateConfig cfg;
    cfg.inputs = {pool.string()};
    cfg.seed = 424242;
    cfg.with_qa = true;
    cfg.jobs = 4;

    GenerateConfig a = cfg, b = cfg;
    a.out_dir = out_a.string();
    b.out_dir = out_b.string();
    if (cmd_batch(a, 500) != 0 || cmd_batch(b, 500) != 0) {
        res.fail("a batch run reported total failure");
        return res;
    }
    std::string ma = read_file((out_a / "manifest.json").string());
    std::string mb = read_file((out_b / "manifest.json").string());
    if (ma != mb) res.fail("manifests differ between runs");

    Manifest man = Manifest::from_json_string(ma);
    std::size_t mismatched = 0;
    for (const auto& rec : man.records) {
        auto differs = [&](const std::string& rel) {
            return read_file((out_a / rel).string()) != read_file((out_b / rel).string());
        };
        if (differs(rec.svg_path) || differs(rec.metadata_path) ||
            differs(rec.id + ".qa.jsonl"))
            ++mismatched;
    }
    if (mismatched)
        res.fail(fmt("%zu/%zu charts have differing bytes", mismatched, man.records.size()));
    res.summary = fmt("%zu records + %zu failures, all SVG/metadata/QA bytes identical",
                      man.records.size(), man.failures.size());
    return res;
}

// ---------------------------------------------------------------------------
// 10. Desk-scale corpus: 5000 charts, coverage and stats.

Result crit_corpus(const fs::path& pool, const fs::path& out_dir) {
    Result res;
    GenerateConfig cfg;
    cfg.inputs = {pool.string()};
    cfg.out_dir = out_dir.string();
    cfg.seed = 20260815;
    cfg.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const int n = 5000;
    if (cmd_batch(cfg, n) != 0) {
        res.fail("batch returned nonzero");
        return res;
    }
    Manifest man = Manifest::from_json_string(read_file((out_dir / "manifest.json").string()));
    double success = static_cast<double>(man.records.size()) / n;
    if (success < kMinBatchSuccess)
        res.fail(fmt("success rate %.4f below %.2f (%zu failures)", success, kMinBatchSuccess,
                     man.failures.size()));

    std::set<std::string> types, templates;
    for (const auto& rec : man.records) {
        types.insert(rec.chart_type);
        templates.insert(rec.template_id);
    }
    for (const char* want : kRenderedTypes)
        if (!types.count(want)) res.fail(fmt("'%s' never produced", want));
    if (templates.size() < 10)
        res.fail(fmt("only %zu templates used, want >= 10", templates.size()));

    fs::path stats_path = out_dir / "stats.json";
    if (cmd_stats((out_dir / "manifest.json").string(), stats_path.string()) != 0) {
        res.fail("cmd_stats returned nonzero");
        return res;
    }
    nlohmann::json stats = nlohmann::json::parse(read_file(stats_path.string()));
    for (const char* section : {"chart_types", "variations", "templates"}) {
        double sum = 0;
        for (const auto& [name, entry] : stats[section].items())
            sum += entry["pct"].get<double>();
        if (std::fabs(sum - 100.0) > kStatsSumTol)
            res.fail(fmt("%s percentages sum to %.9f", section, sum));
    }
    res.summary = fmt("%zu/%d charts, %zu types, %zu templates, stats sum to 100",
                      man.records.size(), n, types.size(), templates.size());
    return res;
}

} // namespace

int main() {
    fs::path root = fs::temp_directory_path() / ("cf_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);
    fs::path pool = root / "tables";
    write_acceptance_pool(pool);

    struct Check {
        int num;
        const char* title;
        double limit; // seconds, 0 = none
        std::function<Result()> fn;
    };
    const Check checks[] = {
        {1, "mapping-rule conformance", 1.0, crit_mapping_rules},
        {2, "self-evaluation identity", 120.0, crit_self_eval},
        {3, "assignment vs brute force", 60.0, crit_assignment_oracle},
        {4, "metric formula checks", 0.0, crit_metric_formulas},
        {5, "packing vs 1px oracle", 120.0, crit_packing_oracle},
        {6, "perturbation law", 0.0, crit_perturbation},
        {7, "QA soundness (10k pairs)", 120.0, crit_qa_soundness},
        {8, "sampler balance", 0.0, crit_sampler_balance},
        {9, "batch determinism (n=500)", 0.0,
         [&] { return crit_determinism(pool, root / "b1", root / "b2"); }},
        {10, "desk-scale corpus (n=5000)", 1800.0, [&] { return crit_corpus(pool, root / "big"); }},
    };

    bool all_pass = true;
    for (const Check& c : checks) {
        auto t0 = std::chrono::steady_clock::now();
        Result r;
        try {
            r = c.fn();
        } catch (const std::exception& e) {
            r.pass = false;
            r.errors.push_back(fmt("unhandled exception: %s", e.what()));
        }
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = c.limit <= 0 || sec < c.limit;
        bool ok = r.pass && in_time;
        all_pass = all_pass && ok;
        std::printf("[%2d] %s  %s: %s (%.2fs%s)\n", c.num, ok ? "PASS" : "FAIL", c.title,
                    r.summary.empty() ? "-" : r.summary.c_str(), sec,
                    c.limit > 0 ? fmt(", limit %.0fs", c.limit).c_str() : "");
        if (!in_time) std::printf("      - exceeded the %.0fs budget\n", c.limit);
        for (const std::string& e : r.errors) std::printf("      - %s\n", e.c_str());
        std::fflush(stdout);
    }

    fs::remove_all(root);
    std::printf("%s\n", all_pass ? "acceptance: all checks passed"
                                 : "acceptance: FAILURES PRESENT");
    return all_pass ? 0 : 1;
}
