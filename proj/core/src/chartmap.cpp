#include "foundry/chartmap.hpp"

#include <algorithm>
#include <charconv>

#include <nlohmann/json.hpp>

#include "foundry/errors.hpp"

namespace foundry {

using nlohmann::json;

// Defined in registry_data.cpp.
const char* builtin_registry_json();
const char* builtin_variations_json();

std::string SignaturePattern::to_string() const {
    std::string out;
    auto add = [&](char tag, int n) {
        if (n <= 0) return;
        if (!out.empty()) out += '+';
        out += tag;
        out += std::to_string(n);
    };
    add('C', categorical);
    add('N', numeric);
    add('T', temporal);
    if (first_categorical_distinct) out += '*';
    return out;
}

SignaturePattern parse_signature_pattern(const std::string& text) {
    SignaturePattern p;
    std::size_t i = 0;
    const std::string& s = text;
    auto fail = [&] {
        throw Error(ErrorCode::MalformedInput, "chartmap",
                    "bad signature pattern '" + text + "'");
    };
    while (i < s.size()) {
        char tag = s[i];
        if (tag == '*') {
            p.first_categorical_distinct = 2;
            ++i;
            continue;
        }
        if (tag == '+') {
            ++i;
            continue;
        }
        ++i;
        int n = 0;
        auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), n);
        if (ec != std::errc() || n <= 0) fail();
        i = static_cast<std::size_t>(ptr - s.data());
        switch (tag) {
            case 'C': p.categorical = n; break;
            case 'N': p.numeric = n; break;
            case 'T': p.temporal = n; break;
            default: fail();
        }
    }
    if (p.categorical + p.numeric + p.temporal == 0) fail();
    return p;
}

Registry Registry::from_json(const std::string& registry_json,
                             const std::string& variations_json) {
    json j = json::parse(registry_json, nullptr, false);
    if (j.is_discarded() || !j.is_array())
        throw Error(ErrorCode::MalformedInput, "chartmap", "registry JSON must be an array");
    Registry reg;
    for (const auto& row : j) {
        ChartType t;
        t.name = row.at("type").get<std::string>();
        t.rendered = row.value("rendered", false);
        std::optional<std::size_t> constraint;
        if (row.contains("constraints") && row["constraints"].is_string()) {
            std::string c = row["constraints"].get<std::string>();
            if (c == "first_categorical=2") constraint = 2;
            else if (!c.empty())
                throw Error(ErrorCode::MalformedInput, "chartmap",
                            "unknown constraint '" + c + "'");
        }
        for (const auto& sig : row.at("signatures")) {
            SignaturePattern p = parse_signature_pattern(sig.get<std::string>());
            if (constraint && p.categorical > 0) p.first_categorical_distinct = constraint;
            t.accepted_signatures.push_back(p);
        }
        reg.types_.push_back(std::move(t));
    }
    if (!variations_json.empty()) {
        json jv = json::parse(variations_json, nullptr, false);
        if (jv.is_discarded() || !jv.is_array())
            throw Error(ErrorCode::MalformedInput, "chartmap", "variation JSON must be an array");
        for (const auto& row : jv) {
            ChartVariation v;
            v.id = row.at("id").get<std::string>();
            v.parent = row.at("parent").get<std::string>();
            if (row.contains("axes"))
                for (const auto& a : row["axes"]) v.style_axes.push_back(a.get<std::string>());
            if (!reg.find(v.parent))
                throw Error(ErrorCode::MalformedInput, "chartmap",
                            "variation parent '" + v.parent + "' not in registry");
            reg.variations_.push_back(std::move(v));
        }
    }
    return reg;
}

const Registry& Registry::builtin() {
    static const Registry reg =
        Registry::from_json(builtin_registry_json(), builtin_variations_json());
    return reg;
}

const ChartType* Registry::find(const std::string& name) const {
    for (const auto& t : types_)
        if (t.name == name) return &t;
    return nullptr;
}

std::vector<const ChartVariation*> Registry::variations_of(const std::string& type_name) const {
    std::vector<const ChartVariation*> out;
    for (const auto& v : variations_)
        if (v.parent == type_name) out.push_back(&v);
    return out;
}

std::vector<const ChartType*> candidate_chart_types(const AttributeSignature& sig,
                                                    const Registry& registry) {
    std::vector<const ChartType*> out;
    for (const auto& t : registry.types()) {
        for (const auto& p : t.accepted_signatures) {
            if (p.matches(sig)) {
                out.push_back(&t);
                break;
            }
        }
    }
    if (out.empty())
        throw Error(ErrorCode::NoCompatibleChart, "chartmap",
                    "no chart type accepts signature " + sig.to_string());
    return out;
}

namespace {

bool name_contains(const std::string& name, const char* needle) {
    return name.find(needle) != std::string::npos;
}

struct StatsView {
    std::size_t first_categorical_distinct = 0;
    std::size_t max_temporal_distinct = 0;
    std::size_t second_numeric_distinct = 0;
    bool has_temporal = false;
    bool has_second_numeric = false;
};

StatsView view_of(const TableStats& stats) {
    StatsView v;
    int numerics = 0;
    bool saw_cat = false;
    for (const auto& c : stats.columns) {
        switch (c.kind) {
            case AttributeKind::Categorical:
                if (!saw_cat) {
                    v.first_categorical_distinct = c.distinct_count;
                    saw_cat = true;
                }
                break;
            case AttributeKind::Numeric:
                ++numerics;
                if (numerics == 2) {
                    v.second_numeric_distinct = c.distinct_count;
                    v.has_second_numeric = true;
                }
                break;
            case AttributeKind::Temporal:
                v.has_temporal = true;
                v.max_temporal_distinct = std::max(v.max_temporal_distinct, c.distinct_count);
                break;
        }
    }
    return v;
}

} // namespace

int chart_type_rule_score(const ChartType& type, const TableStats& stats) {
    StatsView v = view_of(stats);
    const std::string& n = type.name;
    int score = 0;

    bool radial_part_of_whole = name_contains(n, "Pie Chart") || name_contains(n, "Donut Chart") ||
                                name_contains(n, "Rose Chart");
    if (radial_part_of_whole && v.first_categorical_distinct > 8) score -= 100;

    bool vertical_bar = name_contains(n, "Vertical") && name_contains(n, "Bar Chart");
    bool horizontal_bar = name_contains(n, "Horizontal") && name_contains(n, "Bar Chart");
    if (v.first_categorical_distinct > 15) {
        if (vertical_bar) score -= 1;
        if (horizontal_bar) score += 1;
    }

    bool line_or_area = name_contains(n, "Line Graph") || name_contains(n, "Spline Graph") ||
                        name_contains(n, "Area Chart");
    bool temporal_bar = n == "Histogram";
    if (v.has_temporal && v.max_temporal_distinct >= 8) {
        if (line_or_area) score += 1;
        if (temporal_bar) score -= 1;
    }

    if (v.has_second_numeric && v.second_numeric_distinct < 3) {
        if (n == "Scatterplot") score += 1;
        if (n == "Bubble Chart") score -= 1;
    }
    return score;
}

const ChartType* select_chart_type(const std::vector<const ChartType*>& candidates,
                                   const TableStats& stats, std::uint64_t seed) {
    std::vector<const ChartType*> rendered;
    for (const ChartType* t : candidates)
        if (t->rendered) rendered.push_back(t);
    if (rendered.empty())
        throw Error(ErrorCode::NoRenderedCandidate, "chartmap",
                    "no rendered chart type among " + std::to_string(candidates.size()) +
                        " candidates");
    if (rendered.size() == 1) return rendered.front();

    // 16 jitter levels stay strictly below one rule-score step, so seeded
    // preference never overrides a rule decision, only spreads exact ties.
    const ChartType* best = nullptr;
    int best_score = 0;
    int best_jitter = 0;
    for (const ChartType* t : rendered) {
        int score = chart_type_rule_score(*t, stats);
        int jitter = static_cast<int>(Rng(seed).child(t->name).next_index(16));
        if (!best || score > best_score ||
            (score == best_score && jitter > best_jitter) ||
            (score == best_score && jitter == best_jitter && t->name < best->name)) {
            best = t;
            best_score = score;
            best_jitter = jitter;
        }
    }
    return best;
}

const ChartVariation* sample_variation(const ChartType& type, const Registry& registry,
                                       SamplerState& state) {
    auto vars = registry.variations_of(type.name);
    if (vars.empty())
        throw Error(ErrorCode::UnsupportedChartType, "chartmap",
                    "no variations for '" + type.name + "'");
    std::vector<double> weights;
    weights.reserve(vars.size());
    for (const auto* v : vars) {
        auto it = state.usage_count.find(v->id);
        std::uint64_t count = it != state.usage_count.end() ? it->second : 0;
        weights.push_back(1.0 / (1.0 + static_cast<double>(count)));
    }
    const ChartVariation* drawn = vars[state.rng.next_weighted(weights)];
    ++state.usage_count[drawn->id];
    return drawn;
}

} // namespace foundry
