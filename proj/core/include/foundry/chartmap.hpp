#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "foundry/rng.hpp"
#include "foundry/tabular.hpp"

namespace foundry {

/// One accepted attribute-combination pattern, e.g. C2+N1 with an optional
/// first-categorical cardinality constraint.
struct SignaturePattern {
    int categorical = 0;
    int numeric = 0;
    int temporal = 0;
    std::optional<std::size_t> first_categorical_distinct;

    bool matches(const AttributeSignature& sig) const {
        if (sig.categorical != categorical || sig.numeric != numeric ||
            sig.temporal != temporal)
            return false;
        if (first_categorical_distinct) {
            if (sig.categorical_cardinalities.empty()) return false;
            if (sig.categorical_cardinalities.front() != *first_categorical_distinct) return false;
        }
        return true;
    }

    std::string to_string() const;
};

SignaturePattern parse_signature_pattern(const std::string& text);

struct ChartType {
    std::string name;
    std::vector<SignaturePattern> accepted_signatures;
    bool rendered = false;
};

struct ChartVariation {
    std::string id;
    std::string parent; // ChartType name
    std::vector<std::string> style_axes;
};

class Registry {
public:
    /// Built-in registry mirroring the full 75-type rule table plus the
    /// variation catalog for the rendered subset.
    static const Registry& builtin();

    /// Load from the registry JSON format:
    /// [{"type","signatures":[...],"constraints","rendered"}]
    static Registry from_json(const std::string& registry_json,
                              const std::string& variations_json = "");

    const std::vector<ChartType>& types() const { return types_; }
    const ChartType* find(const std::string& name) const;
    const std::vector<ChartVariation>& variations() const { return variations_; }
    std::vector<const ChartVariation*> variations_of(const std::string& type_name) const;

private:
    std::vector<ChartType> types_;
    std::vector<ChartVariation> variations_;
};

/// All registry types whose rule patterns match the signature, in registry
/// (rule-table) order. Throws NoCompatibleChart when empty.
std::vector<const ChartType*> candidate_chart_types(const AttributeSignature& sig,
                                                    const Registry& registry);

/// Deterministic data-chart compatibility selection over the rendered subset.
///
/// Each candidate receives an integer rule score (pie/donut/rose penalized
/// above 8 categories, vertical bars penalized above 15 with horizontal
/// preferred, line/area preferred over bars at >= 8 temporal points,
/// scatterplot preferred over bubble when the second numeric column has < 3
/// distinct values) plus a seeded preference jitter strictly below one rule
/// step, quantized to 16 levels. Highest total wins; full ties fall back to
/// the lexicographically smallest type name. Throws NoRenderedCandidate when
/// no candidate is in the rendered subset.
const ChartType* select_chart_type(const std::vector<const ChartType*>& candidates,
                                   const TableStats& stats, std::uint64_t seed);

/// Rule score component only (no jitter); exposed for tests.
int chart_type_rule_score(const ChartType& type, const TableStats& stats);

struct SamplerState {
    std::map<std::string, std::uint64_t> usage_count; // per variation id
    Rng rng;

    explicit SamplerState(std::uint64_t seed) : rng(seed) {}
};

/// Adaptive variation draw: P(v) proportional to 1/(1 + usage_count(v)).
/// Increments the drawn variation's count.
const ChartVariation* sample_variation(const ChartType& type, const Registry& registry,
                                       SamplerState& state);

} // namespace foundry
