#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace foundry {

enum class AttributeKind { Categorical, Numeric, Temporal };

const char* attribute_kind_name(AttributeKind k);
std::optional<AttributeKind> attribute_kind_from_name(std::string_view name);

struct Column {
    std::string name;
    AttributeKind kind = AttributeKind::Categorical;
    std::vector<std::string> values;   // raw cell text
    std::vector<double> numbers;       // parsed values (Numeric/Temporal), aligned with values
    std::string unit;                  // stripped "%" or currency symbol, if any
    std::size_t distinct_count = 0;
};

struct DataTable {
    std::string topic;
    std::vector<Column> columns;
    std::size_t row_count = 0;

    const Column* find_column(std::string_view name) const;
};

/// Multiset of attribute kinds plus per-kind distinct cardinalities
/// (in column order). Invariant under column reordering by construction:
/// cardinality lists follow the canonical kind grouping.
struct AttributeSignature {
    int categorical = 0;
    int numeric = 0;
    int temporal = 0;
    std::vector<std::size_t> categorical_cardinalities; // column order within kind
    std::vector<std::size_t> numeric_cardinalities;
    std::vector<std::size_t> temporal_cardinalities;

    std::string to_string() const; // e.g. "C2+N1"
    bool operator==(const AttributeSignature&) const = default;
};

struct ColumnStats {
    std::string name;
    AttributeKind kind;
    std::size_t distinct_count = 0;
    double min = 0.0;   // Numeric/Temporal only
    double max = 0.0;
    double mean = 0.0;
};

struct TableStats {
    std::size_t row_count = 0;
    std::vector<ColumnStats> columns;
};

inline constexpr std::size_t kMaxRows = 10000;

/// Classify raw cell text: Temporal if every value matches a temporal
/// pattern (4-digit year, ISO date, Mon-YYYY), else Numeric if every value
/// parses as a finite real after unit stripping, else Categorical.
AttributeKind classify_attribute(const std::vector<std::string>& values);

/// True when the text matches one of the temporal patterns.
bool is_temporal_value(std::string_view text);

/// Parse a numeric cell, stripping a leading currency symbol ($ € £ ¥) or a
/// trailing "%" and recording it in unit_out when given.
std::optional<double> parse_numeric_cell(std::string_view text, std::string* unit_out = nullptr);

/// Days-since-epoch style ordinal for a temporal cell, used for ordering.
double temporal_ordinal(std::string_view text);

/// Load a table from CSV (RFC 4180) or JSON; the format is sniffed from the
/// leading non-space byte. Throws Error with MalformedInput / EmptyTable /
/// RaggedRows.
DataTable load_table_text(const std::string& text, const std::string& topic_fallback = "");
DataTable load_table_file(const std::string& path);

/// Canonical JSON serialization; parsing it back yields an identical table.
std::string serialize_table(const DataTable& table);

AttributeSignature signature_of(const DataTable& table);
TableStats table_stats(const DataTable& table);

} // namespace foundry
