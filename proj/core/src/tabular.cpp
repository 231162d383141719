#include "foundry/tabular.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "foundry/errors.hpp"

namespace foundry {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

constexpr std::array<std::string_view, 12> kMonths = {
    "jan", "feb", "mar", "apr", "may", "jun",
    "jul", "aug", "sep", "oct", "nov", "dec",
};

int month_index(std::string_view tok) {
    if (tok.size() < 3) return -1;
    std::string head;
    for (std::size_t i = 0; i < 3; ++i)
        head += static_cast<char>(std::tolower(static_cast<unsigned char>(tok[i])));
    for (std::size_t m = 0; m < kMonths.size(); ++m)
        if (head == kMonths[m]) return static_cast<int>(m);
    return -1;
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
    });
}

bool parse_int(std::string_view s, int& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

// Year in [1000, 2999].
bool is_year(std::string_view s, int* year_out = nullptr) {
    if (s.size() != 4 || !all_digits(s)) return false;
    int y = 0;
    parse_int(s, y);
    if (y < 1000 || y > 2999) return false;
    if (year_out) *year_out = y;
    return true;
}

bool is_iso_date(std::string_view s, int* y = nullptr, int* m = nullptr, int* d = nullptr) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    std::string_view ys = s.substr(0, 4), ms = s.substr(5, 2), ds = s.substr(8, 2);
    if (!all_digits(ys) || !all_digits(ms) || !all_digits(ds)) return false;
    int yy = 0, mm = 0, dd = 0;
    parse_int(ys, yy);
    parse_int(ms, mm);
    parse_int(ds, dd);
    if (mm < 1 || mm > 12 || dd < 1 || dd > 31) return false;
    if (y) *y = yy;
    if (m) *m = mm;
    if (d) *d = dd;
    return true;
}

// "Mar-2021" or "Mar 2021", month name abbreviated or full.
bool is_month_year(std::string_view s, int* y = nullptr, int* m = nullptr) {
    auto sep = s.find_first_of("- ");
    if (sep == std::string_view::npos) return false;
    std::string_view mon = s.substr(0, sep);
    std::string_view year = s.substr(sep + 1);
    int mi = month_index(mon);
    if (mi < 0) return false;
    // Accept full month names by checking the prefix only; reject junk like "Janx".
    static constexpr std::array<std::string_view, 12> full = {
        "january", "february", "march", "april", "may", "june",
        "july", "august", "september", "october", "november", "december",
    };
    std::string lower_mon;
    for (char c : mon) lower_mon += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower_mon != kMonths[static_cast<std::size_t>(mi)] &&
        lower_mon != full[static_cast<std::size_t>(mi)])
        return false;
    int yy = 0;
    if (!is_year(year, &yy)) return false;
    if (y) *y = yy;
    if (m) *m = mi + 1;
    return true;
}

long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    long era = (y >= 0 ? y : y - 399) / 400;
    unsigned yoe = static_cast<unsigned>(y - era * 400);
    unsigned doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
    unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

constexpr std::string_view kCurrency = "$£¥€"; // $, £, ¥, €

// Strip one leading currency symbol; returns its UTF-8 text if present.
std::string strip_currency(std::string_view& s) {
    for (std::string_view sym : {std::string_view("$"), std::string_view("€"),
                                 std::string_view("£"), std::string_view("¥")}) {
        if (s.size() >= sym.size() && s.substr(0, sym.size()) == sym) {
            s.remove_prefix(sym.size());
            return std::string(sym);
        }
    }
    return "";
}

} // namespace

const char* attribute_kind_name(AttributeKind k) {
    switch (k) {
        case AttributeKind::Categorical: return "categorical";
        case AttributeKind::Numeric: return "numeric";
        case AttributeKind::Temporal: return "temporal";
    }
    return "categorical";
}

std::optional<AttributeKind> attribute_kind_from_name(std::string_view name) {
    if (name == "categorical") return AttributeKind::Categorical;
    if (name == "numeric") return AttributeKind::Numeric;
    if (name == "temporal") return AttributeKind::Temporal;
    return std::nullopt;
}

bool is_temporal_value(std::string_view text) {
    std::string_view s = trim(text);
    return is_year(s) || is_iso_date(s) || is_month_year(s);
}

std::optional<double> parse_numeric_cell(std::string_view text, std::string* unit_out) {
    std::string_view s = trim(text);
    if (s.empty()) return std::nullopt;
    std::string unit = strip_currency(s);
    if (!s.empty() && s.back() == '%') {
        if (unit.empty()) unit = "%";
        s.remove_suffix(1);
        s = trim(s);
    }
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    if (unit_out) *unit_out = unit;
    return v;
}

double temporal_ordinal(std::string_view text) {
    std::string_view s = trim(text);
    int y = 0, m = 0, d = 0;
    if (is_iso_date(s, &y, &m, &d)) return static_cast<double>(days_from_civil(y, m, d));
    if (is_month_year(s, &y, &m)) return static_cast<double>(days_from_civil(y, m, 1));
    if (is_year(s, &y)) return static_cast<double>(days_from_civil(y, 1, 1));
    return 0.0;
}

AttributeKind classify_attribute(const std::vector<std::string>& values) {
    bool all_temporal = !values.empty();
    for (const auto& v : values) {
        if (!is_temporal_value(v)) {
            all_temporal = false;
            break;
        }
    }
    if (all_temporal) return AttributeKind::Temporal;

    bool all_numeric = !values.empty();
    for (const auto& v : values) {
        if (!parse_numeric_cell(v)) {
            all_numeric = false;
            break;
        }
    }
    if (all_numeric) return AttributeKind::Numeric;
    return AttributeKind::Categorical;
}

const Column* DataTable::find_column(std::string_view name) const {
    for (const auto& c : columns)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

std::size_t count_distinct(const std::vector<std::string>& values) {
    std::set<std::string_view> seen(values.begin(), values.end());
    return seen.size();
}

// Fill kind-dependent derived fields of a column whose raw values are set.
void finalize_column(Column& col, bool kind_fixed) {
    for (const auto& v : col.values) {
        if (trim(v).empty())
            throw Error(ErrorCode::RaggedRows, "tabular",
                        "missing cell in column '" + col.name + "'");
    }
    if (!kind_fixed) col.kind = classify_attribute(col.values);
    col.distinct_count = count_distinct(col.values);
    col.numbers.clear();
    if (col.kind == AttributeKind::Numeric) {
        std::string unit;
        for (const auto& v : col.values) {
            std::string u;
            auto num = parse_numeric_cell(v, &u);
            if (!num)
                throw Error(ErrorCode::MalformedInput, "tabular",
                            "non-numeric cell '" + v + "' in numeric column '" + col.name + "'");
            if (!u.empty() && unit.empty()) unit = u;
            col.numbers.push_back(*num);
        }
        col.unit = unit;
    } else if (col.kind == AttributeKind::Temporal) {
        for (const auto& v : col.values) {
            if (!is_temporal_value(v))
                throw Error(ErrorCode::MalformedInput, "tabular",
                            "non-temporal cell '" + v + "' in temporal column '" + col.name + "'");
            col.numbers.push_back(temporal_ordinal(v));
        }
    }
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto end_field = [&] {
        row.push_back(field);
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
    };
    while (i < n) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < n && text[i + 1] == '"') {
                    field += '"';
                    i += 2;
                } else {
                    in_quotes = false;
                    ++i;
                }
            } else {
                field += c;
                ++i;
            }
        } else if (c == '"' && !field_started) {
            in_quotes = true;
            field_started = true;
            ++i;
        } else if (c == ',') {
            end_field();
            ++i;
        } else if (c == '\r') {
            if (i + 1 < n && text[i + 1] == '\n') ++i;
            end_row();
            ++i;
        } else if (c == '\n') {
            end_row();
            ++i;
        } else {
            field += c;
            field_started = true;
            ++i;
        }
    }
    if (in_quotes)
        throw Error(ErrorCode::MalformedInput, "tabular", "unterminated quoted CSV field");
    if (field_started || !row.empty()) end_row();
    return rows;
}

DataTable table_from_csv(const std::string& text, const std::string& topic_fallback) {
    auto rows = parse_csv(text);
    // Drop a trailing all-empty record produced by a final newline.
    while (!rows.empty() && rows.back().size() == 1 && trim(rows.back()[0]).empty())
        rows.pop_back();
    if (rows.empty())
        throw Error(ErrorCode::EmptyTable, "tabular", "no header row");
    const auto& header = rows.front();
    if (rows.size() == 1)
        throw Error(ErrorCode::EmptyTable, "tabular", "header-only table");
    if (rows.size() - 1 > kMaxRows)
        throw Error(ErrorCode::MalformedInput, "tabular",
                    "table exceeds " + std::to_string(kMaxRows) + " rows");

    DataTable t;
    t.topic = topic_fallback;
    t.row_count = rows.size() - 1;
    t.columns.resize(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        std::string name(trim(header[c]));
        if (name.empty())
            throw Error(ErrorCode::MalformedInput, "tabular", "empty column name in header");
        t.columns[c].name = name;
        t.columns[c].values.reserve(t.row_count);
    }
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != header.size())
            throw Error(ErrorCode::RaggedRows, "tabular",
                        "row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                            " cells, expected " + std::to_string(header.size()));
        for (std::size_t c = 0; c < header.size(); ++c)
            t.columns[c].values.push_back(std::string(trim(rows[r][c])));
    }
    for (auto& col : t.columns) finalize_column(col, false);
    return t;
}

DataTable table_from_json(const std::string& text, const std::string& topic_fallback) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw Error(ErrorCode::MalformedInput, "tabular", "invalid table JSON");
    if (!j.contains("columns") || !j["columns"].is_array())
        throw Error(ErrorCode::MalformedInput, "tabular", "table JSON missing 'columns' array");

    DataTable t;
    t.topic = j.value("topic", topic_fallback);
    std::size_t row_count = 0;
    bool first = true;
    for (const auto& jc : j["columns"]) {
        if (!jc.is_object() || !jc.contains("name") || !jc.contains("values") ||
            !jc["values"].is_array())
            throw Error(ErrorCode::MalformedInput, "tabular", "malformed column object");
        Column col;
        col.name = jc["name"].get<std::string>();
        for (const auto& v : jc["values"]) {
            if (v.is_string())
                col.values.push_back(v.get<std::string>());
            else if (v.is_number_integer())
                col.values.push_back(std::to_string(v.get<long long>()));
            else if (v.is_number()) {
                std::ostringstream os;
                os << v.get<double>();
                col.values.push_back(os.str());
            } else
                throw Error(ErrorCode::MalformedInput, "tabular",
                            "unsupported cell type in column '" + col.name + "'");
        }
        bool kind_fixed = false;
        if (jc.contains("kind")) {
            auto k = attribute_kind_from_name(jc["kind"].get<std::string>());
            if (!k)
                throw Error(ErrorCode::MalformedInput, "tabular",
                            "unknown kind '" + jc["kind"].get<std::string>() + "'");
            col.kind = *k;
            kind_fixed = true;
        }
        if (first) {
            row_count = col.values.size();
            first = false;
        } else if (col.values.size() != row_count) {
            throw Error(ErrorCode::RaggedRows, "tabular",
                        "column '" + col.name + "' length mismatch");
        }
        finalize_column(col, kind_fixed);
        t.columns.push_back(std::move(col));
    }
    if (t.columns.empty() || row_count == 0)
        throw Error(ErrorCode::EmptyTable, "tabular", "table has no data rows");
    if (row_count > kMaxRows)
        throw Error(ErrorCode::MalformedInput, "tabular",
                    "table exceeds " + std::to_string(kMaxRows) + " rows");
    t.row_count = row_count;
    return t;
}

} // namespace

DataTable load_table_text(const std::string& text, const std::string& topic_fallback) {
    std::string_view s = trim(text);
    if (s.empty()) throw Error(ErrorCode::EmptyTable, "tabular", "empty input");
    if (s.front() == '{') return table_from_json(text, topic_fallback);
    return table_from_csv(text, topic_fallback);
}

DataTable load_table_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "tabular", "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    // Topic falls back to the file stem.
    std::string stem = path;
    if (auto slash = stem.find_last_of("/\\"); slash != std::string::npos)
        stem = stem.substr(slash + 1);
    if (auto dot = stem.find_last_of('.'); dot != std::string::npos) stem = stem.substr(0, dot);
    return load_table_text(buf.str(), stem);
}

std::string serialize_table(const DataTable& table) {
    json j;
    j["topic"] = table.topic;
    j["columns"] = json::array();
    for (const auto& col : table.columns) {
        json jc;
        jc["name"] = col.name;
        jc["kind"] = attribute_kind_name(col.kind);
        jc["values"] = col.values;
        j["columns"].push_back(std::move(jc));
    }
    return j.dump(2) + "\n";
}

AttributeSignature signature_of(const DataTable& table) {
    AttributeSignature sig;
    for (const auto& col : table.columns) {
        switch (col.kind) {
            case AttributeKind::Categorical:
                ++sig.categorical;
                sig.categorical_cardinalities.push_back(col.distinct_count);
                break;
            case AttributeKind::Numeric:
                ++sig.numeric;
                sig.numeric_cardinalities.push_back(col.distinct_count);
                break;
            case AttributeKind::Temporal:
                ++sig.temporal;
                sig.temporal_cardinalities.push_back(col.distinct_count);
                break;
        }
    }
    return sig;
}

std::string AttributeSignature::to_string() const {
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
    return out.empty() ? "empty" : out;
}

TableStats table_stats(const DataTable& table) {
    TableStats st;
    st.row_count = table.row_count;
    for (const auto& col : table.columns) {
        ColumnStats cs;
        cs.name = col.name;
        cs.kind = col.kind;
        cs.distinct_count = col.distinct_count;
        if (!col.numbers.empty()) {
            cs.min = *std::min_element(col.numbers.begin(), col.numbers.end());
            cs.max = *std::max_element(col.numbers.begin(), col.numbers.end());
            double sum = 0.0;
            for (double v : col.numbers) sum += v;
            cs.mean = sum / static_cast<double>(col.numbers.size());
        }
        st.columns.push_back(std::move(cs));
    }
    return st;
}

} // namespace foundry
