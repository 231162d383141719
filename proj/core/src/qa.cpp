#include "foundry/qa.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>

#include "foundry/chartmap.hpp"
#include "foundry/errors.hpp"
#include "foundry/text_metrics.hpp"

#include <nlohmann/json.hpp>

namespace foundry {

using json = nlohmann::json;

const char* qa_kind_name(QAKind k) {
    switch (k) {
        case QAKind::DI: return "DI";
        case QAKind::DC: return "DC";
        case QAKind::DEC: return "DEC";
        case QAKind::FC: return "FC";
        case QAKind::SD: return "SD";
        case QAKind::VEA: return "VEA";
        case QAKind::CC: return "CC";
    }
    return "?";
}

std::optional<QAKind> qa_kind_from_name(std::string_view name) {
    for (QAKind k : all_qa_kinds())
        if (name == qa_kind_name(k)) return k;
    return std::nullopt;
}

std::vector<QAKind> all_qa_kinds() {
    return {QAKind::DI, QAKind::DC, QAKind::DEC, QAKind::FC,
            QAKind::SD, QAKind::VEA, QAKind::CC};
}

const char* answer_mode_name(AnswerMode m) {
    switch (m) {
        case AnswerMode::Numeric: return "numeric";
        case AnswerMode::Textual: return "textual";
        case AnswerMode::MultipleChoice: return "multiple_choice";
        case AnswerMode::YesNo: return "yes_no";
    }
    return "?";
}

std::optional<AnswerMode> answer_mode_from_name(std::string_view name) {
    for (AnswerMode m : {AnswerMode::Numeric, AnswerMode::Textual, AnswerMode::MultipleChoice,
                         AnswerMode::YesNo})
        if (name == answer_mode_name(m)) return m;
    return std::nullopt;
}

namespace {

// Shortest round-trip formatting so re-parsing the text yields the same double.
std::string format_number(double v) {
    if (std::fabs(v - std::llround(v)) < 1e-9 && std::fabs(v) < 1e15)
        return std::to_string(std::llround(v));
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

QAAnswer numeric_answer(double v) { return {format_number(v), v, true}; }
QAAnswer text_answer(std::string t) { return {std::move(t), 0, false}; }

const char* article_for(const std::string& word) {
    if (word.empty()) return "a";
    switch (std::tolower(static_cast<unsigned char>(word[0]))) {
    case 'a': case 'e': case 'i': case 'o': case 'u': return "an";
    default: return "a";
    }
}

} // namespace

std::string chart_type_display_name(const std::string& raw) {
    bool plainish = raw.find('_') != std::string::npos;
    if (!plainish) {
        plainish = true;
        for (char c : raw)
            if (c >= 'A' && c <= 'Z') plainish = false;
    }
    if (!plainish) return raw; // already a display name
    std::string out;
    bool cap = true;
    for (char c : raw) {
        if (c == '_' || c == ' ') {
            out += ' ';
            cap = true;
        } else {
            out += cap && c >= 'a' && c <= 'z' ? static_cast<char>(c - 32) : c;
            cap = false;
        }
    }
    return out + " Chart";
}

std::string style_axis_display_name(const std::string& axis) {
    if (axis.empty()) return "plain";
    if (axis == "bar_corner") return "rounded corners";
    if (axis == "value_label_position") return "value labels on marks";
    if (axis == "icon_placement") return "icons on marks";
    if (axis == "outline_style") return "outlined marks";
    if (axis == "orientation_flourish") return "rotated orientation";
    return axis;
}

QAAnswer answer_oracle(const QAInstance& inst, const DataTable& table) {
    auto cats = [&](int c) -> const std::vector<std::string>& {
        return table.columns[static_cast<std::size_t>(c)].values;
    };
    auto nums = [&](int c) -> const std::vector<double>& {
        return table.columns[static_cast<std::size_t>(c)].numbers;
    };

    if (inst.op == "closest") {
        const auto& v = nums(inst.value_col);
        std::size_t best = 0;
        for (std::size_t r = 1; r < v.size(); ++r)
            if (std::fabs(v[r] - inst.target) < std::fabs(v[best] - inst.target)) best = r;
        return text_answer(cats(inst.cat_col)[best]);
    }
    if (inst.op == "lookup" || inst.op == "cond_sum") {
        const auto& v = nums(inst.value_col);
        const auto& c = cats(inst.cat_col);
        double sum = 0;
        for (std::size_t r = 0; r < v.size(); ++r)
            if (c[r] == inst.cat_a) sum += v[r];
        return numeric_answer(sum);
    }
    if (inst.op == "range_diff") {
        const auto& v = nums(inst.value_col);
        auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return numeric_answer(*hi - *lo);
    }
    if (inst.op == "consistent_less") {
        const auto& v = nums(inst.value_col);
        const auto& ser = cats(inst.cat_col);
        const auto& x = cats(inst.x_col);
        struct Acc {
            double a = 0, b = 0;
            bool has_a = false, has_b = false;
        };
        std::vector<std::string> order;
        std::map<std::string, Acc> by_x;
        for (std::size_t r = 0; r < v.size(); ++r) {
            bool is_a = ser[r] == inst.cat_a, is_b = ser[r] == inst.cat_b;
            if (!is_a && !is_b) continue;
            auto [it, fresh] = by_x.try_emplace(x[r]);
            if (fresh) order.push_back(x[r]);
            if (is_a) it->second.a += v[r], it->second.has_a = true;
            else it->second.b += v[r], it->second.has_b = true;
        }
        bool any = false, all_less = true;
        for (const auto& key : order) {
            const Acc& acc = by_x[key];
            if (!acc.has_a || !acc.has_b) continue;
            any = true;
            if (!(acc.a < acc.b)) all_less = false;
        }
        return text_answer(any && all_less ? "Yes" : "No");
    }
    if (inst.op == "pair_greater") {
        const auto& v = nums(inst.value_col);
        const auto& c = cats(inst.cat_col);
        double a = 0, b = 0;
        for (std::size_t r = 0; r < v.size(); ++r) {
            if (c[r] == inst.cat_a) a += v[r];
            if (c[r] == inst.cat_b) b += v[r];
        }
        return text_answer(a > b ? "Yes" : "No");
    }
    if (inst.op == "style_axis") return text_answer(style_axis_display_name(inst.style_pick));
    if (inst.op == "encoding_channel")
        return text_answer(inst.bound_name.empty() ? "None" : inst.bound_name);
    if (inst.op == "chart_type") return text_answer(chart_type_display_name(inst.chart_type));
    throw Error(ErrorCode::UnsupportedKindForData, "qa", "unknown oracle op '" + inst.op + "'");
}

namespace {

int find_col(const DataTable& t, int preferred, AttributeKind kind) {
    if (preferred >= 0 && preferred < static_cast<int>(t.columns.size()) &&
        t.columns[static_cast<std::size_t>(preferred)].kind == kind)
        return preferred;
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        if (t.columns[i].kind == kind) return static_cast<int>(i);
    return -1;
}

std::vector<std::string> distinct_values(const DataTable& t, int col) {
    std::vector<std::string> out;
    for (const auto& v : t.columns[static_cast<std::size_t>(col)].values)
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    return out;
}

void shuffle_seeded(std::vector<std::string>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng.next_index(i)]);
}

// Append the options clause and fill pair.choices (answer + distractors,
// seeded order, 2-4 total). Returns false when no distractor is available.
bool finish_multiple_choice(QAPair& p, std::vector<std::string> distractors, Rng& rng) {
    std::vector<std::string> choices = {p.answer.text};
    for (auto& d : distractors) {
        if (choices.size() >= 4) break;
        if (std::find(choices.begin(), choices.end(), d) == choices.end())
            choices.push_back(std::move(d));
    }
    if (choices.size() < 2) return false;
    shuffle_seeded(choices, rng);
    p.answer_mode = AnswerMode::MultipleChoice;
    p.question += " Select the correct answer from the following options:";
    for (std::size_t i = 0; i < choices.size(); ++i) {
        p.question += i ? ", " : " ";
        p.question += static_cast<char>('A' + i);
        p.question += ". " + choices[i];
    }
    p.choices = std::move(choices);
    return true;
}

const char* kCanonicalAxes[] = {"bar_corner", "value_label_position", "icon_placement",
                                "outline_style", "orientation_flourish"};

std::vector<QAPair> gen_di(const DataTable& t, const GroundTruthMetadata& meta, Rng rng) {
    std::vector<QAPair> out;
    int cc = find_col(t, meta.bindings.category_col, AttributeKind::Categorical);
    int vc = find_col(t, meta.bindings.value_col, AttributeKind::Numeric);
    if (cc < 0 || vc < 0 || t.row_count < 2) return out;
    const auto& cats = t.columns[static_cast<std::size_t>(cc)].values;
    const auto& vals = t.columns[static_cast<std::size_t>(vc)].numbers;

    // Closest-value template: pick a row whose value is strictly nearest to a
    // probe target; try rows in a seeded rotation until one works.
    std::size_t n = t.row_count;
    std::size_t start = rng.next_index(n);
    for (std::size_t k = 0; k < n && out.empty(); ++k) {
        std::size_t r = (start + k) % n;
        if (std::count(cats.begin(), cats.end(), cats[r]) != 1) continue;
        double gap = 1e300;
        for (std::size_t i = 0; i < n; ++i)
            if (i != r) gap = std::min(gap, std::fabs(vals[i] - vals[r]));
        if (gap <= 0) continue; // duplicated value, ambiguous
        double u = rng.next_double() * 2 - 1;
        double target = vals[r] + 0.4 * (gap / 2) * u;
        double rounded = std::round(target * 10) / 10;
        if (std::fabs(rounded - vals[r]) < gap / 2 - 1e-12) target = rounded;
        // verify strict uniqueness of the argmin under the final target
        std::size_t hits = 0;
        double best = 1e300;
        for (std::size_t i = 0; i < n; ++i) {
            double d = std::fabs(vals[i] - target);
            if (d < best - 1e-15) best = d, hits = 1;
            else if (d < best + 1e-15) ++hits;
        }
        if (hits != 1) target = vals[r];

        QAPair p;
        p.kind = QAKind::DI;
        p.inst = {};
        p.inst.op = "closest";
        p.inst.value_col = vc;
        p.inst.cat_col = cc;
        p.inst.target = target;
        p.answer = answer_oracle(p.inst, t);
        const std::string& vname = t.columns[static_cast<std::size_t>(vc)].name;
        p.question = "Which " + t.columns[static_cast<std::size_t>(cc)].name + " has " +
                     article_for(vname) + " " + vname + " closest to " +
                     format_number(target) + "?";
        // distractors: categories of the next-nearest values
        std::vector<std::pair<double, std::string>> ranked;
        for (std::size_t i = 0; i < n; ++i)
            ranked.emplace_back(std::fabs(vals[i] - target), cats[i]);
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::string> distractors;
        for (const auto& [d, c] : ranked)
            if (c != p.answer.text) distractors.push_back(c);
        if (finish_multiple_choice(p, std::move(distractors), rng)) out.push_back(std::move(p));
    }

    // Icon-bound lookup variant, only when the metadata maps a category that
    // occurs exactly once to an icon.
    for (const auto& [cat, href] : meta.icon_map) {
        if (std::count(cats.begin(), cats.end(), cat) != 1) continue;
        QAPair p;
        p.kind = QAKind::DI;
        p.inst.op = "lookup";
        p.inst.value_col = vc;
        p.inst.cat_col = cc;
        p.inst.cat_a = cat;
        p.answer = answer_oracle(p.inst, t);
        p.answer_mode = AnswerMode::Numeric;
        p.question = "What is the " + t.columns[static_cast<std::size_t>(vc)].name +
                     " for [icon:" + href + "|alt:" + cat +
                     "] in the given image? Please provide a numerical answer.";
        out.push_back(std::move(p));
        break;
    }
    return out;
}

std::vector<QAPair> gen_dc(const DataTable& t, const GroundTruthMetadata& meta, Rng) {
    std::vector<QAPair> out;
    int vc = find_col(t, meta.bindings.value_col, AttributeKind::Numeric);
    if (vc < 0 || t.row_count < 2) return out;
    QAPair p;
    p.kind = QAKind::DC;
    p.inst.op = "range_diff";
    p.inst.value_col = vc;
    p.answer = answer_oracle(p.inst, t);
    p.answer_mode = AnswerMode::Numeric;
    p.question = "What is the difference between the highest and lowest " +
                 t.columns[static_cast<std::size_t>(vc)].name +
                 "? Please provide a numerical answer.";
    out.push_back(std::move(p));
    return out;
}

std::vector<QAPair> gen_dec(const DataTable& t, const GroundTruthMetadata& meta, Rng rng) {
    std::vector<QAPair> out;
    int cc = find_col(t, meta.bindings.category_col, AttributeKind::Categorical);
    int vc = find_col(t, meta.bindings.value_col, AttributeKind::Numeric);
    if (cc < 0 || vc < 0 || t.row_count == 0) return out;
    std::vector<std::string> cats = distinct_values(t, cc);
    const std::string& pick = cats[rng.next_index(cats.size())];
    QAPair p;
    p.kind = QAKind::DEC;
    p.inst.op = "cond_sum";
    p.inst.value_col = vc;
    p.inst.cat_col = cc;
    p.inst.cat_a = pick;
    p.answer = answer_oracle(p.inst, t);
    p.answer_mode = AnswerMode::Numeric;
    p.question = "What is the total " + t.columns[static_cast<std::size_t>(vc)].name + " of " +
                 pick + " in the given image? Please provide a numerical answer.";
    out.push_back(std::move(p));
    return out;
}

std::vector<QAPair> gen_fc(const DataTable& t, const GroundTruthMetadata& meta, Rng rng) {
    std::vector<QAPair> out;
    int vc = find_col(t, meta.bindings.value_col, AttributeKind::Numeric);
    if (vc < 0) return out;
    const std::string& vname = t.columns[static_cast<std::size_t>(vc)].name;

    int sc = meta.bindings.series_col;
    if (sc >= 0 && sc < static_cast<int>(t.columns.size()) &&
        t.columns[static_cast<std::size_t>(sc)].kind == AttributeKind::Categorical) {
        int xc = meta.bindings.temporal_col >= 0 ? meta.bindings.temporal_col
                                                 : meta.bindings.category_col;
        if (xc == sc) xc = -1;
        if (xc >= 0 && xc < static_cast<int>(t.columns.size())) {
            std::vector<std::string> series = distinct_values(t, sc);
            if (series.size() >= 2) {
                std::size_t ia = rng.next_index(series.size());
                std::size_t ib = rng.next_index(series.size() - 1);
                if (ib >= ia) ++ib;
                // require a shared x value so the comparison is non-vacuous
                const auto& serv = t.columns[static_cast<std::size_t>(sc)].values;
                const auto& xv = t.columns[static_cast<std::size_t>(xc)].values;
                bool common = false;
                for (std::size_t r = 0; r < t.row_count && !common; ++r) {
                    if (serv[r] != series[ia]) continue;
                    for (std::size_t q = 0; q < t.row_count; ++q)
                        if (serv[q] == series[ib] && xv[q] == xv[r]) {
                            common = true;
                            break;
                        }
                }
                if (common) {
                    QAPair p;
                    p.kind = QAKind::FC;
                    p.inst.op = "consistent_less";
                    p.inst.value_col = vc;
                    p.inst.cat_col = sc;
                    p.inst.x_col = xc;
                    p.inst.cat_a = series[ia];
                    p.inst.cat_b = series[ib];
                    p.answer = answer_oracle(p.inst, t);
                    p.answer_mode = AnswerMode::YesNo;
                    p.question = "Is the " + vname + " of " + series[ia] +
                                 " consistently less than the " + vname + " of " + series[ib] +
                                 " across all " + t.columns[static_cast<std::size_t>(xc)].name +
                                 " values? Answer with exactly 'Yes' or 'No'.";
                    out.push_back(std::move(p));
                    return out;
                }
            }
        }
    }

    int cc = find_col(t, meta.bindings.category_col, AttributeKind::Categorical);
    if (cc < 0) return out;
    std::vector<std::string> cats = distinct_values(t, cc);
    if (cats.size() < 2) return out;
    std::size_t ia = rng.next_index(cats.size());
    std::size_t ib = rng.next_index(cats.size() - 1);
    if (ib >= ia) ++ib;
    QAPair p;
    p.kind = QAKind::FC;
    p.inst.op = "pair_greater";
    p.inst.value_col = vc;
    p.inst.cat_col = cc;
    p.inst.cat_a = cats[ia];
    p.inst.cat_b = cats[ib];
    p.answer = answer_oracle(p.inst, t);
    p.answer_mode = AnswerMode::YesNo;
    p.question = "Is the total " + vname + " of " + cats[ia] + " greater than the total " +
                 vname + " of " + cats[ib] + "? Answer with exactly 'Yes' or 'No'.";
    out.push_back(std::move(p));
    return out;
}

std::vector<QAPair> gen_sd(const DataTable&, const GroundTruthMetadata& meta, Rng rng) {
    std::vector<QAPair> out;
    QAPair p;
    p.kind = QAKind::SD;
    p.inst.op = "style_axis";
    p.inst.style_axes = meta.style_axes;
    for (const char* axis : kCanonicalAxes)
        if (std::find(meta.style_axes.begin(), meta.style_axes.end(), axis) !=
            meta.style_axes.end()) {
            p.inst.style_pick = axis;
            break;
        }
    p.answer = answer_oracle(p.inst, /*table unused for meta ops*/ DataTable{});
    p.question = "Which visual style is applied to the data marks in this infographic?";
    std::vector<std::string> distractors;
    for (const char* axis : kCanonicalAxes)
        if (axis != p.inst.style_pick) distractors.push_back(style_axis_display_name(axis));
    if (!p.inst.style_pick.empty()) distractors.push_back("plain");
    shuffle_seeded(distractors, rng);
    if (finish_multiple_choice(p, std::move(distractors), rng)) out.push_back(std::move(p));
    return out;
}

std::vector<QAPair> gen_vea(const DataTable& t, const GroundTruthMetadata& meta, Rng rng) {
    std::vector<QAPair> out;
    QAPair p;
    p.kind = QAKind::VEA;
    p.inst.op = "encoding_channel";
    p.inst.channel = "color";
    p.inst.bound_name = meta.color_binding;
    p.answer = answer_oracle(p.inst, t);
    p.question =
        "What data attribute or dimension is encoded using different colors in this "
        "infographic chart?";
    std::vector<std::string> distractors;
    for (const auto& col : t.columns)
        if (col.name != p.answer.text) distractors.push_back(col.name);
    shuffle_seeded(distractors, rng);
    if (p.answer.text != "None") distractors.insert(distractors.begin(), "None");
    if (finish_multiple_choice(p, std::move(distractors), rng)) out.push_back(std::move(p));
    return out;
}

std::vector<QAPair> gen_cc(const DataTable& t, const GroundTruthMetadata& meta, Rng rng) {
    std::vector<QAPair> out;
    if (meta.chart_type.empty()) return out;
    QAPair p;
    p.kind = QAKind::CC;
    p.inst.op = "chart_type";
    p.inst.chart_type = meta.chart_type;
    p.answer = answer_oracle(p.inst, t);
    p.question = "What types of charts are included in this infographic?";
    std::vector<std::string> distractors;
    for (const auto& type : Registry::builtin().types())
        if (type.rendered && type.name != meta.chart_type)
            distractors.push_back(chart_type_display_name(type.name));
    shuffle_seeded(distractors, rng);
    if (finish_multiple_choice(p, std::move(distractors), rng)) out.push_back(std::move(p));
    return out;
}

std::vector<QAPair> gen_kind(QAKind kind, const DataTable& t, const GroundTruthMetadata& meta,
                             Rng rng) {
    switch (kind) {
        case QAKind::DI: return gen_di(t, meta, rng);
        case QAKind::DC: return gen_dc(t, meta, rng);
        case QAKind::DEC: return gen_dec(t, meta, rng);
        case QAKind::FC: return gen_fc(t, meta, rng);
        case QAKind::SD: return gen_sd(t, meta, rng);
        case QAKind::VEA: return gen_vea(t, meta, rng);
        case QAKind::CC: return gen_cc(t, meta, rng);
    }
    return {};
}

} // namespace

std::vector<QAKind> supported_kinds(const DataTable& table, const GroundTruthMetadata& meta) {
    std::vector<QAKind> out;
    for (QAKind k : all_qa_kinds())
        if (!gen_kind(k, table, meta, Rng(0)).empty()) out.push_back(k);
    return out;
}

std::vector<QAPair> generate_qa(const DataTable& table, const GroundTruthMetadata& meta,
                                const std::vector<QAKind>& kinds, Rng rng) {
    std::vector<QAPair> out;
    for (QAKind k : kinds) {
        std::vector<QAPair> pairs = gen_kind(k, table, meta, rng.child(qa_kind_name(k)));
        if (pairs.empty())
            throw Error(ErrorCode::UnsupportedKindForData, "qa",
                        std::string(qa_kind_name(k)) + " cannot be instantiated for this table");
        for (auto& p : pairs) out.push_back(std::move(p));
    }
    return out;
}

double relaxed_accuracy(double pred, double gt) {
    if (gt == 0) return pred == 0 ? 1.0 : 0.0;
    return std::fabs(pred - gt) <= 0.05 * std::fabs(gt) ? 1.0 : 0.0;
}

std::size_t levenshtein_ci(const std::string& a, const std::string& b) {
    auto fold = [](const std::string& s) {
        std::vector<char32_t> cps = decode_utf8_all(s);
        for (auto& c : cps)
            if (c >= 'A' && c <= 'Z') c += 32;
        return cps;
    };
    std::vector<char32_t> x = fold(a), y = fold(b);
    std::vector<std::size_t> row(y.size() + 1);
    for (std::size_t j = 0; j <= y.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= x.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= y.size(); ++j) {
            std::size_t up = row[j];
            row[j] = std::min({up + 1, row[j - 1] + 1, diag + (x[i - 1] == y[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[y.size()];
}

double anls(const std::string& pred, const std::string& gt, double tau) {
    std::size_t la = decode_utf8_all(pred).size(), lb = decode_utf8_all(gt).size();
    std::size_t mx = std::max(la, lb);
    double s = mx == 0 ? 1.0 : 1.0 - static_cast<double>(levenshtein_ci(pred, gt)) / mx;
    return s >= tau ? s : 0.0;
}

namespace {

std::string normalize_answer(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    std::string out = s.substr(b, e - b + 1);
    while (!out.empty() && (out.back() == '.' || out.back() == ')')) out.pop_back();
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c += 32;
    return out;
}

} // namespace

double exact_match(const std::string& pred, const std::string& gt,
                   const std::vector<std::string>& choices) {
    std::string p = normalize_answer(pred), g = normalize_answer(gt);
    if (p == g) return 1.0;
    for (std::size_t i = 0; i < choices.size(); ++i) {
        if (normalize_answer(choices[i]) != g) continue;
        std::string letter(1, static_cast<char>('a' + i));
        if (p == letter) return 1.0;
        // "A. Germany" style replies
        if (p.size() > 2 && p[0] == letter[0] && (p[1] == '.' || p[1] == ')') &&
            normalize_answer(p.substr(2)) == g)
            return 1.0;
    }
    return 0.0;
}

double score_qa(const QAPair& pair, const std::string& prediction) {
    switch (pair.answer_mode) {
        case AnswerMode::Numeric: {
            std::optional<double> v = parse_numeric_cell(prediction);
            if (!v) return 0.0;
            return relaxed_accuracy(*v, pair.answer.number);
        }
        case AnswerMode::Textual:
            return anls(prediction, pair.answer.text);
        case AnswerMode::MultipleChoice:
            return exact_match(prediction, pair.answer.text, pair.choices);
        case AnswerMode::YesNo:
            return exact_match(prediction, pair.answer.text, {"Yes", "No"});
    }
    return 0.0;
}

std::string qa_to_json_line(const QAPair& p) {
    json j;
    j["id"] = p.chart_id;
    j["kind"] = qa_kind_name(p.kind);
    j["question"] = p.question;
    j["answer"] = p.answer.text;
    j["answer_number"] = p.answer.numeric ? json(p.answer.number) : json(nullptr);
    j["answer_mode"] = answer_mode_name(p.answer_mode);
    if (!p.choices.empty()) j["choices"] = p.choices;
    json inst;
    inst["op"] = p.inst.op;
    inst["value_col"] = p.inst.value_col;
    inst["cat_col"] = p.inst.cat_col;
    inst["x_col"] = p.inst.x_col;
    inst["target"] = p.inst.target;
    inst["cat_a"] = p.inst.cat_a;
    inst["cat_b"] = p.inst.cat_b;
    inst["channel"] = p.inst.channel;
    inst["bound_name"] = p.inst.bound_name;
    inst["style_axes"] = p.inst.style_axes;
    inst["style_pick"] = p.inst.style_pick;
    inst["chart_type"] = p.inst.chart_type;
    j["inst"] = inst;
    return j.dump();
}

QAPair qa_from_json_line(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedInput, "qa", std::string("bad QA line: ") + e.what());
    }
    QAPair p;
    try {
        p.chart_id = j.value("id", "");
        auto kind = qa_kind_from_name(j.at("kind").get<std::string>());
        auto mode = answer_mode_from_name(j.at("answer_mode").get<std::string>());
        if (!kind || !mode)
            throw Error(ErrorCode::MalformedInput, "qa", "unknown kind or answer_mode");
        p.kind = *kind;
        p.answer_mode = *mode;
        p.question = j.at("question").get<std::string>();
        p.answer.text = j.at("answer").get<std::string>();
        if (j.contains("answer_number") && j["answer_number"].is_number()) {
            p.answer.number = j["answer_number"].get<double>();
            p.answer.numeric = true;
        }
        if (j.contains("choices")) p.choices = j["choices"].get<std::vector<std::string>>();
        const json& inst = j.at("inst");
        p.inst.op = inst.value("op", "");
        p.inst.value_col = inst.value("value_col", -1);
        p.inst.cat_col = inst.value("cat_col", -1);
        p.inst.x_col = inst.value("x_col", -1);
        p.inst.target = inst.value("target", 0.0);
        p.inst.cat_a = inst.value("cat_a", "");
        p.inst.cat_b = inst.value("cat_b", "");
        p.inst.channel = inst.value("channel", "");
        p.inst.bound_name = inst.value("bound_name", "");
        if (inst.contains("style_axes"))
            p.inst.style_axes = inst["style_axes"].get<std::vector<std::string>>();
        p.inst.style_pick = inst.value("style_pick", "");
        p.inst.chart_type = inst.value("chart_type", "");
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedInput, "qa", std::string("bad QA line: ") + e.what());
    }
    return p;
}

} // namespace foundry
