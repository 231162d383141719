#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "foundry/layout.hpp"
#include "foundry/rng.hpp"
#include "foundry/tabular.hpp"

namespace foundry {

// DI data identification, DC data comparison, DEC data extraction with
// condition, FC fact checking, SD style detection, VEA visual encoding
// analysis, CC chart classification.
enum class QAKind { DI, DC, DEC, FC, SD, VEA, CC };

const char* qa_kind_name(QAKind k);
std::optional<QAKind> qa_kind_from_name(std::string_view name);
std::vector<QAKind> all_qa_kinds();

enum class AnswerMode { Numeric, Textual, MultipleChoice, YesNo };
const char* answer_mode_name(AnswerMode m);
std::optional<AnswerMode> answer_mode_from_name(std::string_view name);

struct QAAnswer {
    std::string text;
    double number = 0;
    bool numeric = false;

    bool operator==(const QAAnswer&) const = default;
};

// Structured question instance: everything the oracle needs to recompute the
// answer without parsing the question text.
struct QAInstance {
    std::string op; // closest | lookup | range_diff | cond_sum |
                    // consistent_less | pair_greater | style_axis |
                    // encoding_channel | chart_type
    int value_col = -1;
    int cat_col = -1;
    int x_col = -1; // alignment column for consistent_less
    double target = 0;
    std::string cat_a;
    std::string cat_b;
    std::string channel;                 // encoding_channel: "color" | "icon"
    std::string bound_name;              // encoding_channel: bound column name
    std::vector<std::string> style_axes; // style_axis: axes present
    std::string style_pick;              // style_axis: chosen axis ("" = plain)
    std::string chart_type;              // chart_type op
};

struct QAPair {
    QAKind kind = QAKind::DI;
    std::string question;
    QAAnswer answer;
    AnswerMode answer_mode = AnswerMode::Textual;
    std::vector<std::string> choices; // multiple choice: 2-4, contains answer
    std::string chart_id;
    QAInstance inst;
};

// Exact recomputation of the answer from the structured instance.
QAAnswer answer_oracle(const QAInstance& inst, const DataTable& table);

// Kinds that can be instantiated for this table + metadata.
std::vector<QAKind> supported_kinds(const DataTable& table, const GroundTruthMetadata& meta);

// Deterministic template instantiation. Throws UnsupportedKindForData when a
// requested kind cannot be instantiated for this table.
std::vector<QAPair> generate_qa(const DataTable& table, const GroundTruthMetadata& meta,
                                const std::vector<QAKind>& kinds, Rng rng);

// Scoring rules.
double relaxed_accuracy(double pred, double gt);                // {0,1}, 5% margin
double anls(const std::string& pred, const std::string& gt,     // [0,1]
            double tau = 0.5);
double exact_match(const std::string& pred, const std::string& gt,
                   const std::vector<std::string>& choices);    // {0,1}
// Dispatch on the pair's answer_mode; numeric predictions are parsed from text.
double score_qa(const QAPair& pair, const std::string& prediction);

std::size_t levenshtein_ci(const std::string& a, const std::string& b);

// "vertical_bar" -> "Vertical Bar Chart" (used for CC choices).
std::string chart_type_display_name(const std::string& raw);
// "bar_corner" -> "rounded corners"; "" -> "plain".
std::string style_axis_display_name(const std::string& axis);

// JSON Lines round trip (one pair per line).
std::string qa_to_json_line(const QAPair& pair);
QAPair qa_from_json_line(const std::string& line);

} // namespace foundry
