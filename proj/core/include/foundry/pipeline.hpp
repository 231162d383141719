#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "foundry/chartmap.hpp"
#include "foundry/errors.hpp"
#include "foundry/judge.hpp"
#include "foundry/layout.hpp"
#include "foundry/qa.hpp"
#include "foundry/rng.hpp"
#include "foundry/tabular.hpp"

namespace foundry {

struct GenerateConfig {
    std::vector<std::string> inputs; // table files and/or directories
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    double canvas_w = 800;
    double canvas_h = 600;
    double gap = 8.0; // reference gap at 800px canvas width, scaled to canvas
    int grid_n = 24;
    std::string templates_dir; // empty => builtin library
    std::string palettes_dir;  // empty => builtin pool
    std::string icons_dir;     // empty => builtin glyph set
    std::vector<std::string> type_allowlist; // empty => all rendered types
    bool with_qa = false;
    int jobs = 1;
};

struct ManifestRecord {
    std::string id;
    std::string svg_path;
    std::string metadata_path;
    std::string chart_type;
    std::string variation;
    std::string template_id;
    double ink_ratio = 0;
    std::uint64_t seed = 0;
};

struct FailureRecord {
    std::string id;
    std::string error;
    std::string stage;
    std::string detail;
};

struct Manifest {
    std::uint64_t seed = 0;
    std::vector<ManifestRecord> records;
    std::vector<FailureRecord> failures;

    std::string to_json_string() const;
    static Manifest from_json_string(const std::string& text);
};

// Loaded resources shared by all charts of a run.
struct PipelineEnv {
    const Registry* registry = nullptr;
    std::vector<LayoutTemplate> templates;
    std::vector<Palette> palettes;
    std::vector<std::string> icons; // data URIs
};

PipelineEnv load_env(const GenerateConfig& cfg);

// Everything decided up front, serially, so rendering can run on any thread
// without affecting the bytes produced.
struct ChartPlan {
    std::string id;
    std::size_t table_index = 0;
    std::string chart_type;
    std::string variation_id;
    std::vector<std::string> style_axes;
    std::size_t palette_index = 0;
    std::size_t element_set = 0; // index of the template whose slot multiset we fill
    std::vector<std::size_t> icon_indices;
    std::uint64_t chart_seed = 0;
};

struct ChartArtifacts {
    std::string id;
    std::string svg;
    GroundTruthMetadata metadata;
    std::vector<QAPair> qa;
};

// Serial phase: chart-type selection, adaptive variation draw, palette /
// element-set / icon picks. Throws NoCompatibleChart / NoRenderedCandidate.
ChartPlan plan_chart(const DataTable& table, std::size_t table_index, const std::string& id,
                     const GenerateConfig& cfg, const PipelineEnv& env, Rng rng,
                     SamplerState& sampler);

// Parallel phase: pure function of (plan, table, cfg, env).
ChartArtifacts execute_plan(const ChartPlan& plan, const DataTable& table,
                            const std::string& table_ref, const GenerateConfig& cfg,
                            const PipelineEnv& env);

// Load every table reachable from cfg.inputs (files, or *.csv/*.json inside
// directories, sorted). Throws IoError when nothing is found.
std::vector<std::pair<std::string, DataTable>> load_table_pool(const GenerateConfig& cfg);

int cmd_generate(const GenerateConfig& cfg);
int cmd_batch(const GenerateConfig& cfg, int n);

struct EvaluateOptions {
    std::string gt_path;
    std::string pred_path;
    std::string out_path; // empty => stdout
    bool exec_failed = false;
    bool use_judge = false;
    JudgeConfig judge;
};

int cmd_evaluate(const EvaluateOptions& opt);
int cmd_stats(const std::string& manifest_path, const std::string& out_json_path);
int cmd_score_qa(const std::string& qa_path, const std::string& predictions_path,
                 const std::string& out_json_path);

// Small file helpers shared with the CLI (throw Error(IoError)).
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// {"error","stage","detail"} JSON record on stderr.
void print_error_record(const Error& e);
// 2 for input-surface problems (missing files, unparseable SVG), 1 otherwise.
int exit_code_for(const Error& e);

} // namespace foundry
