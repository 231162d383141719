// chartfoundry: deterministic infographic chart synthesis and evaluation.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "foundry/errors.hpp"
#include "foundry/pipeline.hpp"

using namespace foundry;

namespace {

void parse_canvas(const std::string& text, GenerateConfig& cfg) {
    double w = 0, h = 0;
    char sep = 0;
    if (std::sscanf(text.c_str(), "%lf%c%lf", &w, &sep, &h) != 3 ||
        (sep != 'x' && sep != 'X') || w <= 0 || h <= 0)
        throw Error(ErrorCode::MalformedInput, "cli",
                    "--canvas expects WxH, e.g. 800x600, got '" + text + "'");
    cfg.canvas_w = w;
    cfg.canvas_h = h;
}

std::vector<std::string> split_csv_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string item = text.substr(start, comma - start);
        std::size_t b = item.find_first_not_of(" \t");
        if (b != std::string::npos) {
            std::size_t e = item.find_last_not_of(" \t");
            out.push_back(item.substr(b, e - b + 1));
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic infographic chart synthesis and evaluation"};
    app.require_subcommand(1);

    GenerateConfig cfg;
    std::string canvas = "800x600";
    std::string types;
    int batch_n = 100;

    auto add_generate_flags = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.inputs, "table file(s) or directorie(s)")->required();
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--seed", cfg.seed, "master seed");
        sub->add_option("--canvas", canvas, "canvas size WxH (default 800x600)");
        sub->add_option("--gap", cfg.gap, "minimum pairwise gap in px at 800px width");
        sub->add_option("--grid", cfg.grid_n, "position grid resolution per anchor cell");
        sub->add_option("--templates", cfg.templates_dir, "layout template directory");
        sub->add_option("--palettes", cfg.palettes_dir, "palette directory");
        sub->add_option("--icons", cfg.icons_dir, "icon directory");
        sub->add_option("--types", types, "comma-separated chart-type allowlist");
        sub->add_flag("--qa", cfg.with_qa, "also emit qa.jsonl");
        sub->add_option("--jobs", cfg.jobs, "worker threads for batch rendering");
    };

    CLI::App* generate = app.add_subcommand("generate", "synthesize one infographic chart");
    add_generate_flags(generate);

    CLI::App* batch = app.add_subcommand("batch", "synthesize a dataset with a manifest");
    add_generate_flags(batch);
    batch->add_option("-n,--count", batch_n, "number of charts")->required();

    EvaluateOptions ev;
    CLI::App* evaluate = app.add_subcommand("evaluate", "score a predicted SVG against a reference");
    evaluate->add_option("--gt", ev.gt_path, "reference SVG")->required();
    evaluate->add_option("--pred", ev.pred_path, "predicted SVG")->required();
    evaluate->add_option("--out", ev.out_path, "report path (default stdout)");
    evaluate->add_flag("--exec-failed", ev.exec_failed,
                       "the prediction failed to execute; zero both scores");
    evaluate->add_flag("--judge", ev.use_judge, "request the high-level judge score");
    evaluate->add_option("--judge-endpoint", ev.judge.endpoint,
                         "judge chat-completions URL (auth via $JUDGE_TOKEN)");
    evaluate->add_option("--judge-model", ev.judge.model, "judge model name");
    evaluate->add_option("--judge-timeout", ev.judge.timeout_seconds, "judge timeout seconds");

    std::string manifest_path, stats_out;
    CLI::App* stats = app.add_subcommand("stats", "corpus distribution summary");
    stats->add_option("--manifest", manifest_path, "manifest.json from batch")->required();
    stats->add_option("--out", stats_out, "stats JSON path (default stdout)");

    std::string qa_path, pred_path, score_out;
    CLI::App* score = app.add_subcommand("score-qa", "score QA predictions");
    score->add_option("--qa", qa_path, "qa.jsonl from generation")->required();
    score->add_option("--pred", pred_path, "predictions jsonl: {\"id\",\"answer\"} per line")
        ->required();
    score->add_option("--out", score_out, "score JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (generate->parsed() || batch->parsed()) {
            parse_canvas(canvas, cfg);
            cfg.type_allowlist = split_csv_list(types);
            if (cfg.grid_n < 1)
                throw Error(ErrorCode::MalformedInput, "cli", "--grid must be >= 1");
            if (cfg.gap < 0)
                throw Error(ErrorCode::MalformedInput, "cli", "--gap must be >= 0");
        }
        if (generate->parsed()) return cmd_generate(cfg);
        if (batch->parsed()) return cmd_batch(cfg, batch_n);
        if (evaluate->parsed()) return cmd_evaluate(ev);
        if (stats->parsed()) return cmd_stats(manifest_path, stats_out);
        if (score->parsed()) return cmd_score_qa(qa_path, pred_path, score_out);
    } catch (const Error& e) {
        print_error_record(e);
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << R"({"error":"Internal","stage":"cli","detail":")" << e.what() << "\"}\n";
        return 1;
    }
    return 0;
}
