#include "foundry/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "foundry/errors.hpp"
#include "foundry/eval.hpp"
#include "foundry/pathdata.hpp"
#include "foundry/scene.hpp"
#include "foundry/svgdom.hpp"

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace foundry {

using json = nlohmann::json;

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedInput: return "MalformedInput";
        case ErrorCode::EmptyTable: return "EmptyTable";
        case ErrorCode::RaggedRows: return "RaggedRows";
        case ErrorCode::NoCompatibleChart: return "NoCompatibleChart";
        case ErrorCode::NoRenderedCandidate: return "NoRenderedCandidate";
        case ErrorCode::UnsupportedChartType: return "UnsupportedChartType";
        case ErrorCode::EncodingMismatch: return "EncodingMismatch";
        case ErrorCode::NoFeasibleTemplate: return "NoFeasibleTemplate";
        case ErrorCode::EmptyLayout: return "EmptyLayout";
        case ErrorCode::InfeasibleLayout: return "InfeasibleLayout";
        case ErrorCode::MalformedSvg: return "MalformedSvg";
        case ErrorCode::JudgeUnavailable: return "JudgeUnavailable";
        case ErrorCode::MalformedJudgeReply: return "MalformedJudgeReply";
        case ErrorCode::ExternalScorerFailure: return "ExternalScorerFailure";
        case ErrorCode::UnsupportedKindForData: return "UnsupportedKindForData";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "io", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error(ErrorCode::IoError, "io", "read failed for '" + path + "'");
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    fs::path p(path);
    std::error_code ec;
    if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "io", "cannot write '" + path + "'");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "io", "write failed for '" + path + "'");
}

void print_error_record(const Error& e) {
    json j = {{"error", error_code_name(e.code())}, {"stage", e.stage()}, {"detail", e.what()}};
    std::cerr << j.dump() << "\n";
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::IoError:
        case ErrorCode::MalformedSvg: return 2;
        default: return 1;
    }
}

// ---------------------------------------------------------------------------
// Manifest

std::string Manifest::to_json_string() const {
    json j;
    j["seed"] = seed;
    json charts = json::array();
    for (const auto& r : records) {
        charts.push_back({{"id", r.id},
                          {"svg", r.svg_path},
                          {"metadata", r.metadata_path},
                          {"chart_type", r.chart_type},
                          {"variation", r.variation},
                          {"template_id", r.template_id},
                          {"ink_ratio", round3(r.ink_ratio)},
                          {"seed", r.seed}});
    }
    j["charts"] = charts;
    json fails = json::array();
    for (const auto& f : failures)
        fails.push_back(
            {{"id", f.id}, {"error", f.error}, {"stage", f.stage}, {"detail", f.detail}});
    j["failures"] = fails;
    return j.dump(2) + "\n";
}

Manifest Manifest::from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedInput, "manifest",
                    std::string("manifest is not JSON: ") + e.what());
    }
    Manifest m;
    try {
        m.seed = j.value("seed", std::uint64_t{0});
        for (const auto& c : j.value("charts", json::array())) {
            ManifestRecord r;
            r.id = c.value("id", "");
            r.svg_path = c.value("svg", "");
            r.metadata_path = c.value("metadata", "");
            r.chart_type = c.value("chart_type", "");
            r.variation = c.value("variation", "");
            r.template_id = c.value("template_id", "");
            r.ink_ratio = c.value("ink_ratio", 0.0);
            r.seed = c.value("seed", std::uint64_t{0});
            m.records.push_back(std::move(r));
        }
        for (const auto& f : j.value("failures", json::array())) {
            FailureRecord r;
            r.id = f.value("id", "");
            r.error = f.value("error", "");
            r.stage = f.value("stage", "");
            r.detail = f.value("detail", "");
            m.failures.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedInput, "manifest",
                    std::string("bad manifest field: ") + e.what());
    }
    return m;
}

// ---------------------------------------------------------------------------
// Environment loading

namespace {

std::vector<std::string> sorted_dir_files(const std::string& dir,
                                          const std::vector<std::string>& exts) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec))
        throw Error(ErrorCode::IoError, "io", "'" + dir + "' is not a directory");
    std::vector<std::string> out;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        for (auto& c : ext)
            if (c >= 'A' && c <= 'Z') c += 32;
        if (std::find(exts.begin(), exts.end(), ext) != exts.end())
            out.push_back(entry.path().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

Palette palette_from_json_text(const std::string& text, const std::string& where) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedInput, "palette",
                    where + " is not JSON: " + e.what());
    }
    Palette p;
    if (!j.is_object() || !j.contains("colors") || !j["colors"].is_array() ||
        j["colors"].empty())
        throw Error(ErrorCode::MalformedInput, "palette", where + ": needs a colors array");
    if (j.contains("background")) {
        auto bg = parse_color(j["background"].get<std::string>());
        if (!bg) throw Error(ErrorCode::MalformedInput, "palette", where + ": bad background");
        p.background = *bg;
    }
    for (const auto& c : j["colors"]) {
        auto rgb = parse_color(c.get<std::string>());
        if (!rgb) throw Error(ErrorCode::MalformedInput, "palette", where + ": bad color");
        p.colors.push_back(*rgb);
    }
    return p;
}

// Small decorative vector glyphs shipped as data URIs so icon slots work out
// of the box.
const std::vector<std::string>& builtin_icons() {
    static const std::vector<std::string> icons = [] {
        const char* bodies[] = {
            "<svg xmlns='http://www.w3.org/2000/svg' viewBox='0 0 24 24'><path fill='#f6b93b' "
            "d='M12 2l2.9 6.3 6.9.8-5.1 4.7 1.4 6.8L12 17l-6.1 3.6 1.4-6.8L2.2 9.1l6.9-.8z'/>"
            "</svg>",
            "<svg xmlns='http://www.w3.org/2000/svg' viewBox='0 0 24 24'><circle cx='12' "
            "cy='12' r='10' fill='#4a69bd'/><circle cx='12' cy='12' r='4.5' fill='#f5f6fa'/>"
            "</svg>",
            "<svg xmlns='http://www.w3.org/2000/svg' viewBox='0 0 24 24'><path fill='#78e08f' "
            "d='M12 3l7 8h-4v10h-6V11H5z'/></svg>",
            "<svg xmlns='http://www.w3.org/2000/svg' viewBox='0 0 24 24'><path fill='#e55039' "
            "d='M13 2L4 14h6l-1 8 9-12h-6z'/></svg>",
            "<svg xmlns='http://www.w3.org/2000/svg' viewBox='0 0 24 24'><circle cx='12' "
            "cy='7' r='4' fill='#60a3bc'/><path fill='#60a3bc' d='M4 22c0-4.4 3.6-8 8-8s8 "
            "3.6 8 8z'/></svg>",
            "<svg xmlns='http://www.w3.org/2000/svg' viewBox='0 0 24 24'><path fill='#38ada9' "
            "d='M20 4c-9 0-16 5-16 13 0 1.7.4 3 .4 3s3-9 12.6-11c-7 3-10 9-10 9s2-1 5-1c7 0 "
            "8-8 8-13z'/></svg>",
        };
        std::vector<std::string> out;
        for (const char* b : bodies)
            out.push_back("data:image/svg+xml;base64," + base64_encode(b));
        return out;
    }();
    return icons;
}

} // namespace

PipelineEnv load_env(const GenerateConfig& cfg) {
    PipelineEnv env;
    env.registry = &Registry::builtin();

    if (cfg.templates_dir.empty()) env.templates = builtin_templates();
    else env.templates = load_templates_dir(cfg.templates_dir);

    if (cfg.palettes_dir.empty()) {
        env.palettes = builtin_palettes();
    } else {
        for (const auto& f : sorted_dir_files(cfg.palettes_dir, {".json"}))
            env.palettes.push_back(palette_from_json_text(read_file(f), f));
        if (env.palettes.empty())
            throw Error(ErrorCode::MalformedInput, "palette",
                        "no *.json palettes in '" + cfg.palettes_dir + "'");
    }

    if (cfg.icons_dir.empty()) {
        env.icons = builtin_icons();
    } else {
        for (const auto& f : sorted_dir_files(cfg.icons_dir, {".svg", ".png"})) {
            std::string mime = fs::path(f).extension() == ".png" ? "image/png"
                                                                 : "image/svg+xml";
            env.icons.push_back("data:" + mime + ";base64," + base64_encode(read_file(f)));
        }
        if (env.icons.empty())
            throw Error(ErrorCode::MalformedInput, "icons",
                        "no *.svg or *.png icons in '" + cfg.icons_dir + "'");
    }
    return env;
}

std::vector<std::pair<std::string, DataTable>> load_table_pool(const GenerateConfig& cfg) {
    std::vector<std::string> files;
    for (const auto& input : cfg.inputs) {
        std::error_code ec;
        if (fs::is_directory(input, ec)) {
            auto found = sorted_dir_files(input, {".csv", ".json"});
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(input);
        }
    }
    if (files.empty())
        throw Error(ErrorCode::IoError, "io", "no input tables given");
    std::vector<std::pair<std::string, DataTable>> pool;
    for (const auto& f : files) pool.emplace_back(f, load_table_file(f));
    return pool;
}

// ---------------------------------------------------------------------------
// Block construction

namespace {

constexpr double kChartShare = 0.66;  // chart block's natural canvas share
constexpr double kTextInk = 0.62;     // text fill density for ink accounting
constexpr double kIconSide = 64.0;    // icon block side at 800px canvas

LayoutBlock text_block(SlotRole role, const std::string& text, double size, bool bold,
                       Rgb color) {
    const FontMetrics& m = bold ? FontMetrics::builtin_bold() : FontMetrics::builtin();
    LayoutBlock b;
    b.role = role;
    SceneElement el;
    el.geometry = TextGeom{0, m.baseline_offset(size), size, bold, TextAnchor::Start};
    el.fill = color;
    el.text_content = text;
    TextSize sz = m.measure(text, size);
    b.width = sz.w;
    b.height = sz.h;
    b.ink.push_back({{0, 0, sz.w, sz.h}, kTextInk});
    b.content = std::move(el);
    return b;
}

std::string fit_text(std::string text, double size, bool bold, double max_w) {
    const FontMetrics& m = bold ? FontMetrics::builtin_bold() : FontMetrics::builtin();
    if (m.measure(text, size).w <= max_w) return text;
    while (!text.empty() && m.measure(text + "…", size).w > max_w) {
        // drop one UTF-8 code point
        do text.pop_back();
        while (!text.empty() && (static_cast<unsigned char>(text.back()) & 0xC0) == 0x80);
    }
    return text + "…";
}

LayoutBlock icon_block(const std::string& href, double side) {
    LayoutBlock b;
    b.role = SlotRole::Image;
    SceneElement el;
    el.geometry = ImageGeom{0, 0, side, side};
    el.image_href = href;
    b.width = side;
    b.height = side;
    b.ink.push_back({{0, 0, side, side}, 1.0});
    b.content = std::move(el);
    return b;
}

LayoutBlock chart_block(ChartScene& scene) {
    const FontMetrics& fm = FontMetrics::builtin();
    Rect bounds = scene.root.bbox(fm);
    if (bounds.w <= 0 || bounds.h <= 0)
        throw Error(ErrorCode::EmptyLayout, "pipeline", "chart rendered no geometry");
    transform_scene(scene.root, 1.0, -bounds.x, -bounds.y);

    LayoutBlock b;
    b.role = SlotRole::Chart;
    b.width = round3(bounds.w);
    b.height = round3(bounds.h);
    for_each_leaf(scene.root, [&](const SceneElement& leaf) {
        Rect r = leaf.bbox(fm);
        // zero-extent strokes (axis lines) still lay down ink
        if (r.w <= 0) {
            r.x -= std::max(leaf.stroke_width, 1.0) / 2;
            r.w = std::max(leaf.stroke_width, 1.0);
        }
        if (r.h <= 0) {
            r.y -= std::max(leaf.stroke_width, 1.0) / 2;
            r.h = std::max(leaf.stroke_width, 1.0);
        }
        bool is_text = std::holds_alternative<TextGeom>(leaf.geometry);
        b.ink.push_back({r, is_text ? kTextInk : 1.0});
    });
    b.content = std::move(scene.root);
    return b;
}

std::string capitalized(std::string s) {
    if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] -= 32;
    return s;
}

struct TextPlanner {
    const DataTable& table;
    Rng rng;

    std::string value_name() const {
        for (const auto& c : table.columns)
            if (c.kind == AttributeKind::Numeric) return c.name;
        return table.columns.empty() ? "Values" : table.columns.front().name;
    }
    std::string group_name() const {
        for (const auto& c : table.columns)
            if (c.kind == AttributeKind::Categorical) return c.name;
        for (const auto& c : table.columns)
            if (c.kind == AttributeKind::Temporal) return c.name;
        return "Series";
    }

    std::string title() {
        if (!table.topic.empty()) return capitalized(table.topic);
        return capitalized(value_name()) + " by " + group_name();
    }

    std::string subtitle() {
        switch (rng.next_index(3)) {
            case 0: return capitalized(value_name()) + " by " + group_name();
            case 1:
                return "A look at " + std::to_string(table.row_count) + " data points";
            default: return capitalized(value_name()) + " across " + group_name() + " groups";
        }
    }
};

} // namespace

// ---------------------------------------------------------------------------
// Planning and execution

ChartPlan plan_chart(const DataTable& table, std::size_t table_index, const std::string& id,
                     const GenerateConfig& cfg, const PipelineEnv& env, Rng rng,
                     SamplerState& sampler) {
    ChartPlan plan;
    plan.id = id;
    plan.table_index = table_index;

    AttributeSignature sig = signature_of(table);
    TableStats stats = table_stats(table);
    std::vector<const ChartType*> candidates = candidate_chart_types(sig, *env.registry);
    if (!cfg.type_allowlist.empty()) {
        std::erase_if(candidates, [&](const ChartType* t) {
            return std::find(cfg.type_allowlist.begin(), cfg.type_allowlist.end(), t->name) ==
                   cfg.type_allowlist.end();
        });
        if (candidates.empty())
            throw Error(ErrorCode::NoRenderedCandidate, "chartmap",
                        "type allowlist excludes every compatible chart type");
    }
    const ChartType* type = select_chart_type(candidates, stats, rng.child("type").next_u64());
    plan.chart_type = type->name;

    const ChartVariation* var = sample_variation(*type, *env.registry, sampler);
    plan.variation_id = var->id;
    plan.style_axes = var->style_axes;

    plan.palette_index = rng.child("palette").next_index(env.palettes.size());
    plan.element_set = rng.child("elements").next_index(env.templates.size());
    std::size_t images = 0;
    for (const auto& slot : env.templates[plan.element_set].slots)
        if (slot.role == SlotRole::Image) ++images;
    Rng icon_rng = rng.child("icons");
    for (std::size_t k = 0; k < images; ++k)
        plan.icon_indices.push_back(icon_rng.next_index(env.icons.size()));
    plan.chart_seed = rng.child("exec").next_u64();
    return plan;
}

ChartArtifacts execute_plan(const ChartPlan& plan, const DataTable& table,
                            const std::string& table_ref, const GenerateConfig& cfg,
                            const PipelineEnv& env) {
    Rng rng(plan.chart_seed);
    double s = cfg.canvas_w / 800.0;

    ChartSpec spec;
    spec.type_name = plan.chart_type;
    spec.variation_id = plan.variation_id;
    spec.style_axes = plan.style_axes;
    spec.bindings = default_bindings(table, plan.chart_type);

    const Palette& palette = env.palettes[plan.palette_index % env.palettes.size()];
    ChartScene scene = render_chart(table, spec, palette,
                                    round3(cfg.canvas_w * kChartShare),
                                    round3(cfg.canvas_h * kChartShare));
    std::string color_binding = scene.color_binding;

    TextPlanner words{table, rng.child("text")};
    Rgb text_color = palette.text_color();
    const LayoutTemplate& shape = env.templates[plan.element_set % env.templates.size()];

    std::vector<LayoutBlock> blocks;
    std::size_t icon_i = 0;
    for (const auto& slot : shape.slots) {
        switch (slot.role) {
            case SlotRole::Chart: blocks.push_back(chart_block(scene)); break;
            case SlotRole::Title: {
                double size = 30 * s;
                std::string text = fit_text(words.title(), size, true, 0.85 * cfg.canvas_w);
                blocks.push_back(text_block(SlotRole::Title, text, size, true, text_color));
                break;
            }
            case SlotRole::Subtitle: {
                double size = 16 * s;
                std::string text =
                    fit_text(words.subtitle(), size, false, 0.8 * cfg.canvas_w);
                blocks.push_back(
                    text_block(SlotRole::Subtitle, text, size, false, text_color));
                break;
            }
            case SlotRole::Footnote: {
                double size = 11 * s;
                std::string text = "Source: " + fs::path(table_ref).filename().string();
                text = fit_text(text, size, false, 0.8 * cfg.canvas_w);
                blocks.push_back(
                    text_block(SlotRole::Footnote, text, size, false, text_color));
                break;
            }
            case SlotRole::Image: {
                const std::string& href =
                    env.icons[plan.icon_indices[icon_i % plan.icon_indices.size()]];
                ++icon_i;
                blocks.push_back(icon_block(href, kIconSide * s));
                break;
            }
        }
    }

    LayoutParams params;
    params.canvas_w = cfg.canvas_w;
    params.canvas_h = cfg.canvas_h;
    params.gap_px = cfg.gap * cfg.canvas_w / 800.0;
    params.grid_n = cfg.grid_n;
    params.cell_size = 4.0 * cfg.canvas_w / 800.0;

    ComposeResult comp = compose_infographic(blocks, env.templates, params);
    comp.metadata.table_ref = table_ref;
    comp.metadata.chart_type = plan.chart_type;
    comp.metadata.variation_id = plan.variation_id;
    comp.metadata.style_axes = plan.style_axes;
    comp.metadata.bindings = spec.bindings;
    comp.metadata.color_binding = color_binding;

    ChartArtifacts art;
    art.id = plan.id;
    art.metadata = comp.metadata;
    art.svg = serialize_svg(comp.root, cfg.canvas_w, cfg.canvas_h, palette.background);
    if (cfg.with_qa) {
        std::vector<QAKind> kinds = supported_kinds(table, art.metadata);
        art.qa = generate_qa(table, art.metadata, kinds, rng.child("qa"));
        for (std::size_t k = 0; k < art.qa.size(); ++k)
            art.qa[k].chart_id = plan.id + "#" + std::to_string(k);
    }
    return art;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

std::string chart_id_for(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "chart-%05zu", index + 1);
    return buf;
}

std::string qa_lines(const std::vector<QAPair>& qa) {
    std::string out;
    for (const auto& p : qa) out += qa_to_json_line(p) + "\n";
    return out;
}

void print_type_counts(const std::vector<ManifestRecord>& records) {
    std::map<std::string, int> counts;
    for (const auto& r : records) ++counts[r.chart_type];
    std::cout << "chart types (" << records.size() << " charts):\n";
    for (const auto& [name, c] : counts) {
        char pct[32];
        std::snprintf(pct, sizeof pct, "%5.1f%%",
                      records.empty() ? 0.0 : 100.0 * c / records.size());
        std::cout << "  " << name << ": " << c << " (" << pct << ")\n";
    }
}

} // namespace

int cmd_generate(const GenerateConfig& cfg) {
    auto pool = load_table_pool(cfg);
    PipelineEnv env = load_env(cfg);
    Rng root(cfg.seed);
    SamplerState sampler(root.child("sampler").next_u64());
    Rng crng = root.child("chart").child(0);
    std::size_t ti = pool.size() == 1 ? 0 : crng.child("table").next_index(pool.size());

    ChartPlan plan = plan_chart(pool[ti].second, ti, chart_id_for(0), cfg, env, crng, sampler);
    ChartArtifacts art = execute_plan(plan, pool[ti].second, pool[ti].first, cfg, env);

    fs::path out(cfg.out_dir);
    write_file((out / "chart.svg").string(), art.svg);
    write_file((out / "metadata.json").string(), art.metadata.to_json_string());
    if (cfg.with_qa) write_file((out / "qa.jsonl").string(), qa_lines(art.qa));

    std::cout << art.id << ": " << art.metadata.chart_type << " / "
              << art.metadata.variation_id << " on " << art.metadata.template_id
              << " (ink " << round3(art.metadata.ink_ratio) << ")\n";
    std::cout << "wrote " << (out / "chart.svg").string() << "\n";
    return 0;
}

int cmd_batch(const GenerateConfig& cfg, int n) {
    if (n < 1) throw Error(ErrorCode::MalformedInput, "cli", "batch size must be >= 1");
    auto pool = load_table_pool(cfg);
    PipelineEnv env = load_env(cfg);
    Rng root(cfg.seed);
    SamplerState sampler(root.child("sampler").next_u64());

    struct Slot {
        ChartPlan plan;
        std::size_t table = 0;
        bool planned = false;
        FailureRecord failure;
        ChartArtifacts art;
        bool done = false;
    };
    std::vector<Slot> slots(static_cast<std::size_t>(n));

    // Serial decision phase: everything that touches shared state.
    for (std::size_t i = 0; i < slots.size(); ++i) {
        std::string id = chart_id_for(i);
        Rng crng = root.child("chart").child(i);
        std::size_t ti = crng.child("table").next_index(pool.size());
        slots[i].table = ti;
        try {
            slots[i].plan = plan_chart(pool[ti].second, ti, id, cfg, env, crng, sampler);
            slots[i].planned = true;
        } catch (const Error& e) {
            slots[i].failure = {id, error_code_name(e.code()), e.stage(), e.what()};
        }
    }

    // Parallel render phase: pure per-chart work.
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    std::size_t workers = static_cast<std::size_t>(std::clamp(cfg.jobs, 1, static_cast<int>(hw)));
    workers = std::min(workers, slots.size());
    std::atomic<std::size_t> cursor{0};
    auto run = [&]() {
        for (;;) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= slots.size()) return;
            Slot& slot = slots[i];
            if (!slot.planned) continue;
            try {
                slot.art = execute_plan(slot.plan, pool[slot.table].second,
                                        pool[slot.table].first, cfg, env);
                slot.done = true;
            } catch (const Error& e) {
                slot.failure = {slot.plan.id, error_code_name(e.code()), e.stage(), e.what()};
            }
        }
    };
    if (workers <= 1) {
        run();
    } else {
        std::vector<std::thread> threads;
        for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run);
        for (auto& t : threads) t.join();
    }

    // Serial output phase, in chart order.
    fs::path out(cfg.out_dir);
    Manifest manifest;
    manifest.seed = cfg.seed;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        Slot& slot = slots[i];
        if (!slot.done) {
            manifest.failures.push_back(slot.failure);
            json j = {{"error", slot.failure.error},
                      {"stage", slot.failure.stage},
                      {"detail", slot.failure.detail},
                      {"id", slot.failure.id}};
            std::cerr << j.dump() << "\n";
            continue;
        }
        const ChartArtifacts& art = slot.art;
        // Manifest paths are relative to the manifest itself so a batch is
        // byte-reproducible regardless of where the output directory lives.
        std::string svg_name = art.id + ".svg";
        std::string meta_name = art.id + ".metadata.json";
        write_file((out / svg_name).string(), art.svg);
        write_file((out / meta_name).string(), art.metadata.to_json_string());
        if (cfg.with_qa)
            write_file((out / (art.id + ".qa.jsonl")).string(), qa_lines(art.qa));
        manifest.records.push_back({art.id, svg_name, meta_name, art.metadata.chart_type,
                                    art.metadata.variation_id, art.metadata.template_id,
                                    art.metadata.ink_ratio, slot.plan.chart_seed});
    }
    write_file((out / "manifest.json").string(), manifest.to_json_string());

    print_type_counts(manifest.records);
    if (!manifest.failures.empty())
        std::cout << manifest.failures.size() << " of " << n << " charts failed\n";
    if (manifest.records.empty()) {
        std::cerr << json({{"error", "NoRenderedCandidate"},
                           {"stage", "batch"},
                           {"detail", "every chart in the batch failed"}})
                         .dump()
                  << "\n";
        return 1;
    }
    return 0;
}

int cmd_evaluate(const EvaluateOptions& opt) {
    std::string gt = read_file(opt.gt_path);
    std::string pr = read_file(opt.pred_path);
    EvalReport report = evaluate_svg_strings(gt, pr, !opt.exec_failed);

    if (opt.use_judge && !opt.exec_failed) {
        try {
            JudgeConfig jc = opt.judge;
            jc.image_mime = "image/svg+xml";
            double high = judge_high_level(gt, pr, jc);
            report.high_level = high;
            report.overall = (report.low_level + high) / 2.0;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::JudgeUnavailable &&
                e.code() != ErrorCode::MalformedJudgeReply)
                throw;
            print_error_record(e);
            report.flags.push_back(std::string("judge skipped (") +
                                   error_code_name(e.code()) + "); low-level only");
        }
    }

    std::string body = report.to_json_string();
    if (opt.out_path.empty()) std::cout << body;
    else write_file(opt.out_path, body);
    return 0;
}

namespace {

json frequency_json(const std::map<std::string, int>& counts, std::size_t total) {
    json j = json::object();
    for (const auto& [name, c] : counts) {
        j[name] = {{"count", c}, {"pct", total == 0 ? 0.0 : 100.0 * c / total}};
    }
    return j;
}

void print_frequency_table(const char* heading, const std::map<std::string, int>& counts,
                           std::size_t total) {
    std::cout << heading << "\n";
    for (const auto& [name, c] : counts) {
        char pct[32];
        std::snprintf(pct, sizeof pct, "%.1f", total == 0 ? 0.0 : 100.0 * c / total);
        std::cout << "  " << name << "  " << c << "  " << pct << "%\n";
    }
}

} // namespace

int cmd_stats(const std::string& manifest_path, const std::string& out_json_path) {
    Manifest m = Manifest::from_json_string(read_file(manifest_path));
    std::map<std::string, int> types, variations, templates;
    for (const auto& r : m.records) {
        ++types[r.chart_type];
        ++variations[r.variation];
        ++templates[r.template_id];
    }
    std::size_t total = m.records.size();
    print_frequency_table("chart types:", types, total);
    print_frequency_table("variations:", variations, total);
    print_frequency_table("templates:", templates, total);
    std::cout << "total: " << total << " charts, " << m.failures.size() << " failures\n";

    json j;
    j["total"] = total;
    j["failures"] = m.failures.size();
    j["chart_types"] = frequency_json(types, total);
    j["variations"] = frequency_json(variations, total);
    j["templates"] = frequency_json(templates, total);
    std::string body = j.dump(2) + "\n";
    if (out_json_path.empty()) std::cout << body;
    else write_file(out_json_path, body);
    return 0;
}

int cmd_score_qa(const std::string& qa_path, const std::string& predictions_path,
                 const std::string& out_json_path) {
    std::vector<QAPair> pairs;
    {
        std::istringstream in(read_file(qa_path));
        std::string line;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            pairs.push_back(qa_from_json_line(line));
        }
    }
    std::map<std::string, std::string> preds;
    {
        std::istringstream in(read_file(predictions_path));
        std::string line;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            json j;
            try {
                j = json::parse(line);
            } catch (const json::exception& e) {
                throw Error(ErrorCode::MalformedInput, "qa",
                            std::string("bad prediction line: ") + e.what());
            }
            if (!j.contains("id"))
                throw Error(ErrorCode::MalformedInput, "qa", "prediction line lacks id");
            std::string answer;
            if (j.contains("answer"))
                answer = j["answer"].is_string() ? j["answer"].get<std::string>()
                                                 : j["answer"].dump();
            preds[j["id"].get<std::string>()] = answer;
        }
    }

    struct Acc {
        int count = 0;
        double sum = 0;
    };
    std::map<std::string, Acc> by_kind;
    double sum = 0;
    for (const auto& p : pairs) {
        auto it = preds.find(p.chart_id);
        double score = it == preds.end() ? 0.0 : score_qa(p, it->second);
        sum += score;
        Acc& a = by_kind[qa_kind_name(p.kind)];
        ++a.count;
        a.sum += score;
    }

    json j;
    j["total"] = pairs.size();
    j["mean_score"] = pairs.empty() ? 0.0 : sum / pairs.size();
    json kinds = json::object();
    for (const auto& [name, a] : by_kind)
        kinds[name] = {{"count", a.count}, {"mean", a.count == 0 ? 0.0 : a.sum / a.count}};
    j["per_kind"] = kinds;

    std::cout << "scored " << pairs.size() << " pairs, mean "
              << (pairs.empty() ? 0.0 : sum / pairs.size()) << "\n";
    for (const auto& [name, a] : by_kind)
        std::cout << "  " << name << ": " << a.count << " pairs, mean "
                  << (a.count == 0 ? 0.0 : a.sum / a.count) << "\n";
    std::string body = j.dump(2) + "\n";
    if (out_json_path.empty()) std::cout << body;
    else write_file(out_json_path, body);
    return 0;
}

} // namespace foundry
