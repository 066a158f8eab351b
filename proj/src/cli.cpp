#include "scriptgrove/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "scriptgrove/burst.hpp"
#include "scriptgrove/editlog.hpp"
#include "scriptgrove/graph.hpp"
#include "scriptgrove/json_io.hpp"
#include "scriptgrove/layout.hpp"
#include "scriptgrove/render.hpp"
#include "scriptgrove/segment.hpp"

namespace scriptgrove::cli {

namespace {

namespace fs = std::filesystem;

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string input = "-";
    std::string output;
    std::string timezone = Defaults::timezone;
    bool atomic = false;
    std::optional<long long> idle_ms;

    double kappa = Defaults::phototropism;
    double unit = Defaults::unit_arc_len;
    double radius = Defaults::base_radius;
    std::string palette_file;

    int width = Defaults::width;
    int height = Defaults::height;
    double margin = Defaults::margin;
    std::string background = Defaults::background;
    bool labels = false;
    long long interval_ms = Defaults::frame_interval_ms;

    int depth = Defaults::depth;
    std::string format = "json";
    std::string description;

    unsigned long long seed = Defaults::seed;
    std::size_t ops = Defaults::ops;
    double typo_rate = Defaults::typo_rate;
};

// Everything downstream of the log, computed once per invocation.
struct Pipeline {
    EditLog log;
    std::vector<Burst> bursts;
    OpGraph graph;
    SpanningTree tree;
};

class Io {
public:
    Io(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

    std::string read(const std::string& path)
    {
        if (path == "-")
            return {std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>()};
        std::ifstream f(path, std::ios::binary);
        if (!f) {
            std::error_code ec;
            throw DataError("cannot open '" + path + "': " +
                            (fs::exists(path, ec) ? "permission denied" : "file not found"));
        }
        return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
    }

    void write(const std::string& path, const std::string& data)
    {
        if (path == "-") {
            out_ << data;
            out_.flush();
            return;
        }
        fs::path p(path);
        if (p.has_parent_path()) {
            std::error_code ec;
            fs::create_directories(p.parent_path(), ec);
        }
        std::ofstream f(p, std::ios::binary | std::ios::trunc);
        if (!f)
            throw DataError("cannot write '" + path + "'");
        f << data;
        if (!f)
            throw DataError("failed writing '" + path + "'");
    }

    void make_dir(const std::string& path)
    {
        std::error_code ec;
        fs::create_directories(path, ec);
        if (ec)
            throw DataError("cannot create directory '" + path + "': " + ec.message());
    }

private:
    std::istream& in_;
    std::ostream& out_;
};

EditLog load_log(Io& io, const std::string& path)
{
    return parse_log(std::string_view(io.read(path)));
}

Pipeline run_pipeline(Io& io, const Config& c)
{
    Pipeline p;
    p.log = load_log(io, c.input);
    CondenseOptions condense_opts;
    if (c.idle_ms)
        condense_opts.idle_threshold_ms = *c.idle_ms;
    p.bursts = c.atomic ? bursts_from_edits(p.log) : condense(p.log, condense_opts);
    BuildOptions build_opts;
    build_opts.sessions = parse_timezone(c.timezone);
    p.graph = build(p.bursts, p.log.created_at, build_opts);
    p.tree = spanning_tree(p.graph);
    return p;
}

LayoutParams layout_params(Io& io, const Config& c)
{
    LayoutParams p;
    p.phototropism = c.kappa;
    p.unit_arc_len = c.unit;
    p.base_radius = c.radius;
    std::string palette_path = c.palette_file;
    if (palette_path.empty()) {
        if (const char* env = std::getenv(kPaletteEnv))
            palette_path = env;
    }
    if (!palette_path.empty()) {
        auto text = io.read(palette_path);
        auto doc = ordered_json::parse(text, nullptr, false);
        if (doc.is_discarded())
            throw DataError("palette file '" + palette_path + "' is not valid JSON");
        p.palette = palette_from_json(doc);
    }
    p.validate();
    return p;
}

RenderOptions render_options(const Config& c)
{
    RenderOptions o;
    o.width = c.width;
    o.height = c.height;
    o.margin = c.margin;
    o.background = c.background;
    o.include_labels = c.labels;
    o.frame_interval_ms = c.interval_ms;
    return o;
}

std::string frame_name(std::size_t index)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04zu.svg", index);
    return buf;
}

void add_input(CLI::App* cmd, Config& c)
{
    cmd->add_option("input", c.input, "Edit log (JSONL); '-' reads stdin")->required();
}

void add_pipeline_flags(CLI::App* cmd, Config& c)
{
    add_input(cmd, c);
    cmd->add_option("--timezone", c.timezone, "Session day boundaries: UTC or +HH:MM")
        ->check(CLI::Validator(
            [](std::string& tz) {
                try {
                    parse_timezone(tz);
                    return std::string();
                } catch (const std::invalid_argument& ex) {
                    return std::string(ex.what());
                }
            },
            "TZ"));
    cmd->add_flag("--atomic", c.atomic, "Build from atomic edits instead of bursts");
    cmd->add_option("--idle-ms", c.idle_ms, "Close bursts after this many idle milliseconds")
        ->check(CLI::NonNegativeNumber);
}

void add_layout_flags(CLI::App* cmd, Config& c)
{
    cmd->add_option("--kappa", c.kappa, "Phototropism factor")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--unit", c.unit, "Arc length per character (px)")->check(CLI::PositiveNumber);
    cmd->add_option("--radius", c.radius, "Base arc radius (px)")->check(CLI::PositiveNumber);
    cmd->add_option("--palette", c.palette_file, "JSON array of eight #RRGGBB colors");
}

void add_render_flags(CLI::App* cmd, Config& c)
{
    cmd->add_option("--width", c.width, "Canvas width (px)")->check(CLI::PositiveNumber);
    cmd->add_option("--height", c.height, "Canvas height (px)")->check(CLI::PositiveNumber);
    cmd->add_option("--margin", c.margin, "Canvas margin (px)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--background", c.background, "Background color");
    cmd->add_flag("--labels", c.labels, "Label glyphs with node ids");
}

void add_format_flag(CLI::App* cmd, Config& c)
{
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "table"}));
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    Config c;
    CLI::App app{"Keystroke edit logs to operation graphs, bursts and tree glyph renderings", "scriptgrove"};
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check", "Validate an edit log");
    add_input(check, c);

    auto* condense_cmd = app.add_subcommand("condense", "Emit linear keystroke bursts (bursts.json)");
    add_input(condense_cmd, c);
    condense_cmd->add_option("--idle-ms", c.idle_ms, "Close bursts after this many idle milliseconds")
        ->check(CLI::NonNegativeNumber);
    condense_cmd->add_option("-o,--output", c.output, "Output path")->default_str("-");

    auto* build_cmd = app.add_subcommand("build", "Emit the operation graph (graph.json)");
    add_pipeline_flags(build_cmd, c);
    build_cmd->add_option("-o,--output", c.output, "Output path")->default_str("-");

    auto* render_cmd = app.add_subcommand("render", "Render the final tree as SVG");
    add_pipeline_flags(render_cmd, c);
    add_layout_flags(render_cmd, c);
    add_render_flags(render_cmd, c);
    render_cmd->add_option("-o,--output", c.output, "Output path (default <doc_id>.svg)");

    auto* frames_cmd = app.add_subcommand("frames", "Render animation frames as numbered SVGs");
    add_pipeline_flags(frames_cmd, c);
    add_layout_flags(frames_cmd, c);
    add_render_flags(frames_cmd, c);
    frames_cmd->add_option("--interval", c.interval_ms, "Milliseconds between frames")->check(CLI::PositiveNumber);
    frames_cmd->add_option("-o,--output", c.output, "Output directory (default <doc_id>.frames)");

    auto* segment_cmd = app.add_subcommand("segment", "Segment the final text by tree branches");
    add_pipeline_flags(segment_cmd, c);
    segment_cmd->add_option("--depth", c.depth, "Cut level below the first insertion")->check(CLI::Range(1, 1 << 20));
    add_format_flag(segment_cmd, c);
    segment_cmd->add_option("-o,--output", c.output, "Output path")->default_str("-");

    auto* stats_cmd = app.add_subcommand("stats", "Writing-process statistics");
    add_pipeline_flags(stats_cmd, c);
    stats_cmd->add_option("--depth", c.depth, "Cut level for per-branch density")->check(CLI::Range(1, 1 << 20));
    stats_cmd->add_option("--description", c.description, "Free-text description column");
    add_format_flag(stats_cmd, c);
    stats_cmd->add_option("-o,--output", c.output, "Output path")->default_str("-");

    auto* export_cmd = app.add_subcommand("export", "Write layout.json and graph.json for the viewer");
    add_pipeline_flags(export_cmd, c);
    add_layout_flags(export_cmd, c);
    export_cmd->add_option("-o,--output", c.output, "Output directory; '-' prints both as one JSON object")
        ->default_str(".");

    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic edit log");
    gen_cmd->add_option("--seed", c.seed, "Random seed");
    gen_cmd->add_option("--ops", c.ops, "Number of atomic edits");
    gen_cmd->add_option("--typo-rate", c.typo_rate, "Probability of a corrected typo per typed word")
        ->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_option("-o,--output", c.output, "Output path")->default_str("-");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    Io io(in, out);
    auto output_or = [&](const std::string& fallback) { return c.output.empty() ? fallback : c.output; };

    try {
        if (*check) {
            auto log = load_log(io, c.input);
            out << log.edits.size() << (log.edits.size() == 1 ? " edit" : " edits") << ", final length "
                << replayed_length(log) << "\n";
        } else if (*condense_cmd) {
            auto log = load_log(io, c.input);
            CondenseOptions opts;
            if (c.idle_ms)
                opts.idle_threshold_ms = *c.idle_ms;
            io.write(output_or("-"), dump_artifact(bursts_to_json(condense(log, opts))));
        } else if (*build_cmd) {
            auto p = run_pipeline(io, c);
            io.write(output_or("-"), dump_artifact(graph_to_json(p.graph, p.log.doc_id)));
        } else if (*render_cmd) {
            auto params = layout_params(io, c);
            auto p = run_pipeline(io, c);
            auto svg = render_svg(compute_layout(p.tree, p.graph, params), params, render_options(c));
            io.write(output_or(p.log.doc_id + ".svg"), svg);
        } else if (*frames_cmd) {
            auto params = layout_params(io, c);
            auto p = run_pipeline(io, c);
            auto frames = render_frames(p.tree, p.graph, params, render_options(c));
            auto dir = output_or(p.log.doc_id + ".frames");
            io.make_dir(dir);
            for (std::size_t i = 0; i < frames.size(); ++i)
                io.write((fs::path(dir) / frame_name(i)).string(), frames[i]);
            err << frames.size() << " frames written to " << dir << "\n";
        } else if (*segment_cmd) {
            auto p = run_pipeline(io, c);
            auto segments = segment_by_branches(p.tree, p.graph, c.depth);
            io.write(output_or("-"), c.format == "table" ? format_segments_table(segments)
                                                         : dump_artifact(segments_to_json(segments)));
        } else if (*stats_cmd) {
            auto p = run_pipeline(io, c);
            auto stats = compute_stats(p.log, p.bursts, p.graph, c.depth);
            stats.description = c.description;
            io.write(output_or("-"),
                     c.format == "table" ? format_stats_table(stats) : dump_artifact(stats_to_json(stats)));
        } else if (*export_cmd) {
            auto params = layout_params(io, c);
            auto p = run_pipeline(io, c);
            auto layout = layout_to_json(make_layout_document(p.log.doc_id, p.graph, p.tree, params));
            auto graph = graph_to_json(p.graph, p.log.doc_id);
            auto dir = output_or(".");
            if (dir == "-") {
                ordered_json both;
                both["layout"] = std::move(layout);
                both["graph"] = std::move(graph);
                io.write("-", dump_artifact(both));
            } else {
                io.make_dir(dir);
                io.write((fs::path(dir) / "layout.json").string(), dump_artifact(layout));
                io.write((fs::path(dir) / "graph.json").string(), dump_artifact(graph));
            }
        } else if (*gen_cmd) {
            auto log = generate_random_log(c.seed, c.ops, c.typo_rate);
            io.write(output_or("-"), serialize_log(log));
        }
    } catch (const LogError& e) {
        err << "error: " << c.input << ": " << e.what() << "\n";
        return kExitDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitDataError;
    }
    return kExitOk;
}

} // namespace scriptgrove::cli
