#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scriptgrove/burst.hpp"
#include "scriptgrove/editlog.hpp"
#include "scriptgrove/graph.hpp"
#include "scriptgrove/json_io.hpp"
#include "scriptgrove/layout.hpp"
#include "scriptgrove/render.hpp"
#include "scriptgrove/segment.hpp"

namespace py = pybind11;
using namespace scriptgrove;

// Structured results cross the boundary as JSON text; the Python package
// decodes them into plain dicts and lists.

namespace {

struct Pipeline {
    EditLog log;
    std::vector<Burst> bursts;
    OpGraph graph;
    SpanningTree tree;
};

Pipeline run(const std::string& jsonl, const std::string& timezone, bool atomic, std::optional<Timestamp> idle_ms)
{
    Pipeline p;
    p.log = parse_log(std::string_view(jsonl));
    CondenseOptions opts;
    opts.idle_threshold_ms = idle_ms;
    p.bursts = atomic ? bursts_from_edits(p.log) : condense(p.log, opts);
    BuildOptions build_opts;
    build_opts.sessions = parse_timezone(timezone);
    p.graph = build(p.bursts, p.log.created_at, build_opts);
    p.tree = spanning_tree(p.graph);
    return p;
}

LayoutParams layout_params(double phototropism, double unit_arc_len, double base_radius,
                           const std::optional<std::string>& palette_json)
{
    LayoutParams p;
    p.phototropism = phototropism;
    p.unit_arc_len = unit_arc_len;
    p.base_radius = base_radius;
    if (palette_json)
        p.palette = palette_from_json(ordered_json::parse(*palette_json));
    p.validate();
    return p;
}

RenderOptions render_options(int width, int height, double margin, const std::string& background,
                             Timestamp interval_ms)
{
    RenderOptions o;
    o.width = width;
    o.height = height;
    o.margin = margin;
    o.background = background;
    o.frame_interval_ms = interval_ms;
    o.validate();
    return o;
}

} // namespace

PYBIND11_MODULE(_scriptgrove, m)
{
    m.doc() = "Keystroke edit logs to operation graphs, tree layouts and SVG";

    py::register_exception<LogError>(m, "LogError", PyExc_ValueError);
    py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);

    m.def("check", [](const std::string& jsonl) {
        auto log = parse_log(std::string_view(jsonl));
        return py::make_tuple(log.edits.size(), replayed_length(log));
    }, py::arg("jsonl"));

    m.def("replay", [](const std::string& jsonl, std::optional<Timestamp> upto) {
        return text_to_utf8(replay_naive(parse_log(std::string_view(jsonl)), upto));
    }, py::arg("jsonl"), py::arg("upto") = py::none());

    m.def("generate", [](std::uint64_t seed, std::size_t ops, double typo_rate) {
        return serialize_log(generate_random_log(seed, ops, typo_rate));
    }, py::arg("seed") = 0, py::arg("ops") = 200, py::arg("typo_rate") = 0.2);

    m.def("condense_json", [](const std::string& jsonl, std::optional<Timestamp> idle_ms) {
        CondenseOptions opts;
        opts.idle_threshold_ms = idle_ms;
        return bursts_to_json(condense(parse_log(std::string_view(jsonl)), opts)).dump();
    }, py::arg("jsonl"), py::arg("idle_ms") = py::none());

    m.def("graph_json", [](const std::string& jsonl, const std::string& timezone, bool atomic) {
        auto p = run(jsonl, timezone, atomic, std::nullopt);
        return graph_to_json(p.graph, p.log.doc_id).dump();
    }, py::arg("jsonl"), py::arg("timezone") = "UTC", py::arg("atomic") = false);

    m.def("layout_json", [](const std::string& jsonl, double phototropism, double unit_arc_len, double base_radius,
                            std::optional<std::string> palette_json, const std::string& timezone) {
        auto params = layout_params(phototropism, unit_arc_len, base_radius, palette_json);
        auto p = run(jsonl, timezone, false, std::nullopt);
        return layout_to_json(make_layout_document(p.log.doc_id, p.graph, p.tree, params)).dump();
    }, py::arg("jsonl"), py::arg("phototropism") = 0.3, py::arg("unit_arc_len") = 2.0, py::arg("base_radius") = 12.0,
       py::arg("palette_json") = py::none(), py::arg("timezone") = "UTC");

    m.def("render_svg", [](const std::string& jsonl, int width, int height, double margin,
                           const std::string& background, double phototropism, double unit_arc_len,
                           double base_radius, std::optional<std::string> palette_json, const std::string& timezone) {
        auto params = layout_params(phototropism, unit_arc_len, base_radius, palette_json);
        auto opts = render_options(width, height, margin, background, 60'000);
        auto p = run(jsonl, timezone, false, std::nullopt);
        py::gil_scoped_release release;
        return render_svg(compute_layout(p.tree, p.graph, params), params, opts);
    }, py::arg("jsonl"), py::arg("width") = 800, py::arg("height") = 800, py::arg("margin") = 20.0,
       py::arg("background") = "#ffffff", py::arg("phototropism") = 0.3, py::arg("unit_arc_len") = 2.0,
       py::arg("base_radius") = 12.0, py::arg("palette_json") = py::none(), py::arg("timezone") = "UTC");

    m.def("render_frames", [](const std::string& jsonl, Timestamp interval_ms, int width, int height,
                              double phototropism, std::optional<std::string> palette_json,
                              const std::string& timezone) {
        auto params = layout_params(phototropism, 2.0, 12.0, palette_json);
        auto opts = render_options(width, height, 20.0, "#ffffff", interval_ms);
        auto p = run(jsonl, timezone, false, std::nullopt);
        py::gil_scoped_release release;
        return render_frames(p.tree, p.graph, params, opts);
    }, py::arg("jsonl"), py::arg("interval_ms") = 60'000, py::arg("width") = 800, py::arg("height") = 800,
       py::arg("phototropism") = 0.3, py::arg("palette_json") = py::none(), py::arg("timezone") = "UTC");

    m.def("segments_json", [](const std::string& jsonl, int depth, const std::string& timezone) {
        auto p = run(jsonl, timezone, false, std::nullopt);
        return segments_to_json(segment_by_branches(p.tree, p.graph, depth)).dump();
    }, py::arg("jsonl"), py::arg("depth") = 1, py::arg("timezone") = "UTC");

    m.def("stats_json", [](const std::string& jsonl, int depth, const std::string& description,
                           const std::string& timezone) {
        auto p = run(jsonl, timezone, false, std::nullopt);
        auto stats = compute_stats(p.log, p.bursts, p.graph, depth);
        stats.description = description;
        return stats_to_json(stats).dump();
    }, py::arg("jsonl"), py::arg("depth") = 1, py::arg("description") = "", py::arg("timezone") = "UTC");

    m.def("arc_size", [](std::size_t chars, double unit_arc_len, double base_radius) {
        auto a = arc_size(chars, unit_arc_len, base_radius);
        return py::make_tuple(a.radius, a.span_angle, a.doublings);
    }, py::arg("chars"), py::arg("unit_arc_len"), py::arg("base_radius"));

    m.def("default_palette", [] {
        const auto& p = default_palette();
        return std::vector<std::string>(p.begin(), p.end());
    });
}
