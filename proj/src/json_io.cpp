#include "scriptgrove/json_io.hpp"

#include <cctype>
#include <cmath>

namespace scriptgrove {

namespace {

const char* kLayoutSchema = "scriptgrove.layout";
const char* kGraphSchema = "scriptgrove.graph";

const ordered_json& require(const ordered_json& obj, const char* key)
{
    if (!obj.is_object())
        throw SchemaError("expected an object while reading '" + std::string(key) + "'");
    auto it = obj.find(key);
    if (it == obj.end())
        throw SchemaError(std::string("missing field '") + key + "'");
    return *it;
}

template <typename T>
T require_as(const ordered_json& obj, const char* key)
{
    const auto& v = require(obj, key);
    try {
        if constexpr (std::is_same_v<T, double>) {
            if (!v.is_number())
                throw SchemaError(std::string("field '") + key + "' must be a number");
        } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
            if (!v.is_number_integer())
                throw SchemaError(std::string("field '") + key + "' must be an integer");
            if constexpr (std::is_unsigned_v<T>) {
                if (v.get<std::int64_t>() < 0)
                    throw SchemaError(std::string("field '") + key + "' must be non-negative");
            }
        }
        return v.get<T>();
    } catch (const nlohmann::json::exception& ex) {
        throw SchemaError(std::string("field '") + key + "': " + ex.what());
    }
}

void check_schema(const ordered_json& doc, const char* schema)
{
    auto name = require_as<std::string>(doc, "schema");
    auto version = require_as<int>(doc, "version");
    if (name != schema)
        throw SchemaError("expected schema '" + std::string(schema) + "', found '" + name + "'");
    if (version != kSchemaVersion) {
        throw SchemaError("unsupported " + name + " version " + std::to_string(version) + " (this build reads version " +
                          std::to_string(kSchemaVersion) + ")");
    }
}

ordered_json point(Vec2 p)
{
    return ordered_json::array({round3(p.x), round3(p.y)});
}

Vec2 point_from(const ordered_json& v)
{
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw SchemaError("expected a point [x, y]");
    return {v[0].get<double>(), v[1].get<double>()};
}

ordered_json node_id_or_null(NodeId id)
{
    return id == kNoNode ? ordered_json(nullptr) : ordered_json(id);
}

NodeId node_id_from(const ordered_json& v)
{
    if (v.is_null())
        return kNoNode;
    if (!v.is_number_unsigned())
        throw SchemaError("expected a node id or null");
    return v.get<NodeId>();
}

bool is_hex_color(const std::string& s)
{
    if (s.size() != 7 || s[0] != '#')
        return false;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (!std::isxdigit(static_cast<unsigned char>(s[i])))
            return false;
    }
    return true;
}

} // namespace

double round3(double v)
{
    double r = std::round(v * 1000.0) / 1000.0;
    return r == 0.0 ? 0.0 : r;
}

std::string dump_artifact(const ordered_json& doc)
{
    return doc.dump(2) + "\n";
}

ordered_json bursts_to_json(std::span<const Burst> bursts)
{
    ordered_json arr = ordered_json::array();
    for (const auto& b : bursts) {
        ordered_json o;
        o["kind"] = to_string(b.kind);
        o["start_time"] = b.start_time;
        o["end_time"] = b.end_time;
        o["anchor_offset"] = b.anchor_offset;
        if (b.kind == EditKind::Insert)
            o["text"] = text_to_utf8(b.text);
        else
            o["length"] = b.length;
        o["atomic_count"] = b.atomic_count;
        arr.push_back(std::move(o));
    }
    return arr;
}

std::vector<Burst> bursts_from_json(const ordered_json& doc)
{
    if (!doc.is_array())
        throw SchemaError("bursts document must be an array");
    std::vector<Burst> out;
    for (const auto& o : doc) {
        Burst b;
        auto kind = require_as<std::string>(o, "kind");
        if (kind == "insert")
            b.kind = EditKind::Insert;
        else if (kind == "delete")
            b.kind = EditKind::Delete;
        else
            throw SchemaError("unknown burst kind '" + kind + "'");
        b.start_time = require_as<Timestamp>(o, "start_time");
        b.end_time = require_as<Timestamp>(o, "end_time");
        b.anchor_offset = require_as<std::size_t>(o, "anchor_offset");
        b.atomic_count = require_as<std::size_t>(o, "atomic_count");
        if (b.kind == EditKind::Insert) {
            try {
                b.text = utf8_to_text(require_as<std::string>(o, "text"));
            } catch (const std::invalid_argument& ex) {
                throw SchemaError(ex.what());
            }
        } else {
            b.length = require_as<std::size_t>(o, "length");
        }
        if (b.start_time > b.end_time || b.atomic_count == 0)
            throw SchemaError("burst times or atomic count out of range");
        out.push_back(std::move(b));
    }
    return out;
}

ordered_json graph_to_json(const OpGraph& g, const std::string& doc_id)
{
    ordered_json doc;
    doc["schema"] = kGraphSchema;
    doc["version"] = kSchemaVersion;
    doc["doc_id"] = doc_id;
    doc["created_at"] = g.created_at();
    doc["root"] = g.root();
    doc["final_text"] = text_to_utf8(reconstruct_text(g));
    ordered_json sessions = ordered_json::array();
    for (const auto& [day, ordinal] : g.session_table())
        sessions.push_back({{"day_start", day}, {"session", ordinal}});
    doc["sessions"] = std::move(sessions);

    ordered_json nodes = ordered_json::array();
    for (const auto& n : g.nodes()) {
        ordered_json o;
        o["id"] = n.id;
        o["kind"] = to_string(n.kind);
        o["start"] = n.start_time;
        o["end"] = n.end_time;
        o["session"] = n.session;
        o["atomic_count"] = n.atomic_count;
        if (n.kind == NodeKind::Insert) {
            o["text"] = text_to_utf8(n.text);
            std::string bits;
            ordered_json deleted_by = ordered_json::array();
            for (std::size_t i = 0; i < n.text.size(); ++i) {
                bits += n.is_live(i) ? '1' : '0';
                deleted_by.push_back(node_id_or_null(n.deleted_by[i]));
            }
            o["liveness"] = bits;
            o["deleted_by"] = std::move(deleted_by);
        } else if (n.kind == NodeKind::Delete) {
            o["deleted_count"] = n.deleted_count;
        }
        ordered_json slots = ordered_json::array();
        for (NodeId s : n.slots)
            slots.push_back(node_id_or_null(s));
        o["slots"] = std::move(slots);
        ordered_json in = ordered_json::array();
        for (const auto& ref : n.in_slots)
            in.push_back(ordered_json::array({ref.node, ref.slot}));
        o["in_slots"] = std::move(in);
        nodes.push_back(std::move(o));
    }
    doc["nodes"] = std::move(nodes);
    return doc;
}

void validate_graph_json(const ordered_json& doc)
{
    check_schema(doc, kGraphSchema);
    require_as<std::string>(doc, "doc_id");
    require_as<Timestamp>(doc, "created_at");
    const auto& nodes = require(doc, "nodes");
    if (!nodes.is_array() || nodes.empty())
        throw SchemaError("graph must contain at least the root node");

    std::vector<std::string> kinds;
    std::vector<std::size_t> expected_in;
    std::vector<std::size_t> seen_in(nodes.size(), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& o = nodes[i];
        if (require_as<std::size_t>(o, "id") != i)
            throw SchemaError("node ids must be dense and in creation order");
        kinds.push_back(require_as<std::string>(o, "kind"));
        const auto& kind = kinds.back();
        const auto& slots = require(o, "slots");
        if (!slots.is_array())
            throw SchemaError("slots must be an array");
        const auto& in = require(o, "in_slots");
        if (!in.is_array())
            throw SchemaError("in_slots must be an array");
        if (require_as<Timestamp>(o, "start") > require_as<Timestamp>(o, "end"))
            throw SchemaError("node " + std::to_string(i) + " ends before it starts");

        if (kind == "root") {
            if (i != 0 || slots.size() != 1 || !in.empty())
                throw SchemaError("root must be node 0 with one slot and no in-edges");
            expected_in.push_back(0);
        } else if (kind == "insert") {
            auto text = utf8_to_text(require_as<std::string>(o, "text"));
            auto bits = require_as<std::string>(o, "liveness");
            const auto& deleted_by = require(o, "deleted_by");
            if (text.empty() || slots.size() != text.size() + 1 || bits.size() != text.size() ||
                !deleted_by.is_array() || deleted_by.size() != text.size())
                throw SchemaError("insert node " + std::to_string(i) + " has inconsistent sizes");
            for (std::size_t c = 0; c < bits.size(); ++c) {
                NodeId d = node_id_from(deleted_by[c]);
                if ((bits[c] == '1') != (d == kNoNode) || (bits[c] != '0' && bits[c] != '1'))
                    throw SchemaError("insert node " + std::to_string(i) + " liveness disagrees with deleted_by");
                if (d != kNoNode && (d >= nodes.size() || nodes[d].value("kind", "") != "delete"))
                    throw SchemaError("character deleted by a non-deletion node");
            }
            expected_in.push_back(1);
        } else if (kind == "delete") {
            auto m = require_as<std::size_t>(o, "deleted_count");
            if (m == 0 || slots.size() != 1)
                throw SchemaError("delete node " + std::to_string(i) + " is malformed");
            expected_in.push_back(m + 1);
        } else {
            throw SchemaError("unknown node kind '" + kind + "'");
        }
        if (in.size() != expected_in.back())
            throw SchemaError("node " + std::to_string(i) + " has the wrong number of in-edges");

        for (const auto& s : slots) {
            NodeId t = node_id_from(s);
            if (t == kNoNode)
                continue;
            if (t <= i || t >= nodes.size())
                throw SchemaError("slot edge from node " + std::to_string(i) + " does not point forward in time");
            ++seen_in[t];
        }
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (seen_in[i] != expected_in[i])
            throw SchemaError("node " + std::to_string(i) + " in-edge count does not match slot references");
    }
}

LayoutDocument make_layout_document(const std::string& doc_id, const OpGraph& g, const SpanningTree& tree,
                                    const LayoutParams& params)
{
    LayoutDocument doc;
    doc.doc_id = doc_id;
    doc.created_at = g.created_at();
    doc.last_time = g.last_time();
    doc.params = params;
    doc.glyphs = compute_layout(tree, g, params);
    for (const auto& glyph : doc.glyphs)
        doc.branch_texts.push_back(text_to_utf8(branch_text(g, tree, glyph.node)));
    return doc;
}

ordered_json layout_to_json(const LayoutDocument& doc)
{
    ordered_json out;
    out["schema"] = kLayoutSchema;
    out["version"] = kSchemaVersion;
    out["doc_id"] = doc.doc_id;
    out["created_at"] = doc.created_at;
    out["last_time"] = doc.last_time;
    const auto& p = doc.params;
    out["params"] = {{"unit_arc_len", round3(p.unit_arc_len)},
                     {"base_radius", round3(p.base_radius)},
                     {"phototropism", round3(p.phototropism)},
                     {"dead_radius_ratio", round3(p.dead_radius_ratio)},
                     {"dead_opacity", round3(p.dead_opacity)},
                     {"up", point(p.up)}};
    out["palette"] = p.palette;

    ordered_json glyphs = ordered_json::array();
    for (std::size_t i = 0; i < doc.glyphs.size(); ++i) {
        const auto& g = doc.glyphs[i];
        ordered_json o;
        o["node"] = g.node;
        o["parent"] = g.parent;
        o["attach_slot"] = g.attach_slot;
        o["depth"] = g.depth;
        o["session"] = g.session;
        o["color_index"] = g.color_index;
        o["char_count"] = g.char_count;
        o["attach"] = point(g.attach_point);
        o["direction"] = point(g.direction);
        o["radius"] = round3(g.radius);
        o["arc_center_angle"] = round3(g.arc_center_angle);
        o["arc_span_angle"] = round3(g.arc_span_angle);
        o["support"] = ordered_json::array({point(g.support_from), point(g.support_to)});
        ordered_json spans = ordered_json::array();
        for (const auto& s : g.spans) {
            spans.push_back({{"begin", s.begin},
                             {"end", s.end},
                             {"live", s.live},
                             {"deleted_by", node_id_or_null(s.deleted_by)},
                             {"radius", round3(s.radius)},
                             {"opacity", round3(s.opacity)}});
        }
        o["spans"] = std::move(spans);
        o["branch_text"] = i < doc.branch_texts.size() ? doc.branch_texts[i] : std::string();
        glyphs.push_back(std::move(o));
    }
    out["glyphs"] = std::move(glyphs);
    return out;
}

LayoutDocument layout_from_json(const ordered_json& in)
{
    check_schema(in, kLayoutSchema);
    LayoutDocument doc;
    doc.doc_id = require_as<std::string>(in, "doc_id");
    doc.created_at = require_as<Timestamp>(in, "created_at");
    doc.last_time = require_as<Timestamp>(in, "last_time");
    const auto& p = require(in, "params");
    doc.params.unit_arc_len = require_as<double>(p, "unit_arc_len");
    doc.params.base_radius = require_as<double>(p, "base_radius");
    doc.params.phototropism = require_as<double>(p, "phototropism");
    doc.params.dead_radius_ratio = require_as<double>(p, "dead_radius_ratio");
    doc.params.dead_opacity = require_as<double>(p, "dead_opacity");
    doc.params.up = point_from(require(p, "up"));
    doc.params.palette = palette_from_json(require(in, "palette"));
    try {
        doc.params.validate();
    } catch (const std::invalid_argument& ex) {
        throw SchemaError(ex.what());
    }

    const auto& glyphs = require(in, "glyphs");
    if (!glyphs.is_array())
        throw SchemaError("glyphs must be an array");
    for (const auto& o : glyphs) {
        GlyphLayout g;
        g.node = require_as<NodeId>(o, "node");
        g.parent = require_as<NodeId>(o, "parent");
        g.attach_slot = require_as<std::uint32_t>(o, "attach_slot");
        g.depth = require_as<int>(o, "depth");
        g.session = require_as<int>(o, "session");
        g.color_index = require_as<int>(o, "color_index");
        g.char_count = require_as<std::size_t>(o, "char_count");
        g.attach_point = point_from(require(o, "attach"));
        g.direction = point_from(require(o, "direction"));
        g.radius = require_as<double>(o, "radius");
        g.arc_center_angle = require_as<double>(o, "arc_center_angle");
        g.arc_span_angle = require_as<double>(o, "arc_span_angle");
        const auto& support = require(o, "support");
        if (!support.is_array() || support.size() != 2)
            throw SchemaError("support must hold two points");
        g.support_from = point_from(support[0]);
        g.support_to = point_from(support[1]);
        std::size_t covered = 0;
        for (const auto& s : require(o, "spans")) {
            ArcSpan span;
            span.begin = require_as<std::size_t>(s, "begin");
            span.end = require_as<std::size_t>(s, "end");
            span.live = require_as<bool>(s, "live");
            span.deleted_by = node_id_from(require(s, "deleted_by"));
            span.radius = require_as<double>(s, "radius");
            span.opacity = require_as<double>(s, "opacity");
            if (span.begin != covered || span.end <= span.begin || span.live != (span.deleted_by == kNoNode))
                throw SchemaError("glyph " + std::to_string(g.node) + " spans do not tile its characters");
            covered = span.end;
            g.spans.push_back(span);
        }
        if (covered != g.char_count || g.color_index < 0 || g.color_index >= static_cast<int>(kPaletteSize))
            throw SchemaError("glyph " + std::to_string(g.node) + " is inconsistent");
        doc.branch_texts.push_back(require_as<std::string>(o, "branch_text"));
        doc.glyphs.push_back(std::move(g));
    }
    return doc;
}

ordered_json segments_to_json(const std::vector<Segment>& segments)
{
    ordered_json arr = ordered_json::array();
    for (const auto& s : segments) {
        arr.push_back({{"branch", s.branch},
                       {"begin", s.begin},
                       {"end", s.end},
                       {"text", text_to_utf8(s.text)},
                       {"color_index", s.color_index},
                       {"depth", s.depth},
                       {"live_chars", s.live_chars},
                       {"dead_chars", s.dead_chars},
                       {"sessions", s.sessions}});
    }
    return arr;
}

ordered_json stats_to_json(const DocStats& s)
{
    ordered_json o;
    o["doc"] = s.doc_id;
    o["description"] = s.description;
    o["words"] = s.words;
    o["operations"] = s.operations;
    o["bursts"] = s.bursts;
    o["sessions"] = s.sessions;
    o["live_chars"] = s.live_chars;
    o["dead_chars"] = s.dead_chars;
    o["deletion_ratio"] = round3(s.deletion_ratio);
    ordered_json branches = ordered_json::array();
    for (const auto& b : s.branches) {
        branches.push_back({{"branch", b.branch},
                            {"operations", b.operations},
                            {"final_chars", b.final_chars},
                            {"density", b.density ? ordered_json(round3(*b.density)) : ordered_json(nullptr)}});
    }
    o["branches"] = std::move(branches);
    return o;
}

Palette palette_from_json(const ordered_json& doc)
{
    if (!doc.is_array() || doc.size() != kPaletteSize)
        throw SchemaError("palette must be an array of exactly 8 colors");
    Palette p;
    for (std::size_t i = 0; i < kPaletteSize; ++i) {
        if (!doc[i].is_string() || !is_hex_color(doc[i].get<std::string>()))
            throw SchemaError("palette entries must be \"#RRGGBB\" strings");
        p[i] = doc[i].get<std::string>();
    }
    return p;
}

} // namespace scriptgrove
