#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "scriptgrove/burst.hpp"
#include "scriptgrove/graph.hpp"
#include "scriptgrove/layout.hpp"
#include "scriptgrove/segment.hpp"

namespace scriptgrove {

using ordered_json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Pretty-printed with two-space indent and a trailing newline.
std::string dump_artifact(const ordered_json& doc);

// bursts.json: a plain array of burst records.
ordered_json bursts_to_json(std::span<const Burst> bursts);
std::vector<Burst> bursts_from_json(const ordered_json& doc);

// graph.json
ordered_json graph_to_json(const OpGraph& g, const std::string& doc_id);
// Structural checks only: kinds, slot counts, liveness bitmaps, in-edge counts.
void validate_graph_json(const ordered_json& doc);

/// layout.json: the viewer's input. Floating-point values are rounded to
/// three decimals before they are written.
struct LayoutDocument {
    std::string doc_id;
    Timestamp created_at = 0;
    Timestamp last_time = 0;
    LayoutParams params;
    std::vector<GlyphLayout> glyphs;
    std::vector<std::string> branch_texts;  // UTF-8, parallel to glyphs
};

LayoutDocument make_layout_document(const std::string& doc_id, const OpGraph& g, const SpanningTree& tree,
                                    const LayoutParams& params);
ordered_json layout_to_json(const LayoutDocument& doc);
LayoutDocument layout_from_json(const ordered_json& doc);

ordered_json segments_to_json(const std::vector<Segment>& segments);
ordered_json stats_to_json(const DocStats& stats);

// A JSON array of exactly eight "#RRGGBB" strings.
Palette palette_from_json(const ordered_json& doc);

double round3(double v);

} // namespace scriptgrove
