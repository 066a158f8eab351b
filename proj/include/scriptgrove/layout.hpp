#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "scriptgrove/graph.hpp"

namespace scriptgrove {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline constexpr std::size_t kPaletteSize = 8;
using Palette = std::array<std::string, kPaletteSize>;

// Eight seasonal colors, spring to winter.
const Palette& default_palette();

struct LayoutParams {
    double unit_arc_len = 2.0;      // arc length per character, px
    double base_radius = 12.0;      // px
    double phototropism = 0.3;      // 0 = follow the parent arc, 1 = straight up
    double dead_radius_ratio = 0.8;
    double dead_opacity = 0.25;
    Vec2 up{0.0, -1.0};             // screen coordinates, y grows downward
    Palette palette = default_palette();

    // Throws std::invalid_argument.
    void validate() const;
};

/// Characters [begin, end) of a glyph that share a fate: all live, or all
/// removed by the same deletion.
struct ArcSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    bool live = true;
    NodeId deleted_by = kNoNode;
    double radius = 0.0;
    double opacity = 1.0;
    friend bool operator==(const ArcSpan&, const ArcSpan&) = default;
};

/// Geometry of one insertion glyph. The arc is a circle around
/// `attach_point`, centered on `direction`; character i occupies the angular
/// interval starting at arc_start() + i * span / n. Angles follow screen
/// coordinates (atan2 with y down).
struct GlyphLayout {
    NodeId node = kNoNode;
    NodeId parent = kNoNode;
    std::uint32_t attach_slot = 0;
    int depth = 0;
    int session = 0;
    std::size_t char_count = 0;
    Vec2 attach_point;
    Vec2 direction;
    double radius = 0.0;
    double arc_center_angle = 0.0;
    double arc_span_angle = 0.0;
    std::vector<ArcSpan> spans;
    Vec2 support_from;
    Vec2 support_to;
    int color_index = 0;

    double arc_start() const { return arc_center_angle - arc_span_angle / 2.0; }

    friend bool operator==(const GlyphLayout&, const GlyphLayout&) = default;
};

struct ArcSize {
    double radius = 0.0;
    double span_angle = 0.0;
    int doublings = 0;
};

/// Span angle n*u/r, doubling r while the angle would exceed pi.
ArcSize arc_size(std::size_t chars, double unit_arc_len, double base_radius);

/// Blend of the radial direction toward `up`, normalized. Falls back to
/// `up` when the blend cancels out.
Vec2 grow_direction(Vec2 radial, Vec2 up, double phototropism);

const std::string& session_color(int session, const Palette& palette);

/// Glyphs in tree preorder (parents before children).
std::vector<GlyphLayout> compute_layout(const SpanningTree& tree, const OpGraph& g, const LayoutParams& p);

/// Only insertions that started at or before `t`; deletions after `t` are
/// not yet applied, so their characters stay live.
std::vector<GlyphLayout> layout_at_time(const SpanningTree& tree, const OpGraph& g, const LayoutParams& p,
                                        Timestamp t);

} // namespace scriptgrove
