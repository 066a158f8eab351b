#include "scriptgrove/layout.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace scriptgrove {

namespace {

std::vector<ArcSpan> arc_spans(const OpNode& node, const ArcSize& size, const LayoutParams& p,
                               const OpGraph& g, std::optional<Timestamp> cutoff)
{
    auto fate = [&](std::size_t i) {
        NodeId d = node.deleted_by[i];
        if (d != kNoNode && cutoff && g.node(d).start_time > *cutoff)
            return kNoNode;
        return d;
    };

    std::vector<ArcSpan> spans;
    const std::size_t n = node.text.size();
    std::size_t begin = 0;
    while (begin < n) {
        NodeId d = fate(begin);
        std::size_t end = begin + 1;
        while (end < n && fate(end) == d)
            ++end;
        ArcSpan span;
        span.begin = begin;
        span.end = end;
        span.live = d == kNoNode;
        span.deleted_by = d;
        span.radius = span.live ? size.radius : size.radius * p.dead_radius_ratio;
        span.opacity = span.live ? 1.0 : p.dead_opacity;
        spans.push_back(span);
        begin = end;
    }
    return spans;
}

std::vector<GlyphLayout> layout_impl(const SpanningTree& tree, const OpGraph& g, const LayoutParams& p,
                                     std::optional<Timestamp> cutoff)
{
    p.validate();
    std::vector<GlyphLayout> out;
    // Index into `out` by node id, for parent lookups.
    std::vector<std::size_t> slot_of(g.nodes().size(), SIZE_MAX);

    for (NodeId id : tree.preorder()) {
        const OpNode& node = g.node(id);
        if (node.kind != NodeKind::Insert)
            continue;
        if (cutoff && node.start_time > *cutoff)
            continue;
        const auto& entry = tree.at(id);

        GlyphLayout glyph;
        glyph.node = id;
        glyph.parent = entry.parent;
        glyph.attach_slot = entry.attach_slot;
        glyph.depth = entry.depth;
        glyph.session = node.session;
        glyph.char_count = node.text.size();
        glyph.color_index = node.session % static_cast<int>(kPaletteSize);

        if (entry.parent == tree.root) {
            glyph.attach_point = {0.0, 0.0};
            glyph.direction = grow_direction(p.up, p.up, p.phototropism);
        } else {
            const GlyphLayout& parent = out[slot_of[entry.parent]];
            double angle = parent.arc_start() + entry.attach_fraction * parent.arc_span_angle;
            Vec2 radial{std::cos(angle), std::sin(angle)};
            glyph.attach_point = {parent.attach_point.x + parent.radius * radial.x,
                                  parent.attach_point.y + parent.radius * radial.y};
            glyph.direction = grow_direction(radial, p.up, p.phototropism);
        }

        ArcSize size = arc_size(node.text.size(), p.unit_arc_len, p.base_radius);
        glyph.radius = size.radius;
        glyph.arc_span_angle = size.span_angle;
        glyph.arc_center_angle = std::atan2(glyph.direction.y, glyph.direction.x);
        glyph.spans = arc_spans(node, size, p, g, cutoff);
        glyph.support_from = glyph.attach_point;
        glyph.support_to = {glyph.attach_point.x + size.radius * glyph.direction.x,
                            glyph.attach_point.y + size.radius * glyph.direction.y};

        slot_of[id] = out.size();
        out.push_back(std::move(glyph));
    }
    return out;
}

} // namespace

const Palette& default_palette()
{
    static const Palette palette = {"#7CB342", "#C0CA33", "#FDD835", "#FB8C00",
                                    "#E53935", "#8E24AA", "#3949AB", "#039BE5"};
    return palette;
}

void LayoutParams::validate() const
{
    if (!(unit_arc_len > 0.0) || !std::isfinite(unit_arc_len))
        throw std::invalid_argument("unit arc length must be positive");
    if (!(base_radius > 0.0) || !std::isfinite(base_radius))
        throw std::invalid_argument("base radius must be positive");
    if (!(phototropism >= 0.0 && phototropism <= 1.0))
        throw std::invalid_argument("phototropism must lie in [0, 1]");
    if (!(dead_radius_ratio > 0.0 && dead_radius_ratio <= 1.0))
        throw std::invalid_argument("dead radius ratio must lie in (0, 1]");
    if (!(dead_opacity >= 0.0 && dead_opacity <= 1.0))
        throw std::invalid_argument("dead opacity must lie in [0, 1]");
    if (std::hypot(up.x, up.y) == 0.0)
        throw std::invalid_argument("up vector must be non-zero");
}

ArcSize arc_size(std::size_t chars, double unit_arc_len, double base_radius)
{
    ArcSize size;
    size.radius = base_radius;
    const double arc_len = static_cast<double>(chars) * unit_arc_len;
    size.span_angle = arc_len / size.radius;
    while (size.span_angle > std::numbers::pi) {
        size.radius *= 2.0;
        size.span_angle = arc_len / size.radius;
        ++size.doublings;
    }
    return size;
}

Vec2 grow_direction(Vec2 radial, Vec2 up, double phototropism)
{
    Vec2 v{(1.0 - phototropism) * radial.x + phototropism * up.x,
           (1.0 - phototropism) * radial.y + phototropism * up.y};
    double len = std::hypot(v.x, v.y);
    if (len < 1e-12) {
        double ul = std::hypot(up.x, up.y);
        return {up.x / ul, up.y / ul};
    }
    return {v.x / len, v.y / len};
}

const std::string& session_color(int session, const Palette& palette)
{
    if (session < 0)
        throw std::invalid_argument("session ordinal must be non-negative");
    return palette[static_cast<std::size_t>(session) % kPaletteSize];
}

std::vector<GlyphLayout> compute_layout(const SpanningTree& tree, const OpGraph& g, const LayoutParams& p)
{
    return layout_impl(tree, g, p, std::nullopt);
}

std::vector<GlyphLayout> layout_at_time(const SpanningTree& tree, const OpGraph& g, const LayoutParams& p,
                                        Timestamp t)
{
    return layout_impl(tree, g, p, t);
}

} // namespace scriptgrove
