#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "scriptgrove/layout.hpp"

namespace scriptgrove {

struct RenderOptions {
    int width = 800;
    int height = 800;
    std::string background = "#ffffff";
    double margin = 20.0;
    double stroke_width = 1.5;
    Timestamp frame_interval_ms = 60'000;
    bool include_labels = false;  // node ids as <text>, for debugging

    void validate() const;
};

/// SVG 1.1 document for a layout. Geometry is fitted uniformly into the
/// canvas minus the margin, and every coordinate is rounded to three
/// decimals, so equal inputs produce equal bytes. Glyph groups carry
/// id="n<node id>" and come in tree preorder, so children paint over their
/// parents. An empty layout yields just the background.
std::string render_svg(const std::vector<GlyphLayout>& layout, const LayoutParams& params,
                       const RenderOptions& options);

/// Instants at which animation frames are taken: created_at, then every
/// interval, with the last one clamped to the final edit. Count is
/// ceil(span / interval) + 1.
std::vector<Timestamp> frame_times(Timestamp created_at, Timestamp last, Timestamp interval);

/// One SVG per frame time; frames are rendered on worker threads.
std::vector<std::string> render_frames(const SpanningTree& tree, const OpGraph& g, const LayoutParams& params,
                                       const RenderOptions& options);

// Fixed-point with up to three decimals, no trailing zeros, never "-0".
std::string format_coord(double v);

} // namespace scriptgrove
