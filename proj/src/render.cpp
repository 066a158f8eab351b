#include "scriptgrove/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace scriptgrove {

namespace {

struct Box {
    double x0 = std::numeric_limits<double>::infinity();
    double y0 = std::numeric_limits<double>::infinity();
    double x1 = -std::numeric_limits<double>::infinity();
    double y1 = -std::numeric_limits<double>::infinity();

    void add(Vec2 p)
    {
        x0 = std::min(x0, p.x);
        y0 = std::min(y0, p.y);
        x1 = std::max(x1, p.x);
        y1 = std::max(y1, p.y);
    }
    bool empty() const { return x0 > x1; }
};

Vec2 polar(Vec2 center, double radius, double angle)
{
    return {center.x + radius * std::cos(angle), center.y + radius * std::sin(angle)};
}

struct SpanArc {
    double from;
    double to;
};

SpanArc span_angles(const GlyphLayout& g, const ArcSpan& s)
{
    double per_char = g.arc_span_angle / static_cast<double>(g.char_count);
    return {g.arc_start() + per_char * static_cast<double>(s.begin),
            g.arc_start() + per_char * static_cast<double>(s.end)};
}

void add_arc(Box& box, Vec2 center, double radius, SpanArc arc)
{
    box.add(polar(center, radius, arc.from));
    box.add(polar(center, radius, arc.to));
    // Axis extremes inside the sweep.
    constexpr double quarter = std::numbers::pi / 2.0;
    for (double k = std::ceil(arc.from / quarter); k * quarter <= arc.to; k += 1.0)
        box.add(polar(center, radius, k * quarter));
}

Box bounds(const std::vector<GlyphLayout>& layout)
{
    Box box;
    for (const auto& g : layout) {
        box.add(g.support_from);
        box.add(g.support_to);
        for (const auto& s : g.spans)
            add_arc(box, g.attach_point, s.radius, span_angles(g, s));
    }
    return box;
}

struct Viewport {
    double scale = 1.0;
    double dx = 0.0;
    double dy = 0.0;

    Vec2 map(Vec2 p) const { return {p.x * scale + dx, p.y * scale + dy}; }
};

Viewport fit(const Box& box, const RenderOptions& o)
{
    Viewport v;
    double avail_w = std::max(1.0, o.width - 2.0 * o.margin);
    double avail_h = std::max(1.0, o.height - 2.0 * o.margin);
    double bw = box.x1 - box.x0;
    double bh = box.y1 - box.y0;
    double sx = bw > 0.0 ? avail_w / bw : std::numeric_limits<double>::infinity();
    double sy = bh > 0.0 ? avail_h / bh : std::numeric_limits<double>::infinity();
    v.scale = std::min(sx, sy);
    if (!std::isfinite(v.scale))
        v.scale = 1.0;
    v.dx = o.width / 2.0 - (box.x0 + bw / 2.0) * v.scale;
    v.dy = o.height / 2.0 - (box.y0 + bh / 2.0) * v.scale;
    return v;
}

std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

void RenderOptions::validate() const
{
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("canvas width and height must be positive");
    if (margin < 0.0)
        throw std::invalid_argument("margin must be non-negative");
}

std::string format_coord(double v)
{
    double r = std::round(v * 1000.0) / 1000.0;
    if (r == 0.0)
        r = 0.0;  // drops the sign of -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", r);
    std::string s(buf);
    while (s.back() == '0')
        s.pop_back();
    if (s.back() == '.')
        s.pop_back();
    if (s == "-0")
        s = "0";
    return s;
}

std::string render_svg(const std::vector<GlyphLayout>& layout, const LayoutParams& params,
                       const RenderOptions& o)
{
    o.validate();
    const std::string w = std::to_string(o.width);
    const std::string h = std::to_string(o.height);

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
    svg << "  <path id=\"background\" d=\"M0 0H" << w << "V" << h << "H0Z\" fill=\""
        << xml_escape(o.background) << "\"/>\n";

    Box box = bounds(layout);
    if (!box.empty()) {
        Viewport vp = fit(box, o);
        auto pt = [&](Vec2 p) {
            Vec2 s = vp.map(p);
            return format_coord(s.x) + ' ' + format_coord(s.y);
        };
        for (const auto& g : layout) {
            svg << "  <g id=\"n" << g.node << "\" class=\"glyph\" stroke=\""
                << xml_escape(session_color(g.session, params.palette)) << "\" stroke-width=\""
                << format_coord(o.stroke_width) << "\" fill=\"none\" stroke-linecap=\"round\">\n";
            Vec2 a = vp.map(g.support_from);
            Vec2 b = vp.map(g.support_to);
            svg << "    <line class=\"support\" x1=\"" << format_coord(a.x) << "\" y1=\"" << format_coord(a.y)
                << "\" x2=\"" << format_coord(b.x) << "\" y2=\"" << format_coord(b.y) << "\"/>\n";
            for (const auto& s : g.spans) {
                SpanArc arc = span_angles(g, s);
                std::string r = format_coord(s.radius * vp.scale);
                bool large = arc.to - arc.from > std::numbers::pi;
                svg << "    <path class=\"" << (s.live ? "live" : "dead") << "\" d=\"M"
                    << pt(polar(g.attach_point, s.radius, arc.from)) << "A" << r << ' ' << r << " 0 "
                    << (large ? 1 : 0) << " 1 " << pt(polar(g.attach_point, s.radius, arc.to)) << '"';
                if (!s.live)
                    svg << " opacity=\"" << format_coord(s.opacity) << '"';
                svg << "/>\n";
            }
            if (o.include_labels) {
                svg << "    <text x=\"" << format_coord(b.x) << "\" y=\"" << format_coord(b.y)
                    << "\" font-size=\"8\" stroke=\"none\" fill=\"#000000\">" << g.node << "</text>\n";
            }
            svg << "  </g>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

std::vector<Timestamp> frame_times(Timestamp created_at, Timestamp last, Timestamp interval)
{
    if (interval <= 0)
        throw std::invalid_argument("frame interval must be positive");
    Timestamp span = std::max<Timestamp>(0, last - created_at);
    Timestamp steps = (span + interval - 1) / interval;
    std::vector<Timestamp> times;
    times.reserve(static_cast<std::size_t>(steps) + 1);
    for (Timestamp k = 0; k <= steps; ++k)
        times.push_back(std::min(created_at + k * interval, std::max(last, created_at)));
    return times;
}

std::vector<std::string> render_frames(const SpanningTree& tree, const OpGraph& g, const LayoutParams& params,
                                       const RenderOptions& options)
{
    options.validate();
    auto times = frame_times(g.created_at(), g.last_time(), options.frame_interval_ms);
    std::vector<std::string> frames(times.size());

    std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, frames.size());
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < times.size(); i += workers)
                frames[i] = render_svg(layout_at_time(tree, g, params, times[i]), params, options);
        }));
    }
    for (auto& job : jobs)
        job.get();
    return frames;
}

} // namespace scriptgrove
