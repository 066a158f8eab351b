#include "scriptgrove/segment.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

namespace scriptgrove {

namespace {

struct BranchInfo {
    std::size_t dead = 0;
    std::size_t operations = 0;
    std::size_t final_chars = 0;
    std::set<int> sessions;
};

std::map<NodeId, BranchInfo> branch_infos(const SpanningTree& tree, const OpGraph& g, int level)
{
    std::map<NodeId, BranchInfo> infos;
    for (const auto& node : g.nodes()) {
        if (node.kind == NodeKind::Insert) {
            auto& info = infos[branch_of(tree, node.id, level)];
            info.dead += node.text.size() - node.live_count();
            info.final_chars += node.live_count();
            info.operations += node.atomic_count;
            info.sessions.insert(node.session);
        } else if (node.kind == NodeKind::Delete) {
            SlotRef anchor = resolve_visual_slot(g, node.in_slots.front());
            infos[branch_of(tree, anchor.node, level)].operations += node.atomic_count;
        }
    }
    return infos;
}

std::string preview(const Text& text, std::size_t limit)
{
    Text shown;
    for (char32_t c : text) {
        if (shown.size() >= limit) {
            shown += U"...";
            break;
        }
        if (c == U'\n')
            shown += U"\\n";
        else if (c == U'\t')
            shown += U"\\t";
        else
            shown.push_back(c);
    }
    return text_to_utf8(shown);
}

// Pads by scalar count, not bytes, so non-ASCII text stays aligned.
std::string pad(const std::string& s, std::size_t width, bool right_align)
{
    std::size_t len = utf8_to_text(s).size();
    std::string fill(width > len ? width - len : 0, ' ');
    return right_align ? fill + s : s + fill;
}

std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                         const std::vector<bool>& right_align)
{
    std::vector<std::size_t> widths(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        widths[c] = utf8_to_text(header[c]).size();
        for (const auto& row : rows)
            widths[c] = std::max(widths[c], utf8_to_text(row[c]).size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
        std::string out;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c > 0)
                out += "  ";
            bool last = c + 1 == cells.size();
            out += last && !right_align[c] ? cells[c] : pad(cells[c], widths[c], right_align[c]);
        }
        return out + "\n";
    };
    std::string out = line(header);
    for (const auto& row : rows)
        out += line(row);
    return out;
}

std::string fixed(double v, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

} // namespace

NodeId branch_of(const SpanningTree& tree, NodeId node, int level)
{
    const int target = level + 1;
    while (tree.at(node).depth > target)
        node = tree.at(node).parent;
    return node;
}

std::vector<Segment> segment_by_branches(const SpanningTree& tree, const OpGraph& g, int level)
{
    if (level < 1)
        throw std::invalid_argument("segmentation depth must be at least 1");

    auto infos = branch_infos(tree, g, level);
    std::vector<Segment> out;
    std::size_t pos = 0;
    for (const auto& item : g.inorder()) {
        if (item.is_slot)
            continue;
        NodeId branch = branch_of(tree, item.node, level);
        char32_t ch = g.node(item.node).text[item.index];
        if (out.empty() || out.back().branch != branch) {
            Segment s;
            s.branch = branch;
            s.begin = pos;
            s.end = pos;
            s.depth = tree.at(branch).depth;
            s.color_index = g.node(branch).session % static_cast<int>(kPaletteSize);
            const auto& info = infos[branch];
            s.dead_chars = info.dead;
            s.sessions.assign(info.sessions.begin(), info.sessions.end());
            out.push_back(std::move(s));
        }
        Segment& s = out.back();
        s.text.push_back(ch);
        ++s.end;
        ++s.live_chars;
        ++pos;
    }
    return out;
}

DocStats compute_stats(const EditLog& log, std::span<const Burst> bursts, const OpGraph& g, int level)
{
    DocStats stats;
    stats.doc_id = log.doc_id;
    stats.operations = log.edits.size();
    stats.bursts = bursts.size();
    stats.sessions = g.session_table().size();
    stats.words = count_words(reconstruct_text(g));
    for (const auto& node : g.nodes()) {
        if (node.kind != NodeKind::Insert)
            continue;
        std::size_t live = node.live_count();
        stats.live_chars += live;
        stats.dead_chars += node.text.size() - live;
    }
    std::size_t total = stats.live_chars + stats.dead_chars;
    stats.deletion_ratio = total == 0 ? 0.0 : static_cast<double>(stats.dead_chars) / static_cast<double>(total);

    if (g.nodes().size() > 1) {
        SpanningTree tree = spanning_tree(g);
        for (const auto& [branch, info] : branch_infos(tree, g, level)) {
            BranchDensity d;
            d.branch = branch;
            d.operations = info.operations;
            d.final_chars = info.final_chars;
            if (info.final_chars > 0)
                d.density = static_cast<double>(info.operations) / static_cast<double>(info.final_chars);
            stats.branches.push_back(d);
        }
    }
    return stats;
}

std::string format_stats_table(const DocStats& s)
{
    std::vector<std::string> header = {"Doc", "Description", "Words", "Operations", "Bursts",
                                       "Sessions", "Live", "Dead", "DeletionRatio"};
    std::vector<std::vector<std::string>> rows = {
        {s.doc_id, s.description.empty() ? "-" : s.description, std::to_string(s.words),
         std::to_string(s.operations), std::to_string(s.bursts), std::to_string(s.sessions),
         std::to_string(s.live_chars), std::to_string(s.dead_chars), fixed(s.deletion_ratio, 3)}};
    std::string out = render_table(header, rows, {false, false, true, true, true, true, true, true, true});

    if (!s.branches.empty()) {
        std::vector<std::vector<std::string>> branch_rows;
        for (const auto& b : s.branches) {
            branch_rows.push_back({std::to_string(b.branch), std::to_string(b.operations),
                                   std::to_string(b.final_chars), b.density ? fixed(*b.density, 3) : "-"});
        }
        out += "\n";
        out += render_table({"Branch", "Operations", "FinalChars", "Density"}, branch_rows,
                            {true, true, true, true});
    }
    return out;
}

std::string format_segments_table(const std::vector<Segment>& segments)
{
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : segments) {
        rows.push_back({std::to_string(s.branch), std::to_string(s.depth),
                        std::to_string(s.begin) + ".." + std::to_string(s.end), std::to_string(s.live_chars),
                        std::to_string(s.dead_chars), std::to_string(s.color_index), preview(s.text, 40)});
    }
    return render_table({"Branch", "Depth", "Range", "Live", "Dead", "Color", "Text"}, rows,
                        {true, true, false, true, true, true, false});
}

} // namespace scriptgrove
