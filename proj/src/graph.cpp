#include "scriptgrove/graph.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>

namespace scriptgrove {

namespace {

constexpr Timestamp kDayMs = 86'400'000;

Timestamp floor_div(Timestamp a, Timestamp b)
{
    Timestamp q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

std::string poi_message(std::size_t poi, std::size_t count, std::size_t length)
{
    std::string msg = "POI " + std::to_string(poi);
    if (count > 0)
        msg += " with deletion of " + std::to_string(count);
    return msg + " is out of range for document length " + std::to_string(length);
}

} // namespace

std::string_view to_string(NodeKind kind)
{
    switch (kind) {
    case NodeKind::Root: return "root";
    case NodeKind::Insert: return "insert";
    case NodeKind::Delete: return "delete";
    }
    return "?";
}

std::size_t OpNode::live_count() const
{
    return static_cast<std::size_t>(std::count(deleted_by.begin(), deleted_by.end(), kNoNode));
}

PoiOutOfRange::PoiOutOfRange(std::size_t poi, std::size_t count, std::size_t length)
    : std::out_of_range(poi_message(poi, count, length))
{
}

Timestamp SessionRule::day_start(Timestamp t) const
{
    Timestamp offset = static_cast<Timestamp>(utc_offset_minutes) * 60'000;
    return floor_div(t + offset, kDayMs) * kDayMs - offset;
}

SessionRule parse_timezone(std::string_view tz)
{
    if (tz == "UTC" || tz == "utc" || tz == "Z" || tz == "GMT")
        return {};
    auto bad = [&] { return std::invalid_argument("unsupported timezone '" + std::string(tz) +
                                                  "' (use UTC or +HH:MM)"); };
    if (tz.size() < 5 || (tz[0] != '+' && tz[0] != '-'))
        throw bad();
    std::string digits;
    for (char c : tz.substr(1)) {
        if (c == ':')
            continue;
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw bad();
        digits += c;
    }
    if (digits.size() != 4 || (tz.size() == 6 && tz[3] != ':'))
        throw bad();
    int hours = std::stoi(digits.substr(0, 2));
    int minutes = std::stoi(digits.substr(2, 2));
    if (hours > 14 || minutes > 59)
        throw bad();
    int total = hours * 60 + minutes;
    return {tz[0] == '-' ? -total : total};
}

OpGraph::OpGraph(Timestamp created_at)
{
    OpNode root;
    root.id = 0;
    root.kind = NodeKind::Root;
    root.start_time = root.end_time = created_at;
    root.slots.assign(1, kNoNode);
    nodes_.push_back(std::move(root));
    inorder_.push_back({0, 0, true});
}

NodeId OpGraph::add_node(OpNode node)
{
    node.id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(std::move(node));
    return nodes_.back().id;
}

NodeId OpGraph::apply_insert(std::size_t poi, TextView text, Timestamp start, Timestamp end,
                             int session, std::size_t atomic_count)
{
    if (text.empty())
        throw std::invalid_argument("insertion text must be non-empty");
    if (poi > length())
        throw PoiOutOfRange(poi, 0, length());

    const std::size_t pos = 2 * poi;
    const Item parent = inorder_[pos];
    assert(parent.is_slot);

    OpNode node;
    node.kind = NodeKind::Insert;
    node.start_time = start;
    node.end_time = end;
    node.session = session;
    node.atomic_count = atomic_count;
    node.text = Text(text);
    node.deleted_by.assign(text.size(), kNoNode);
    node.slots.assign(text.size() + 1, kNoNode);
    node.in_slots.push_back({parent.node, parent.index});
    NodeId id = add_node(std::move(node));
    nodes_[parent.node].slots[parent.index] = id;

    std::vector<Item> opened;
    opened.reserve(2 * text.size() + 1);
    for (std::uint32_t i = 0; i < text.size(); ++i) {
        opened.push_back({id, i, true});
        opened.push_back({id, i, false});
    }
    opened.push_back({id, static_cast<std::uint32_t>(text.size()), true});

    inorder_[pos] = opened.front();
    inorder_.insert(inorder_.begin() + static_cast<std::ptrdiff_t>(pos) + 1, opened.begin() + 1,
                    opened.end());
    return id;
}

NodeId OpGraph::apply_delete(std::size_t poi, std::size_t count, Timestamp start, Timestamp end,
                             int session, std::size_t atomic_count)
{
    if (count == 0)
        throw std::invalid_argument("deletion must remove at least one character");
    if (poi > length() || count > length() - poi)
        throw PoiOutOfRange(poi, count, length());

    const std::size_t first = 2 * poi;
    const std::size_t last = 2 * (poi + count);  // inclusive, a slot

    OpNode node;
    node.kind = NodeKind::Delete;
    node.start_time = start;
    node.end_time = end;
    node.session = session;
    node.atomic_count = atomic_count;
    node.deleted_count = count;
    node.slots.assign(1, kNoNode);
    node.in_slots.reserve(count + 1);
    const NodeId id = static_cast<NodeId>(nodes_.size());

    for (std::size_t k = first; k <= last; ++k) {
        const Item& item = inorder_[k];
        OpNode& owner = nodes_[item.node];
        if (item.is_slot) {
            owner.slots[item.index] = id;
            node.in_slots.push_back({item.node, item.index});
        } else {
            owner.deleted_by[item.index] = id;
        }
    }
    add_node(std::move(node));

    inorder_[first] = {id, 0, true};
    inorder_.erase(inorder_.begin() + static_cast<std::ptrdiff_t>(first) + 1,
                   inorder_.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    return id;
}

int OpGraph::session_for(Timestamp t, const SessionRule& rule)
{
    Timestamp day = rule.day_start(t);
    auto it = sessions_.find(day);
    if (it != sessions_.end())
        return it->second;
    // Bursts arrive in time order, so a new day is always the latest one.
    int ordinal = static_cast<int>(sessions_.size());
    sessions_.emplace(day, ordinal);
    return ordinal;
}

Timestamp OpGraph::last_time() const
{
    Timestamp t = nodes_.front().start_time;
    for (const auto& n : nodes_)
        t = std::max(t, n.end_time);
    return t;
}

std::size_t OpGraph::free_poi_count() const
{
    return static_cast<std::size_t>(
        std::count_if(inorder_.begin(), inorder_.end(), [](const Item& i) { return i.is_slot; }));
}

SlotRef OpGraph::poi(std::size_t index) const
{
    if (index > length())
        throw PoiOutOfRange(index, 0, length());
    const Item& item = inorder_[2 * index];
    return {item.node, item.index};
}

OpGraph build(std::span<const Burst> bursts, Timestamp created_at, const BuildOptions& options)
{
    OpGraph g(created_at);
    for (const auto& b : bursts) {
        int session = g.session_for(b.start_time, options.sessions);
        if (b.kind == EditKind::Insert)
            g.apply_insert(b.anchor_offset, b.text, b.start_time, b.end_time, session, b.atomic_count);
        else
            g.apply_delete(b.anchor_offset, b.length, b.start_time, b.end_time, session, b.atomic_count);
    }
    return g;
}

Text reconstruct_text(const OpGraph& g)
{
    Text out;
    out.reserve(g.length());
    for (const auto& item : g.inorder()) {
        if (!item.is_slot)
            out.push_back(g.node(item.node).text[item.index]);
    }
    return out;
}

} // namespace scriptgrove
