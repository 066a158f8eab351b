#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "scriptgrove/burst.hpp"

namespace scriptgrove {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

enum class NodeKind { Root, Insert, Delete };

std::string_view to_string(NodeKind kind);

struct SlotRef {
    NodeId node = kNoNode;
    std::uint32_t slot = 0;
    friend bool operator==(const SlotRef&, const SlotRef&) = default;
};

struct CharRef {
    NodeId node = kNoNode;
    std::uint32_t index = 0;
    friend bool operator==(const CharRef&, const CharRef&) = default;
};

/// One operation. Out-slots are ordered: Root has 1, an Insert of n
/// characters has n+1 (slot i sits before character i), a Delete has 1.
/// A slot holding kNoNode is a free POI.
struct OpNode {
    NodeId id = kNoNode;
    NodeKind kind = NodeKind::Root;
    Timestamp start_time = 0;
    Timestamp end_time = 0;
    int session = 0;
    std::size_t atomic_count = 0;

    Text text;                      // Insert
    std::vector<NodeId> deleted_by; // Insert, per character; kNoNode = live
    std::size_t deleted_count = 0;  // Delete: m

    std::vector<NodeId> slots;
    // Slots of earlier nodes that point here, in document order at the time
    // the node was created. Insert: exactly one; Delete: m+1.
    std::vector<SlotRef> in_slots;

    bool is_live(std::size_t i) const { return deleted_by[i] == kNoNode; }
    std::size_t live_count() const;
};

class PoiOutOfRange : public std::out_of_range {
public:
    PoiOutOfRange(std::size_t poi, std::size_t count, std::size_t length);
};

/// Calendar-day sessions at a fixed UTC offset.
struct SessionRule {
    int utc_offset_minutes = 0;

    // UTC instant at which the local day containing `t` began.
    Timestamp day_start(Timestamp t) const;
};

// Accepts "UTC", "Z", "+HH:MM", "-HH:MM", "+HHMM", "-HHMM".
SessionRule parse_timezone(std::string_view tz);

/// The operation DAG together with its current document surface.
///
/// The surface (`inorder`) alternates free slot, live character, free slot,
/// ..., free slot, so a document of length L always exposes L+1 POIs.
/// It is a flat vector: edits cost O(L), which is fine for documents of tens
/// of thousands of operations.
class OpGraph {
public:
    struct Item {
        NodeId node;
        std::uint32_t index;  // slot index or character index
        bool is_slot;
    };

    explicit OpGraph(Timestamp created_at = 0);

    NodeId apply_insert(std::size_t poi, TextView text, Timestamp start, Timestamp end,
                        int session, std::size_t atomic_count = 1);
    NodeId apply_delete(std::size_t poi, std::size_t count, Timestamp start, Timestamp end,
                        int session, std::size_t atomic_count = 1);

    // Session ordinal for `t` under `rule`, registering a new day if needed.
    // Ordinals are dense and follow chronological order.
    int session_for(Timestamp t, const SessionRule& rule);

    NodeId root() const { return 0; }
    Timestamp created_at() const { return nodes_.front().start_time; }
    Timestamp last_time() const;

    const OpNode& node(NodeId id) const { return nodes_.at(id); }
    std::span<const OpNode> nodes() const { return nodes_; }
    std::span<const Item> inorder() const { return inorder_; }

    // day start (UTC ms) -> session ordinal
    const std::map<Timestamp, int>& session_table() const { return sessions_; }

    std::size_t length() const { return inorder_.size() / 2; }
    std::size_t free_poi_count() const;
    SlotRef poi(std::size_t index) const;

private:
    NodeId add_node(OpNode node);

    std::vector<OpNode> nodes_;
    std::vector<Item> inorder_;
    std::map<Timestamp, int> sessions_;
};

struct BuildOptions {
    SessionRule sessions;
};

/// Applies bursts in order. Sessions are assigned from each burst's start.
OpGraph build(std::span<const Burst> bursts, Timestamp created_at, const BuildOptions& options = {});

Text reconstruct_text(const OpGraph& g);

/// The insertion-only tree drawn for a graph. Each Insert node's visual
/// parent owns the slot its in-edge comes from; when that owner is a Delete
/// node the choice follows the Delete's leftmost bundled slot, recursively.
/// Other admissible choices exist; this one is fixed for determinism.
struct SpanningTree {
    struct Entry {
        bool member = false;   // Root and Insert nodes
        NodeId parent = kNoNode;
        std::uint32_t attach_slot = 0;
        double attach_fraction = 0.0;  // attach_slot / parent's n (0 under the root)
        int depth = 0;                 // root 0, first insertion 1
        std::vector<NodeId> children;  // ordered by (attach_slot, id)
    };

    NodeId root = 0;
    std::vector<Entry> entries;  // indexed by node id

    const Entry& at(NodeId id) const { return entries.at(id); }
    std::size_t insert_count() const;

    // Root first, parents before children, siblings in order.
    std::vector<NodeId> preorder() const;
};

SpanningTree spanning_tree(const OpGraph& g);

// Owner of `ref` after resolving Delete owners to their leftmost bundled slot.
SlotRef resolve_visual_slot(const OpGraph& g, SlotRef ref);

class NotAnInsertNode : public std::invalid_argument {
public:
    explicit NotAnInsertNode(NodeId id);
};

/// Bracketed history of a branch: the subtree's characters in order,
/// with characters removed by the same deletion wrapped in `[` `]` and `|`
/// wherever the walk enters or leaves a child insertion. Literal `[`, `]`,
/// `|` and `\` in the text are escaped with `\`.
Text branch_text(const OpGraph& g, const SpanningTree& tree, NodeId node);

} // namespace scriptgrove
