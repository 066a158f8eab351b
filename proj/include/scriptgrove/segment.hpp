#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scriptgrove/graph.hpp"
#include "scriptgrove/layout.hpp"

namespace scriptgrove {

/// A contiguous run of the final text written within one branch.
struct Segment {
    NodeId branch = kNoNode;
    std::size_t begin = 0;  // character range in the final text
    std::size_t end = 0;
    Text text;
    int color_index = 0;
    int depth = 0;          // tree depth of the branch root
    std::size_t live_chars = 0;  // == end - begin
    std::size_t dead_chars = 0;  // removed characters across the whole branch
    std::vector<int> sessions;   // sorted, across the whole branch
};

/// Branch that owns `node` when the tree is cut `level` steps below the
/// first insertion: its ancestor at tree depth level + 1, or the node itself
/// when it is shallower than that.
NodeId branch_of(const SpanningTree& tree, NodeId node, int level);

/// Partitions the live text by branch membership at cut level `level` (>= 1).
/// The first insertion is the trunk (level 0); with level 1 every character
/// goes to the trunk's child branch it grew from, or to the trunk itself.
/// Removed characters never form segments.
std::vector<Segment> segment_by_branches(const SpanningTree& tree, const OpGraph& g, int level);

struct BranchDensity {
    NodeId branch = kNoNode;
    std::size_t operations = 0;  // atomic edits of insertions and deletions in the branch
    std::size_t final_chars = 0;
    std::optional<double> density;  // operations per final character; unset when none survive
};

struct DocStats {
    std::string doc_id;
    std::string description;
    std::size_t words = 0;
    std::size_t operations = 0;
    std::size_t bursts = 0;
    std::size_t sessions = 0;
    std::size_t live_chars = 0;
    std::size_t dead_chars = 0;
    double deletion_ratio = 0.0;
    std::vector<BranchDensity> branches;
};

/// Deletions are charged to the branch of their leftmost bundled slot.
DocStats compute_stats(const EditLog& log, std::span<const Burst> bursts, const OpGraph& g, int level = 1);

/// Aligned text table; leading columns are Doc, Description, Words, Operations.
std::string format_stats_table(const DocStats& stats);
std::string format_segments_table(const std::vector<Segment>& segments);

} // namespace scriptgrove
