#include <algorithm>

#include "scriptgrove/graph.hpp"

namespace scriptgrove {

SlotRef resolve_visual_slot(const OpGraph& g, SlotRef ref)
{
    while (g.node(ref.node).kind == NodeKind::Delete)
        ref = g.node(ref.node).in_slots.front();
    return ref;
}

std::size_t SpanningTree::insert_count() const
{
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [&](const Entry& e) {
        return e.member && e.parent != kNoNode;
    }));
}

std::vector<NodeId> SpanningTree::preorder() const
{
    std::vector<NodeId> order;
    std::vector<NodeId> stack{root};
    while (!stack.empty()) {
        NodeId id = stack.back();
        stack.pop_back();
        order.push_back(id);
        const auto& kids = entries[id].children;
        for (auto it = kids.rbegin(); it != kids.rend(); ++it)
            stack.push_back(*it);
    }
    return order;
}

SpanningTree spanning_tree(const OpGraph& g)
{
    SpanningTree tree;
    tree.root = g.root();
    tree.entries.resize(g.nodes().size());
    tree.entries[g.root()].member = true;

    // Node ids follow creation order, so a parent is always settled first.
    for (const auto& node : g.nodes()) {
        if (node.kind != NodeKind::Insert)
            continue;
        SlotRef attach = resolve_visual_slot(g, node.in_slots.front());
        auto& entry = tree.entries[node.id];
        const auto& parent = g.node(attach.node);
        entry.member = true;
        entry.parent = attach.node;
        entry.attach_slot = attach.slot;
        entry.attach_fraction =
            parent.text.empty() ? 0.0 : static_cast<double>(attach.slot) / static_cast<double>(parent.text.size());
        entry.depth = tree.entries[attach.node].depth + 1;
        tree.entries[attach.node].children.push_back(node.id);
    }
    for (auto& entry : tree.entries) {
        std::stable_sort(entry.children.begin(), entry.children.end(), [&](NodeId a, NodeId b) {
            return tree.entries[a].attach_slot < tree.entries[b].attach_slot;
        });
    }
    return tree;
}

NotAnInsertNode::NotAnInsertNode(NodeId id)
    : std::invalid_argument("node " + std::to_string(id) + " is not an insertion node")
{
}

namespace {

struct Token {
    char32_t ch = 0;
    NodeId deleted_by = kNoNode;
    bool boundary = false;
};

void collect_tokens(const OpGraph& g, const SpanningTree& tree, NodeId top, std::vector<Token>& out)
{
    // Explicit stack: frames are (node, next slot to visit, next child index).
    struct Frame {
        NodeId node;
        std::size_t slot;
        std::size_t child;
    };
    std::vector<Frame> stack{{top, 0, 0}};
    while (!stack.empty()) {
        Frame& f = stack.back();
        const auto& node = g.node(f.node);
        const auto& kids = tree.at(f.node).children;
        if (f.slot > node.text.size()) {
            stack.pop_back();
            if (!stack.empty())
                out.push_back({0, kNoNode, true});
            continue;
        }
        if (f.child < kids.size() && tree.at(kids[f.child]).attach_slot == f.slot) {
            NodeId kid = kids[f.child++];
            out.push_back({0, kNoNode, true});
            stack.push_back({kid, 0, 0});
            continue;
        }
        if (f.slot < node.text.size())
            out.push_back({node.text[f.slot], node.deleted_by[f.slot], false});
        ++f.slot;
    }
}

} // namespace

Text branch_text(const OpGraph& g, const SpanningTree& tree, NodeId node)
{
    if (node >= g.nodes().size() || g.node(node).kind != NodeKind::Insert)
        throw NotAnInsertNode(node);

    std::vector<Token> tokens;
    collect_tokens(g, tree, node, tokens);

    Text out;
    bool pending_boundary = false;
    NodeId open = kNoNode;
    for (const auto& tok : tokens) {
        if (tok.boundary) {
            pending_boundary = true;
            continue;
        }
        if (open != kNoNode && (pending_boundary || tok.deleted_by != open)) {
            out.push_back(U']');
            open = kNoNode;
        }
        if (pending_boundary && !out.empty())
            out.push_back(U'|');
        pending_boundary = false;
        if (tok.deleted_by != kNoNode && open == kNoNode) {
            out.push_back(U'[');
            open = tok.deleted_by;
        }
        if (tok.ch == U'[' || tok.ch == U']' || tok.ch == U'|' || tok.ch == U'\\')
            out.push_back(U'\\');
        out.push_back(tok.ch);
    }
    if (open != kNoNode)
        out.push_back(U']');
    return out;
}

} // namespace scriptgrove
