#pragma once

#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "scriptgrove/burst.hpp"
#include "scriptgrove/editlog.hpp"
#include "scriptgrove/graph.hpp"
#include "scriptgrove/text.hpp"

namespace scriptgrove::testing {

inline Text T(const char* utf8)
{
    return utf8_to_text(utf8);
}

inline std::string U8(const Text& text)
{
    return text_to_utf8(text);
}

inline std::string read_file(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline std::string data_path(const std::string& name)
{
    return std::string(SCRIPTGROVE_TEST_DATA) + "/" + name;
}

inline constexpr Timestamp kFiveStepsCreated = 1'600'000'000'000;

// The five operations of the worked DAG example, one second apart:
// insert "A"; insert "BC" after it; delete "AB"; insert "D" before "C";
// delete "C".
inline EditLog five_steps_log()
{
    EditLog log;
    log.doc_id = "five_steps";
    log.created_at = kFiveStepsCreated;
    log.edits = {
        AtomicEdit::insert(kFiveStepsCreated + 1000, 0, U"A"),
        AtomicEdit::insert(kFiveStepsCreated + 2000, 1, U"BC"),
        AtomicEdit::erase(kFiveStepsCreated + 3000, 0, 2),
        AtomicEdit::insert(kFiveStepsCreated + 4000, 0, U"D"),
        AtomicEdit::erase(kFiveStepsCreated + 5000, 1, 1),
    };
    return log;
}

struct Built {
    EditLog log;
    std::vector<Burst> bursts;
    OpGraph graph;
    SpanningTree tree;
};

inline Built build_all(EditLog log, const BuildOptions& options = {})
{
    Built b;
    b.bursts = condense(log);
    b.graph = build(b.bursts, log.created_at, options);
    b.tree = spanning_tree(b.graph);
    b.log = std::move(log);
    return b;
}

// Free POIs counted from the nodes' own slot tables, independently of the
// maintained document surface.
inline std::size_t free_slots_in_nodes(const OpGraph& g)
{
    std::size_t free = 0;
    for (const auto& n : g.nodes()) {
        for (NodeId s : n.slots)
            free += s == kNoNode ? 1 : 0;
    }
    return free;
}

} // namespace scriptgrove::testing
