#include <doctest.h>

#include "scriptgrove/segment.hpp"
#include "support.hpp"

using namespace scriptgrove;
using namespace scriptgrove::testing;

namespace {

void check_partition(const std::vector<Segment>& segs, const Text& final_text)
{
    Text joined;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const auto& s = segs[i];
        CHECK(s.begin == pos);
        CHECK(s.end > s.begin);
        CHECK(s.live_chars == s.end - s.begin);
        CHECK(s.text == final_text.substr(s.begin, s.end - s.begin));
        if (i > 0)
            CHECK(segs[i - 1].branch != s.branch);
        joined += s.text;
        pos = s.end;
    }
    CHECK(joined == final_text);
}

} // namespace

TEST_SUITE("segment")
{
    TEST_CASE("one burst is one segment")
    {
        EditLog log;
        log.doc_id = "one";
        log.edits = {AtomicEdit::insert(1, 0, U"a"), AtomicEdit::insert(2, 1, U"b")};
        auto b = build_all(log);
        auto segs = segment_by_branches(b.tree, b.graph, 1);
        REQUIRE(segs.size() == 1);
        CHECK(segs[0].text == U"ab");
        CHECK(segs[0].depth == 1);
        CHECK(segs[0].branch == 1);
    }

    TEST_CASE("empty document has no segments")
    {
        auto b = build_all(EditLog{});
        CHECK(segment_by_branches(b.tree, b.graph, 1).empty());
        auto gone = build_all(five_steps_log());
        auto fig = segment_by_branches(gone.tree, gone.graph, 1);
        REQUIRE(fig.size() == 1);
        CHECK(fig[0].branch == 4);
        CHECK(fig[0].text == U"D");
    }

    TEST_CASE("level must be at least one")
    {
        auto b = build_all(five_steps_log());
        CHECK_THROWS_AS(segment_by_branches(b.tree, b.graph, 0), std::invalid_argument);
    }

    TEST_CASE("two paragraphs split into two segments")
    {
        auto log = parse_log(read_file(data_path("two_paragraphs.jsonl")));
        auto b = build_all(log);
        auto segs = segment_by_branches(b.tree, b.graph, 1);
        REQUIRE(segs.size() == 2);
        CHECK(U8(segs[0].text) == "Seeds wait in dark soil.\n");
        CHECK(U8(segs[1].text) == "Then rain arrives and they grow.");
        check_partition(segs, reconstruct_text(b.graph));
    }

    TEST_CASE("segments partition the text at every level and refine as the level grows")
    {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            auto b = build_all(generate_random_log(seed, 300, 0.2));
            auto final_text = reconstruct_text(b.graph);
            std::vector<Segment> coarse;
            for (int level = 1; level <= 4; ++level) {
                auto segs = segment_by_branches(b.tree, b.graph, level);
                check_partition(segs, final_text);
                for (const auto& s : segs) {
                    CHECK(s.depth <= level + 1);
                    CHECK(s.color_index == b.graph.node(s.branch).session % 8);
                }
                if (level > 1) {
                    CHECK(segs.size() >= coarse.size());
                    // Each finer segment lies inside one coarser segment of its ancestor branch.
                    std::size_t j = 0;
                    for (const auto& s : segs) {
                        while (j < coarse.size() && coarse[j].end <= s.begin)
                            ++j;
                        REQUIRE(j < coarse.size());
                        CHECK(coarse[j].begin <= s.begin);
                        CHECK(s.end <= coarse[j].end);
                        CHECK(branch_of(b.tree, s.branch, level - 1) == coarse[j].branch);
                    }
                }
                coarse = std::move(segs);
            }
        }
    }
}

TEST_SUITE("stats")
{
    TEST_CASE("empty log")
    {
        EditLog log;
        log.doc_id = "empty";
        auto b = build_all(log);
        auto s = compute_stats(b.log, b.bursts, b.graph);
        CHECK(s.words == 0);
        CHECK(s.operations == 0);
        CHECK(s.bursts == 0);
        CHECK(s.sessions == 0);
        CHECK(s.live_chars == 0);
        CHECK(s.dead_chars == 0);
        CHECK(s.deletion_ratio == 0.0);
        CHECK(s.branches.empty());
    }

    TEST_CASE("deletion ratio counts removed over inserted characters")
    {
        EditLog log;
        log.doc_id = "r";
        log.edits = {AtomicEdit::insert(1, 0, U"ab cd"), AtomicEdit::erase(2, 0, 2)};
        auto b = build_all(log);
        auto s = compute_stats(b.log, b.bursts, b.graph);
        CHECK(s.deletion_ratio == doctest::Approx(0.4));
        CHECK(s.words == 1);
        CHECK(s.operations == 2);
        CHECK(s.bursts == 2);
        CHECK(s.sessions == 1);
        CHECK(s.live_chars == 3);
        CHECK(s.dead_chars == 2);
        REQUIRE(s.branches.size() == 1);
        CHECK(s.branches[0].operations == 2);
        CHECK(s.branches[0].final_chars == 3);
        REQUIRE(s.branches[0].density.has_value());
        CHECK(*s.branches[0].density == doctest::Approx(2.0 / 3.0));
    }

    TEST_CASE("worked example stats")
    {
        auto b = build_all(five_steps_log());
        auto s = compute_stats(b.log, b.bursts, b.graph);
        CHECK(s.words == 1);
        CHECK(s.operations == 5);
        CHECK(s.bursts == 5);
        CHECK(s.live_chars == 1);
        CHECK(s.dead_chars == 3);
        CHECK(s.deletion_ratio == doctest::Approx(0.75));
        // Branch 4 ("D") survives; branch 2 ("BC") is entirely gone.
        std::map<NodeId, BranchDensity> by_branch;
        for (const auto& d : s.branches)
            by_branch[d.branch] = d;
        REQUIRE(by_branch.count(2) == 1);
        CHECK_FALSE(by_branch[2].density.has_value());
        REQUIRE(by_branch.count(4) == 1);
        CHECK(by_branch[4].final_chars == 1);
    }

    TEST_CASE("operations across branches add up to the log")
    {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            auto b = build_all(generate_random_log(seed, 300, 0.2));
            auto s = compute_stats(b.log, b.bursts, b.graph, 2);
            std::size_t ops = 0, chars = 0;
            for (const auto& d : s.branches) {
                ops += d.operations;
                chars += d.final_chars;
            }
            std::size_t kept = 0;
            for (const auto& burst : b.bursts)
                kept += burst.atomic_count;
            CHECK(ops == kept);
            CHECK(chars == s.live_chars);
            CHECK(s.live_chars + s.dead_chars > 0);
        }
    }

    TEST_CASE("table column order")
    {
        auto b = build_all(five_steps_log());
        auto s = compute_stats(b.log, b.bursts, b.graph);
        s.description = "worked example";
        auto table = format_stats_table(s);
        auto header = table.substr(0, table.find('\n'));
        auto doc = header.find("Doc");
        auto desc = header.find("Description");
        auto words = header.find("Words");
        auto ops = header.find("Operations");
        CHECK(doc == 0);
        CHECK(doc < desc);
        CHECK(desc < words);
        CHECK(words < ops);
        CHECK(table.find("worked example") != std::string::npos);

        auto segs = format_segments_table(segment_by_branches(b.tree, b.graph, 1));
        CHECK(segs.rfind("Branch", 0) == 0);
    }
}
