#include <doctest.h>

#include "scriptgrove/json_io.hpp"
#include "support.hpp"

using namespace scriptgrove;
using namespace scriptgrove::testing;

TEST_SUITE("json_io")
{
    TEST_CASE("bursts round trip")
    {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto bursts = condense(generate_random_log(seed, 200, 0.3));
            auto doc = bursts_to_json(bursts);
            CHECK(bursts_from_json(doc) == bursts);
            auto reparsed = ordered_json::parse(dump_artifact(doc));
            CHECK(bursts_from_json(reparsed) == bursts);
        }
        CHECK_THROWS_AS(bursts_from_json(ordered_json::object()), SchemaError);
        auto bad = bursts_to_json(condense(five_steps_log()));
        bad[0]["kind"] = "move";
        CHECK_THROWS_AS(bursts_from_json(bad), SchemaError);
    }

    TEST_CASE("worked example graph document")
    {
        auto b = build_all(five_steps_log());
        auto doc = graph_to_json(b.graph, "five_steps");
        CHECK(doc["schema"] == "scriptgrove.graph");
        CHECK(doc["version"] == kSchemaVersion);
        CHECK(doc["final_text"] == "D");
        REQUIRE(doc["nodes"].size() == 6);
        CHECK(doc["nodes"][2]["liveness"] == "00");
        CHECK(doc["nodes"][4]["liveness"] == "1");
        CHECK(doc["nodes"][2]["deleted_by"] == ordered_json::array({3, 5}));
        CHECK(doc["nodes"][4]["deleted_by"] == ordered_json::array({nullptr}));
        CHECK(doc["nodes"][5]["in_slots"] == ordered_json::parse("[[4,1],[2,2]]"));
        CHECK_NOTHROW(validate_graph_json(doc));
    }

    TEST_CASE("graph validation catches structural damage")
    {
        auto b = build_all(five_steps_log());
        auto good = graph_to_json(b.graph, "five_steps");

        auto liveness = good;
        liveness["nodes"][1]["liveness"] = "1";
        CHECK_THROWS_AS(validate_graph_json(liveness), SchemaError);

        auto slots = good;
        slots["nodes"][1]["slots"] = ordered_json::array({nullptr});
        CHECK_THROWS_AS(validate_graph_json(slots), SchemaError);

        auto edges = good;
        edges["nodes"][5]["in_slots"] = ordered_json::parse("[[4,1]]");
        CHECK_THROWS_AS(validate_graph_json(edges), SchemaError);

        auto version = good;
        version["version"] = kSchemaVersion + 1;
        CHECK_THROWS_AS(validate_graph_json(version), SchemaError);

        auto schema = good;
        schema["schema"] = "scriptgrove.layout";
        CHECK_THROWS_AS(validate_graph_json(schema), SchemaError);
    }

    TEST_CASE("generated graphs validate")
    {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            auto log = generate_random_log(seed, 300, 0.2);
            auto b = build_all(log);
            auto doc = ordered_json::parse(dump_artifact(graph_to_json(b.graph, log.doc_id)));
            CHECK_NOTHROW(validate_graph_json(doc));
            CHECK(doc["final_text"] == U8(replay_naive(log)));
        }
    }

    TEST_CASE("layout document round trips through text")
    {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto log = generate_random_log(seed, 300, 0.2);
            auto b = build_all(log);
            auto doc = make_layout_document(log.doc_id, b.graph, b.tree, LayoutParams{});
            auto text = dump_artifact(layout_to_json(doc));
            auto back = layout_from_json(ordered_json::parse(text));
            CHECK(back.glyphs.size() == doc.glyphs.size());
            CHECK(back.branch_texts == doc.branch_texts);
            CHECK(dump_artifact(layout_to_json(back)) == text);
        }
    }

    TEST_CASE("layout values are rounded to three decimals")
    {
        auto b = build_all(five_steps_log());
        auto doc = layout_to_json(make_layout_document("five_steps", b.graph, b.tree, LayoutParams{}));
        CHECK(doc["schema"] == "scriptgrove.layout");
        REQUIRE(doc["glyphs"].size() == 3);
        const auto& trunk = doc["glyphs"][0];
        CHECK(trunk["arc_span_angle"].get<double>() == 0.167);
        CHECK(trunk["branch_text"] == "D|[A]|[B][C]");
        CHECK(trunk["spans"][0]["radius"].get<double>() == 9.6);
        CHECK(round3(1.23456) == 1.235);
        CHECK(round3(-0.0001) == 0.0);
    }

    TEST_CASE("layout reader rejects damaged documents")
    {
        auto b = build_all(five_steps_log());
        auto good = layout_to_json(make_layout_document("five_steps", b.graph, b.tree, LayoutParams{}));

        auto version = good;
        version["version"] = 99;
        CHECK_THROWS_AS(layout_from_json(version), SchemaError);

        auto missing = good;
        missing.erase("glyphs");
        CHECK_THROWS_AS(layout_from_json(missing), SchemaError);

        auto spans = good;
        spans["glyphs"][2]["spans"][1]["begin"] = 0;
        CHECK_THROWS_AS(layout_from_json(spans), SchemaError);

        auto param = good;
        param["params"]["phototropism"] = 2.0;
        CHECK_THROWS_AS(layout_from_json(param), SchemaError);
    }

    TEST_CASE("palette parsing")
    {
        auto ok = ordered_json::array();
        for (int i = 0; i < 8; ++i)
            ok.push_back("#00000" + std::to_string(i));
        auto pal = palette_from_json(ok);
        CHECK(pal[7] == "#000007");

        auto short_list = ok;
        short_list.erase(short_list.end() - 1);
        CHECK_THROWS_AS(palette_from_json(short_list), SchemaError);

        auto bad = ok;
        bad[0] = "red";
        CHECK_THROWS_AS(palette_from_json(bad), SchemaError);
    }

    TEST_CASE("stats and segments documents")
    {
        auto b = build_all(five_steps_log());
        auto stats = stats_to_json(compute_stats(b.log, b.bursts, b.graph));
        CHECK(stats["words"] == 1);
        CHECK(stats["operations"] == 5);
        auto segs = segments_to_json(segment_by_branches(b.tree, b.graph, 1));
        REQUIRE(segs.is_array());
        REQUIRE(segs.size() == 1);
        CHECK(segs[0]["text"] == "D");
    }
}
