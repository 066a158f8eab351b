#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "scriptgrove/layout.hpp"
#include "support.hpp"

using namespace scriptgrove;
using namespace scriptgrove::testing;

namespace {

constexpr double kPi = std::numbers::pi;

// Smallest k >= 0 with n*u / (r * 2^k) <= pi, in closed form.
int expected_doublings(double n, double u, double r)
{
    double ratio = n * u / (kPi * r);
    if (ratio <= 1.0)
        return 0;
    return static_cast<int>(std::ceil(std::log2(ratio)));
}

double norm(Vec2 v)
{
    return std::hypot(v.x, v.y);
}

} // namespace

TEST_SUITE("layout")
{
    TEST_CASE("arc size worked values")
    {
        auto a = arc_size(20, 2.0, 10.0);
        CHECK(a.radius == doctest::Approx(20.0));
        CHECK(a.span_angle == doctest::Approx(2.0));
        CHECK(a.doublings == 1);

        auto b = arc_size(1, 2.0, 20.0);
        CHECK(b.radius == doctest::Approx(20.0));
        CHECK(b.span_angle == doctest::Approx(0.1));
        CHECK(b.doublings == 0);

        // Exactly pi is allowed.
        auto c = arc_size(1, kPi, 1.0);
        CHECK(c.doublings == 0);
        CHECK(c.span_angle == doctest::Approx(kPi));
    }

    TEST_CASE("arc size bound and minimality on random inputs")
    {
        std::mt19937_64 rng(99);
        std::uniform_int_distribution<int> chars(1, 5000);
        std::uniform_real_distribution<double> unit(0.1, 10.0);
        std::uniform_real_distribution<double> radius(0.5, 100.0);
        for (int i = 0; i < 2000; ++i) {
            int n = chars(rng);
            double u = unit(rng), r = radius(rng);
            auto a = arc_size(static_cast<std::size_t>(n), u, r);
            CHECK(a.span_angle <= kPi + 1e-12);
            CHECK(a.doublings == expected_doublings(n, u, r));
            CHECK(a.radius == doctest::Approx(r * std::pow(2.0, a.doublings)));
            CHECK(a.span_angle * a.radius == doctest::Approx(n * u));
        }
    }

    TEST_CASE("growth direction blends toward up")
    {
        Vec2 up{0, -1};
        auto straight = grow_direction({1, 0}, up, 1.0);
        CHECK(straight.x == doctest::Approx(0.0));
        CHECK(straight.y == doctest::Approx(-1.0));

        auto radial = grow_direction({1, 0}, up, 0.0);
        CHECK(radial.x == doctest::Approx(1.0));
        CHECK(radial.y == doctest::Approx(0.0));

        auto half = grow_direction({1, 0}, up, 0.5);
        CHECK(half.x == doctest::Approx(std::sqrt(0.5)));
        CHECK(half.y == doctest::Approx(-std::sqrt(0.5)));

        // Opposite vectors cancel at 0.5; the result falls back to up.
        auto cancel = grow_direction({0, 1}, up, 0.5);
        CHECK(cancel.y == doctest::Approx(-1.0));

        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> angle(-kPi, kPi), k(0.0, 1.0);
        for (int i = 0; i < 500; ++i) {
            double a = angle(rng);
            CHECK(norm(grow_direction({std::cos(a), std::sin(a)}, up, k(rng))) == doctest::Approx(1.0));
        }
    }

    TEST_CASE("session colors cycle through eight entries")
    {
        const auto& pal = default_palette();
        CHECK(pal.size() == 8);
        CHECK(session_color(13, pal) == pal[5]);
        for (int s = 0; s < 100; ++s)
            CHECK(session_color(s, pal) == session_color(s + 8, pal));
        CHECK_THROWS_AS(session_color(-1, pal), std::invalid_argument);
    }

    TEST_CASE("worked example layout")
    {
        auto b = build_all(five_steps_log());
        LayoutParams p;
        auto glyphs = compute_layout(b.tree, b.graph, p);
        REQUIRE(glyphs.size() == 3);
        CHECK(glyphs[0].node == 1);
        CHECK(glyphs[1].node == 4);
        CHECK(glyphs[2].node == 2);

        const auto& trunk = glyphs[0];
        CHECK(trunk.attach_point == Vec2{0, 0});
        CHECK(trunk.direction.x == doctest::Approx(0.0));
        CHECK(trunk.direction.y == doctest::Approx(-1.0));
        CHECK(trunk.radius == doctest::Approx(12.0));
        CHECK(trunk.arc_span_angle == doctest::Approx(2.0 / 12.0));
        REQUIRE(trunk.spans.size() == 1);
        CHECK_FALSE(trunk.spans[0].live);
        CHECK(trunk.spans[0].deleted_by == 3);
        CHECK(trunk.spans[0].radius == doctest::Approx(12.0 * 0.8));
        CHECK(trunk.spans[0].opacity == doctest::Approx(0.25));

        // "BC" attaches at the end of the trunk arc.
        const auto& bc = glyphs[2];
        double end_angle = trunk.arc_start() + trunk.arc_span_angle;
        CHECK(bc.attach_point.x == doctest::Approx(12.0 * std::cos(end_angle)));
        CHECK(bc.attach_point.y == doctest::Approx(12.0 * std::sin(end_angle)));
        auto dir = grow_direction({std::cos(end_angle), std::sin(end_angle)}, p.up, p.phototropism);
        CHECK(bc.direction.x == doctest::Approx(dir.x));
        CHECK(bc.direction.y == doctest::Approx(dir.y));
        REQUIRE(bc.spans.size() == 2);
        CHECK(bc.spans[0].deleted_by == 3);
        CHECK(bc.spans[1].deleted_by == 5);

        const auto& d = glyphs[1];
        REQUIRE(d.spans.size() == 1);
        CHECK(d.spans[0].live);
        CHECK(d.spans[0].radius == doctest::Approx(d.radius));
        CHECK(d.color_index == 0);
    }

    TEST_CASE("layout is deterministic and argument-order independent")
    {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto b = build_all(generate_random_log(seed, 300, 0.2));
            LayoutParams p;
            auto first = compute_layout(b.tree, b.graph, p);
            auto again = compute_layout(spanning_tree(b.graph), b.graph, p);
            CHECK(first == again);
            for (const auto& glyph : first) {
                CHECK(glyph.arc_span_angle <= kPi + 1e-12);
                CHECK(norm(glyph.direction) == doctest::Approx(1.0));
                CHECK(glyph.color_index == glyph.session % 8);
                std::size_t covered = 0;
                for (const auto& s : glyph.spans) {
                    CHECK(s.begin == covered);
                    covered = s.end;
                }
                CHECK(covered == glyph.char_count);
            }
        }
    }

    TEST_CASE("children attach on their parent's arc")
    {
        auto b = build_all(generate_random_log(11, 300, 0.2));
        LayoutParams p;
        auto glyphs = compute_layout(b.tree, b.graph, p);
        std::map<NodeId, const GlyphLayout*> by_node;
        for (const auto& glyph : glyphs)
            by_node[glyph.node] = &glyph;
        for (const auto& glyph : glyphs) {
            if (glyph.parent == b.tree.root)
                continue;
            const GlyphLayout& parent = *by_node.at(glyph.parent);
            Vec2 rel{glyph.attach_point.x - parent.attach_point.x, glyph.attach_point.y - parent.attach_point.y};
            CHECK(norm(rel) == doctest::Approx(parent.radius));
        }
    }

    TEST_CASE("layout_at_time grows monotonically and ends at the full layout")
    {
        auto b = build_all(five_steps_log());
        LayoutParams p;
        CHECK(layout_at_time(b.tree, b.graph, p, kFiveStepsCreated).empty());
        auto two = layout_at_time(b.tree, b.graph, p, kFiveStepsCreated + 2000);
        REQUIRE(two.size() == 2);
        // The deletion has not happened yet, so A, B and C are still live.
        for (const auto& glyph : two) {
            REQUIRE(glyph.spans.size() == 1);
            CHECK(glyph.spans[0].live);
        }
        auto three = layout_at_time(b.tree, b.graph, p, kFiveStepsCreated + 3000);
        REQUIRE(three.size() == 2);
        CHECK_FALSE(three[0].spans[0].live);
        CHECK(layout_at_time(b.tree, b.graph, p, b.graph.last_time()) == compute_layout(b.tree, b.graph, p));

        auto big = build_all(generate_random_log(4, 300, 0.2));
        std::size_t previous = 0;
        const Timestamp step = std::max<Timestamp>(1, (big.graph.last_time() - big.graph.created_at()) / 60);
        for (Timestamp t = big.graph.created_at(); t <= big.graph.last_time(); t += step) {
            auto glyphs = layout_at_time(big.tree, big.graph, p, t);
            CHECK(glyphs.size() >= previous);
            previous = glyphs.size();
        }
    }

    TEST_CASE("invalid parameters are rejected")
    {
        LayoutParams p;
        p.phototropism = 1.5;
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
        p = {};
        p.base_radius = 0;
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
        p = {};
        p.up = {0, 0};
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    }
}
