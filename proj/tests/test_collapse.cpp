#include <doctest.h>

#include "gconf/collapse.hpp"
#include "gconf/error.hpp"
#include "gconf/homology.hpp"

using namespace gconf;

namespace {

std::vector<std::size_t> trimmed(std::vector<std::size_t> b) {
    while (b.size() > 1 && b.back() == 0)
        b.pop_back();
    return b;
}

std::vector<std::pair<Graph, int>> corpus() {
    return {{star_graph(3), 1}, {star_graph(3), 3}, {banana_graph(3), 2}, {banana_graph(4), 2},
            {banana_graph(3), 3}, {banana_graph(4), 3}, {banana_graph(2), 3}, {h_graph(), 3},
            {wedge_graph(2, 1), 2}, {wedge_graph(3, 1), 2}};
}

} // namespace

TEST_CASE("collapse examples") {
    for (int k = 3; k <= 6; ++k)
        CHECK(collapse(build_model(banana_graph(k), 2)).survivor.dimension() == 1);
    CHECK(collapse(build_model(banana_graph(3), 3)).survivor.dimension() == 1);
    auto y1 = collapse(build_model(star_graph(3), 1)).survivor;
    CHECK(y1.counts() == std::vector<std::size_t>{1});
}

TEST_CASE("collapse preserves homology and is maximal") {
    for (const char* name : {"greedy", "reverse", "banana", "shuffled:7"}) {
        auto policy = CollapsePolicy::parse(name);
        for (const auto& [g, n] : corpus()) {
            auto c = build_model(g, n);
            auto trace = collapse(c, policy);
            const auto& s = trace.survivor;
            CHECK(trimmed(homology(s, Coefficients::Integers).betti) ==
                  trimmed(homology(c, Coefficients::Integers).betti));
            CHECK(components(s) == components(c));
            CHECK_FALSE(has_free_face(s));
            CHECK(collapse(s, policy).steps.empty());
            CHECK(s.total_cells() + 2 * trace.steps.size() == c.total_cells());
        }
    }
}

TEST_CASE("collapse trace replays") {
    auto c = build_model(banana_graph(3), 3);
    auto trace = collapse(c);
    std::vector<std::vector<bool>> alive;
    for (int d = 0; d <= c.dimension(); ++d)
        alive.emplace_back(c.count(d), true);
    for (const CollapseStep& step : trace.steps) {
        // The face must lie in exactly one live coface, namely the recorded one.
        int live = 0;
        for (std::size_t i = 0; i < c.count(step.dimension); ++i) {
            if (!alive[static_cast<std::size_t>(step.dimension)][i])
                continue;
            for (int axis = 0; axis < step.dimension; ++axis)
                for (int end = 0; end < 2; ++end)
                    if (c.face(step.dimension, i, axis, end) == step.face) {
                        ++live;
                        CHECK(i == step.coface);
                    }
        }
        CHECK(live == 1);
        alive[static_cast<std::size_t>(step.dimension - 1)][step.face] = false;
        alive[static_cast<std::size_t>(step.dimension)][step.coface] = false;
    }
    CHECK(alive == trace.alive);
}

TEST_CASE("collapse is deterministic") {
    auto c = build_model(banana_graph(4), 3);
    auto a = collapse(c, CollapsePolicy::parse("shuffled:3"));
    auto b = collapse(c, CollapsePolicy::parse("shuffled:3"));
    CHECK(a.alive == b.alive);
    CHECK(to_json(a) == to_json(b));
}

TEST_CASE("homotopy dimension bounds") {
    auto h2 = homotopy_dimension_upper(build_model(h_graph(), 2));
    CHECK(h2.value == 1);
    auto h4 = homotopy_dimension_upper(build_model(h_graph(), 4));
    CHECK(h4.value == 2);
    auto b4 = homotopy_dimension_upper(build_model(banana_graph(4), 3));
    CHECK(b4.value == 2);
    CHECK(b4.survivor_dimension == 2);
}

TEST_CASE("policy names") {
    CHECK(CollapsePolicy::parse("shuffled:42").seed == 42);
    CHECK(CollapsePolicy::parse("shuffled:42").name() == "shuffled:42");
    CHECK(CollapsePolicy::parse("banana").kind == CollapsePolicy::Kind::Banana);
    CHECK_THROWS_AS(CollapsePolicy::parse("random"), Error);
    CHECK_THROWS_AS(CollapsePolicy::parse("shuffled:x"), Error);
}
