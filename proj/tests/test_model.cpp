#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "gconf/error.hpp"
#include "gconf/homology.hpp"
#include "gconf/model.hpp"

using namespace gconf;

namespace {

Graph interval_with_sinks() {
    return parse_graph_text(R"({"vertices":[{"id":"0","sink":true},{"id":"1","sink":true}],"edges":[["0","1"]]})");
}

// Every cube face resolved in both orders must agree.
void check_cubical_identities(const CubeComplex& c) {
    for (int d = 2; d <= c.dimension(); ++d) {
        for (std::size_t i = 0; i < c.count(d); ++i) {
            for (int a = 0; a < d; ++a) {
                for (int b = a + 1; b < d; ++b) {
                    for (int ea = 0; ea < 2; ++ea) {
                        for (int eb = 0; eb < 2; ++eb) {
                            // Resolving b first leaves a's index unchanged; resolving a
                            // first shifts b down by one.
                            auto x = c.face(d - 1, c.face(d, i, b, eb), a, ea);
                            auto y = c.face(d - 1, c.face(d, i, a, ea), b - 1, eb);
                            REQUIRE(x == y);
                        }
                    }
                }
            }
        }
    }
}

} // namespace

TEST_CASE("model cell counts") {
    SUBCASE("Y with two particles") {
        auto c = build_model(star_graph(3), 2);
        CHECK(c.counts() == std::vector<std::size_t>{18, 18});
        CHECK(components(c) == 1);
    }
    SUBCASE("interval with two sinks") {
        auto c = build_model(interval_with_sinks(), 2);
        CHECK(c.counts() == std::vector<std::size_t>{4, 4});
        CHECK(components(c) == 1);
    }
    SUBCASE("B4 with three particles") {
        auto c = build_model(banana_graph(4), 3);
        CHECK(c.dimension() == 2);
        CHECK(c.euler_characteristic() == -24);
        CHECK(c.counts() == std::vector<std::size_t>{264, 672, 384});
    }
    SUBCASE("Y with one particle") {
        auto c = build_model(star_graph(3), 1);
        CHECK(c.counts() == std::vector<std::size_t>{4, 3});
        CHECK(components(c) == 1);
    }
}

TEST_CASE("components") {
    CHECK(components(build_model(banana_graph(2), 3)) >= 2);
    CHECK(components(build_model(banana_graph(1), 2)) == 2);
    CHECK(components(build_model(banana_graph(3), 3)) == 1);
}

TEST_CASE("model rejects bad particle counts") {
    CHECK_THROWS_AS(build_model(star_graph(3), 0), Error);
    CHECK_THROWS_AS(build_model(star_graph(3), -2), Error);
}

TEST_CASE("closure, dimension bound and cubical identities") {
    std::vector<std::pair<Graph, int>> corpus{
        {star_graph(3), 3}, {banana_graph(3), 3}, {banana_graph(4), 3}, {h_graph(), 3},
        {interval_with_sinks(), 3}, {wedge_graph(2, 1), 2}, {subdivide_edge(banana_graph(3), 0, true), 3}};
    for (const auto& [g, n] : corpus) {
        // Construction throws if a face is missing.
        auto c = build_model(g, n);
        CHECK(c.dimension() <= model_dimension_bound(g, n));
        check_cubical_identities(c);
        for (int d = 1; d <= c.dimension(); ++d) {
            for (std::size_t i = 0; i < c.count(d); ++i) {
                const Cube& cube = c.cube(d, i);
                std::vector<int> resources;
                for (const Move& m : cube.moves)
                    resources.push_back(m.resource);
                std::sort(resources.begin(), resources.end());
                REQUIRE(std::adjacent_find(resources.begin(), resources.end()) == resources.end());
            }
        }
    }
}

TEST_CASE("0-cubes satisfy the configuration invariants") {
    Graph g = subdivide_edge(h_graph(), 2, true);
    auto c = build_model(g, 3);
    for (const Cube& cube : c.cubes(0)) {
        std::vector<int> vertex_use(g.vertex_count(), 0);
        std::vector<std::vector<int>> slots(g.edge_count());
        for (LocationCode code : cube.stationary) {
            Location loc = c.decode(code);
            if (loc.kind == Location::Kind::Vertex) {
                CHECK((g.is_sink(loc.id) || g.valence(loc.id) != 1));
                ++vertex_use[static_cast<std::size_t>(loc.id)];
            } else {
                const Edge& e = g.edge(loc.id);
                CHECK_FALSE(g.is_sink(e.a));
                CHECK_FALSE(g.is_sink(e.b));
                slots[static_cast<std::size_t>(loc.id)].push_back(loc.slot);
            }
        }
        for (std::size_t v = 0; v < g.vertex_count(); ++v)
            if (!g.is_sink(static_cast<VertexId>(v)))
                CHECK(vertex_use[v] <= 1);
        for (auto& s : slots) {
            std::sort(s.begin(), s.end());
            for (std::size_t k = 0; k < s.size(); ++k)
                CHECK(s[k] == static_cast<int>(k));
        }
    }
}

TEST_CASE("enumeration is equivariant under relabeling particles") {
    auto c = build_model(h_graph(), 3);
    std::vector<int> perm{2, 0, 1};
    for (int d = 0; d <= c.dimension(); ++d) {
        for (const Cube& cube : c.cubes(d)) {
            Cube image;
            image.stationary.assign(cube.stationary.size(), kMoving);
            for (std::size_t p = 0; p < cube.stationary.size(); ++p)
                image.stationary[static_cast<std::size_t>(perm[p])] = cube.stationary[p];
            for (Move m : cube.moves) {
                m.particle = perm[static_cast<std::size_t>(m.particle)];
                image.moves.push_back(m);
            }
            std::sort(image.moves.begin(), image.moves.end(),
                      [](const Move& x, const Move& y) { return x.particle < y.particle; });
            REQUIRE(c.find(image).has_value());
        }
    }
}

TEST_CASE("boundary of a boundary vanishes") {
    for (auto [g, n] : std::vector<std::pair<Graph, int>>{{banana_graph(4), 3}, {h_graph(), 4}}) {
        auto c = build_model(g, n);
        for (int d = 2; d <= c.dimension(); ++d) {
            for (std::size_t i = 0; i < c.count(d); ++i) {
                Chain x;
                x.dimension = d;
                x.add(i, 1);
                REQUIRE(boundary(c, boundary(c, x)).empty());
            }
        }
    }
}

TEST_CASE("1-cube boundary is the endpoint difference") {
    auto c = build_model(star_graph(3), 2);
    Chain x;
    x.dimension = 1;
    x.add(0, 1);
    Chain expected;
    expected.dimension = 0;
    expected.add(c.face(1, 0, 0, 0), 1);
    expected.add(c.face(1, 0, 0, 1), -1);
    CHECK(boundary(c, x) == expected);
}

TEST_CASE("star cycle") {
    Graph y = star_graph(3);
    auto c = build_model(y, 2);
    Chain z = star_cycle(c, 0, {0, 1, 2}, 0, 1);
    CHECK(z.terms.size() == 12);
    CHECK(boundary(c, z).empty());
    for (const auto& [cell, coefficient] : z.terms)
        CHECK((coefficient == 1 || coefficient == -1));

    // Same start, other particle moving first: the reversed loop.
    Chain reversed = star_cycle(c, 0, {1, 0, 2}, 1, 0);
    CHECK((z + reversed).empty());

    // Relabeling the two particles gives the same loop: the swap acts on
    // Conf_2(Y) as a half turn of the circle.
    CHECK(star_cycle(c, 0, {0, 1, 2}, 1, 0) == z);

    SUBCASE("errors") {
        CHECK_THROWS_AS(star_cycle(c, 1, {0, 1, 2}, 0, 1), Error);
        CHECK_THROWS_AS(star_cycle(c, 0, {0, 0, 2}, 0, 1), Error);
        CHECK_THROWS_AS(star_cycle(c, 0, {0, 1, 2}, 0, 0), Error);
        Graph h = h_graph();
        auto ch = build_model(h, 2);
        CHECK_THROWS_AS(star_cycle(ch, h.require("a"), {0, 1, 3}, 0, 1), Error);
    }
    SUBCASE("parking") {
        Graph h = h_graph();
        auto c3 = build_model(h, 3);
        VertexId a = h.require("a");
        std::vector<Location> parking(3, Location::at_vertex(h.require("b")));
        Chain w = star_cycle(c3, a, {0, 1, 2}, 0, 1, parking);
        CHECK(w.terms.size() == 12);
        std::vector<Location> bad(3, Location::at_vertex(a));
        CHECK_THROWS_AS(star_cycle(c3, a, {0, 1, 2}, 0, 1, bad), Error);
        std::vector<Location> on_star(3, Location::on_edge(2, 0));
        CHECK_THROWS_AS(star_cycle(c3, a, {0, 1, 2}, 0, 1, on_star), Error);
        CHECK_THROWS_AS(star_cycle(c3, a, {0, 1, 2}, 0, 1), Error);
    }
}

TEST_CASE("projecting star cycles to articulation quotients") {
    SUBCASE("bowtie") {
        Graph g = parse_graph_text(R"({"vertices":[{"id":"v"},{"id":"a"},{"id":"b"},{"id":"c"},{"id":"d"}],
            "allow_valence_two": true,
            "edges":[["v","a"],["a","b"],["b","v"],["v","c"],["c","d"],["d","v"]]})");
        VertexId v = g.require("v");
        auto source = build_model(g, 2);
        auto q = articulation_quotient(g, v);
        auto target = build_model(q.graph, 2);
        Chain z = star_cycle(source, v, {0, 3, 2}, 0, 1);
        Chain image = project_cycle(z, source, q, target);
        CHECK_FALSE(image.empty());
        CHECK(boundary(target, image).empty());
        CHECK_FALSE(is_boundary(target, image));
        Chain reversed = project_cycle(star_cycle(source, v, {3, 0, 2}, 1, 0), source, q, target);
        CHECK(reversed == -image);
    }
    SUBCASE("H at either essential vertex") {
        Graph g = h_graph();
        auto source = build_model(g, 2);
        for (const char* name : {"a", "b"}) {
            VertexId v = g.require(name);
            std::array<EdgeId, 3> star{};
            std::size_t k = 0;
            for (std::size_t e = 0; e < g.edge_count(); ++e)
                if (g.edge(static_cast<EdgeId>(e)).a == v || g.edge(static_cast<EdgeId>(e)).b == v)
                    star[k++] = static_cast<EdgeId>(e);
            REQUIRE(k == 3);
            auto q = articulation_quotient(g, v);
            auto target = build_model(q.graph, 2);
            Chain image = project_cycle(star_cycle(source, v, star, 0, 1), source, q, target);
            CHECK_FALSE(is_boundary(target, image));
        }
    }
    SUBCASE("boundaries map to boundaries") {
        Graph g = h_graph();
        auto source = build_model(g, 3);
        auto q = articulation_quotient(g, g.require("a"));
        auto target = build_model(q.graph, 3);
        for (std::size_t i = 0; i < source.count(2); i += 7) {
            Chain cell;
            cell.dimension = 2;
            cell.add(i, 1);
            Chain image = project_cycle(boundary(source, cell), source, q, target);
            CHECK(is_boundary(target, image));
        }
    }
    SUBCASE("errors") {
        Graph g = h_graph();
        auto source = build_model(g, 2);
        auto q = articulation_quotient(g, g.require("a"));
        auto target = build_model(q.graph, 2);
        Chain open;
        open.dimension = 1;
        open.add(0, 1);
        CHECK_THROWS_AS(project_cycle(open, source, q, target), Error);
        CHECK_THROWS_AS(project_cycle(Chain{}, source, q, target), Error);
        auto wrong = build_model(q.graph, 3);
        CHECK_THROWS_AS(project_cycle(star_cycle(source, 0, {0, 1, 2}, 0, 1), source, q, wrong), Error);
    }
}
