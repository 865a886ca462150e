#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "spex/join.hpp"
#include "spex/planarity.hpp"

using namespace spex;

TEST_CASE("classical planarity facts") {
    REQUIRE_FALSE(is_planar(complete_graph(5)));
    REQUIRE(is_planar(complete_graph(4)));
    REQUIRE_FALSE(is_outerplanar(complete_graph(4)));
    REQUIRE(is_planar(complete_bipartite(2, 3)));
    REQUIRE_FALSE(is_outerplanar(complete_bipartite(2, 3)));
    REQUIRE_FALSE(is_planar(complete_bipartite(3, 3)));
    REQUIRE(is_outerplanar(cycle_graph(8)));
    REQUIRE(is_outerplanar(path_graph(10)));
    REQUIRE(is_outerplanar(complete_graph(3)));
}

TEST_CASE("K5 and K3,3 subdivisions stay non-planar") {
    // subdivide one edge of K5
    Graph g(6);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            if (!(i == 0 && j == 1)) g.add_edge(i, j);
    g.add_edge(0, 5);
    g.add_edge(5, 1);
    REQUIRE_FALSE(is_planar(g));
}

TEST_CASE("single-apex joins are outerplanar, double-apex joins planar") {
    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 30; ++iter) {
        std::vector<int> parts;
        int total = 0;
        int target = 5 + static_cast<int>(rng() % 40);
        while (total < target) {
            int part = 1 + static_cast<int>(rng() % 8);
            parts.push_back(part);
            total += part;
        }
        PathPartition p(parts);
        Graph fan = realize(JoinSpec(1, p));
        REQUIRE(is_outerplanar(fan));
        REQUIRE(is_planar(fan));
        Graph book = realize(JoinSpec(2, p, true));
        REQUIRE(is_planar(book));
        if (p.total() >= 3) REQUIRE_FALSE(is_outerplanar(book)); // contains K_{2,3}
    }
}

TEST_CASE("maximal planar edge counts pass, one more edge fails") {
    // octahedron: 6 vertices, 12 = 3n-6 edges, planar
    Graph oct = complete_graph(6);
    oct.remove_edge(0, 1);
    oct.remove_edge(2, 3);
    oct.remove_edge(4, 5);
    REQUIRE(oct.edge_count() == 12);
    REQUIRE(is_planar(oct));
    oct.add_edge(0, 1);
    REQUIRE_FALSE(is_planar(oct));
}
