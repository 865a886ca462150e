#pragma once

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "spex/graph.hpp"

namespace spex {

namespace detail {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;

/// `extra_apex` adds one universal vertex (the cone used for the outerplanarity
/// reduction).
inline BoostGraph to_boost(const Graph& g, bool extra_apex) {
    int n = g.order();
    BoostGraph bg(static_cast<std::size_t>(n) + (extra_apex ? 1 : 0));
    for (int u = 0; u < n; ++u)
        g.for_neighbors(u, [&](int v) {
            if (u < v) boost::add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), bg);
        });
    if (extra_apex)
        for (int u = 0; u < n; ++u) boost::add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(n), bg);
    return bg;
}

} // namespace detail

inline bool is_planar(const Graph& g) {
    if (g.order() <= 4) return true;
    if (g.edge_count() > 3 * static_cast<std::size_t>(g.order()) - 6) return false;
    auto bg = detail::to_boost(g, false);
    return boost::boyer_myrvold_planarity_test(bg);
}

/// G is outerplanar iff the cone K_1 ∨ G is planar.
inline bool is_outerplanar(const Graph& g) {
    if (g.order() <= 3) return true;
    if (g.edge_count() > 2 * static_cast<std::size_t>(g.order()) - 3) return false;
    auto bg = detail::to_boost(g, true);
    return boost::boyer_myrvold_planarity_test(bg);
}

} // namespace spex
