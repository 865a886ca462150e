#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "spex/errors.hpp"
#include "spex/graph.hpp"
#include "spex/pattern.hpp"

namespace spex {

struct ContainmentWitness {
    Pattern pattern;
    bool found = false;
    /// pattern vertex -> host vertex, in pattern_graph's vertex layout;
    /// empty when not found.
    std::vector<int> vertex_map;
};

/// Exact maximum order of a path subgraph, by DP over vertex subsets
/// (states: subsets with a realizable trailing endpoint). O(2^n poly);
/// capped at n = 24 where the table is 64 MiB.
inline int longest_path_order(const Graph& g) {
    int n = g.order();
    if (n > 24) throw TooLargeError("longest_path_order caps at n = 24, got " + std::to_string(n));
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) adj[static_cast<std::size_t>(v)] = static_cast<std::uint32_t>(g.row64(v));
    std::vector<std::uint32_t> dp(std::size_t{1} << n, 0);
    for (int v = 0; v < n; ++v) dp[std::size_t{1} << v] = std::uint32_t{1} << v;
    int best = 1;
    for (std::size_t mask = 1; mask < dp.size(); ++mask) {
        std::uint32_t ends = dp[mask];
        if (!ends) continue;
        best = std::max(best, std::popcount(static_cast<std::uint32_t>(mask)));
        while (ends) {
            int v = std::countr_zero(ends);
            ends &= ends - 1;
            std::uint32_t ext = adj[static_cast<std::size_t>(v)] & ~static_cast<std::uint32_t>(mask);
            while (ext) {
                int w = std::countr_zero(ext);
                ext &= ext - 1;
                dp[mask | (std::size_t{1} << w)] |= std::uint32_t{1} << w;
            }
        }
    }
    return best;
}

namespace detail {

/// Shared backtracking state for all pattern embedders. Hosts are capped at
/// 64 vertices so the used set is a single word. Units (paths, branches,
/// cycles) are packed one after another with the symmetry break that unit
/// start vertices strictly increase.
struct Embedder {
    int n;
    int unit_len;                 // vertices per unit
    std::vector<std::uint64_t> adj;
    std::uint64_t used = 0;
    std::vector<int> stack;       // vertices of all placed units, concatenated

    explicit Embedder(const Graph& g, int unit_len_) : n(g.order()), unit_len(unit_len_), adj(static_cast<std::size_t>(n)) {
        for (int v = 0; v < n; ++v) adj[static_cast<std::size_t>(v)] = g.row64(v);
    }

    std::uint64_t free_neighbors(int v) const { return adj[static_cast<std::size_t>(v)] & ~used; }

    // ---- vertex-disjoint equal-length path packing --------------------------

    bool pack_paths(int copies_left, int min_start) {
        if (copies_left == 0) return true;
        if (n - std::popcount(used) < copies_left * unit_len) return false;
        // the start is the unit's smaller endpoint, so only starts increase;
        // interior vertices may lie below it
        for (int s = min_start + 1; s < n; ++s) {
            if ((used >> s) & 1) continue;
            place(s);
            if (extend_path(s, 1, copies_left)) return true;
            unplace();
        }
        return false;
    }

    bool extend_path(int v, int len, int copies_left) {
        if (len == unit_len) {
            int start = stack[stack.size() - static_cast<std::size_t>(unit_len)];
            if (unit_len > 1 && v < start) return false; // canonical orientation
            return pack_paths(copies_left - 1, start);
        }
        std::uint64_t cand = free_neighbors(v);
        while (cand) {
            int w = std::countr_zero(cand);
            cand &= cand - 1;
            place(w);
            if (extend_path(w, len + 1, copies_left)) return true;
            unplace();
        }
        return false;
    }

    // ---- starlike branches ---------------------------------------------------
    // Branch = path of unit_len vertices whose first vertex is a free
    // neighbour of the center; attach vertices strictly increase.

    bool pack_branches(int center, int branches_left, int min_attach) {
        if (branches_left == 0) return true;
        std::uint64_t cand = free_neighbors(center);
        cand &= ~((min_attach + 1 < 64 ? (std::uint64_t{1} << (min_attach + 1)) : 0) - 1);
        while (cand) {
            int s = std::countr_zero(cand);
            cand &= cand - 1;
            place(s);
            if (extend_branch(center, s, 1, branches_left)) return true;
            unplace();
        }
        return false;
    }

    bool extend_branch(int center, int v, int len, int branches_left) {
        if (len == unit_len) {
            int attach = stack[stack.size() - static_cast<std::size_t>(unit_len)];
            return pack_branches(center, branches_left - 1, attach);
        }
        std::uint64_t cand = free_neighbors(v);
        while (cand) {
            int w = std::countr_zero(cand);
            cand &= cand - 1;
            place(w);
            if (extend_branch(center, w, len + 1, branches_left)) return true;
            unplace();
        }
        return false;
    }

    // ---- book pages ------------------------------------------------------------
    // Page = cycle through the hub; stored as its l-1 non-hub vertices, both
    // end vertices adjacent to the hub. Pages share no vertex besides the
    // hub, which also makes them edge-disjoint.

    bool pack_pages(int hub, int pages_left, int min_start) {
        if (pages_left == 0) return true;
        std::uint64_t cand = free_neighbors(hub);
        cand &= ~((min_start + 1 < 64 ? (std::uint64_t{1} << (min_start + 1)) : 0) - 1);
        while (cand) {
            int s = std::countr_zero(cand);
            cand &= cand - 1;
            place(s);
            if (extend_page(hub, s, 1, pages_left)) return true;
            unplace();
        }
        return false;
    }

    bool extend_page(int hub, int v, int len, int pages_left) {
        if (len == unit_len) {
            int start = stack[stack.size() - static_cast<std::size_t>(unit_len)];
            if (v < start) return false;                          // canonical orientation
            if (!((adj[static_cast<std::size_t>(hub)] >> v) & 1)) return false; // close the cycle
            return pack_pages(hub, pages_left - 1, start);
        }
        std::uint64_t cand = free_neighbors(v);
        while (cand) {
            int w = std::countr_zero(cand);
            cand &= cand - 1;
            place(w);
            if (extend_page(hub, w, len + 1, pages_left)) return true;
            unplace();
        }
        return false;
    }

    void place(int v) {
        used |= std::uint64_t{1} << v;
        stack.push_back(v);
    }

    void unplace() {
        used &= ~(std::uint64_t{1} << stack.back());
        stack.pop_back();
    }
};

} // namespace detail

/// Witness vertex lists per pattern component: one list per path copy, or
/// the center/hub singleton followed by one list per branch/page.
inline std::vector<std::vector<int>> witness_components(const ContainmentWitness& w) {
    std::vector<std::vector<int>> out;
    if (!w.found) return out;
    const auto& map = w.vertex_map;
    switch (w.pattern.kind) {
        case PatternKind::path:
            out.emplace_back(map.begin(), map.end());
            break;
        case PatternKind::linear_forest:
            for (int c = 0; c < w.pattern.t; ++c)
                out.emplace_back(map.begin() + c * w.pattern.l, map.begin() + (c + 1) * w.pattern.l);
            break;
        case PatternKind::starlike:
        case PatternKind::book: {
            out.push_back({map.front()});
            int seg = w.pattern.l - 1;
            for (int c = 0; c < w.pattern.t; ++c)
                out.emplace_back(map.begin() + 1 + c * seg, map.begin() + 1 + (c + 1) * seg);
            break;
        }
    }
    return out;
}

/// Decides whether `p` embeds in `g` as a (not necessarily induced)
/// subgraph; linear forests need vertex-disjoint copies, books need cycles
/// sharing exactly the hub. Exact backtracking, host order capped at 64.
inline ContainmentWitness contains(const Graph& g, const Pattern& p) {
    if (g.order() > 64) throw TooLargeError("contains caps hosts at n = 64, got " + std::to_string(g.order()));
    ContainmentWitness w;
    w.pattern = p;
    if (p.order() > g.order()) return w;
    switch (p.kind) {
        case PatternKind::path:
        case PatternKind::linear_forest: {
            detail::Embedder e(g, p.l);
            if (e.pack_paths(p.kind == PatternKind::path ? 1 : p.t, -1)) {
                w.found = true;
                w.vertex_map = e.stack;
            }
            return w;
        }
        case PatternKind::starlike: {
            detail::Embedder e(g, p.l - 1);
            for (int c = 0; c < g.order(); ++c) {
                if (g.degree(c) < p.t) continue;
                e.used = std::uint64_t{1} << c;
                e.stack.clear();
                if (e.pack_branches(c, p.t, -1)) {
                    w.found = true;
                    w.vertex_map.push_back(c);
                    w.vertex_map.insert(w.vertex_map.end(), e.stack.begin(), e.stack.end());
                    return w;
                }
            }
            return w;
        }
        case PatternKind::book: {
            detail::Embedder e(g, p.l - 1);
            for (int h = 0; h < g.order(); ++h) {
                if (g.degree(h) < 2 * p.t) continue;
                e.used = std::uint64_t{1} << h;
                e.stack.clear();
                if (e.pack_pages(h, p.t, -1)) {
                    w.found = true;
                    w.vertex_map.push_back(h);
                    w.vertex_map.insert(w.vertex_map.end(), e.stack.begin(), e.stack.end());
                    return w;
                }
            }
            return w;
        }
    }
    return w;
}

} // namespace spex
