#pragma once

#include <string>

#include "spex/errors.hpp"
#include "spex/graph.hpp"
#include "spex/partition.hpp"

namespace spex {

/// Structured K_k ∨ (P_{n_1} ∪ ... ∪ P_{n_q}) with k apexes joined to every
/// path vertex. `apex_edge` is meaningful only for apex_k == 2 and is
/// normalized away for k == 1. Vertex layout of the realization: apexes
/// first, then the paths in partition order, each path consecutive — this
/// keeps graph6 output and eigenvectors reproducible.
struct JoinSpec {
    int apex_k = 1;
    bool apex_edge = false;
    PathPartition partition;

    JoinSpec() = default;

    JoinSpec(int k, PathPartition p, bool edge = false)
        : apex_k(k), apex_edge(k == 2 && edge), partition(std::move(p)) {
        if (k != 1 && k != 2) throw InvalidArgumentError("apex_k must be 1 or 2");
        if (partition.empty()) throw InvalidArgumentError("join needs a non-empty partition");
    }

    int order() const { return apex_k + partition.total(); }

    /// |E| = apex_edge + apex_k * total + sum(n_i - 1).
    std::size_t edge_count() const {
        std::size_t m = apex_edge ? 1 : 0;
        m += static_cast<std::size_t>(apex_k) * partition.total();
        for (int p : partition.parts()) m += static_cast<std::size_t>(p) - 1;
        return m;
    }

    bool operator==(const JoinSpec&) const = default;
};

inline Graph realize(const JoinSpec& spec) {
    Graph g(spec.order());
    int k = spec.apex_k;
    if (spec.apex_edge) g.add_edge(0, 1);
    int v = k;
    for (int part : spec.partition.parts()) {
        for (int i = 0; i < part; ++i, ++v) {
            for (int a = 0; a < k; ++a) g.add_edge(a, v);
            if (i > 0) g.add_edge(v - 1, v);
        }
    }
    return g;
}

namespace detail {

inline PathPartition repeat_fill(int total, std::vector<int> leading, int filler, const char* name) {
    int lead_sum = 0;
    for (std::size_t i = 0; i < leading.size(); ++i) {
        if (leading[i] < 1) throw InvalidArgumentError(std::string(name) + ": parts must be >= 1");
        if (i + 1 < leading.size() && leading[i] < leading[i + 1])
            throw InvalidArgumentError(std::string(name) + ": leading parts must be non-increasing");
        lead_sum += leading[i];
    }
    if (filler < 1) throw InvalidArgumentError(std::string(name) + ": repeated part must be >= 1");
    if (leading.back() < filler)
        throw InvalidArgumentError(std::string(name) + ": repeated part exceeds the leading parts");
    int rest = total - lead_sum;
    if (rest < 0)
        throw InvalidArgumentError(std::string(name) + ": leading parts exceed the available total");
    std::vector<int> parts = std::move(leading);
    for (int i = 0; i < rest / filler; ++i) parts.push_back(filler);
    if (rest % filler != 0) parts.push_back(rest % filler); // length-0 remainder is omitted
    return PathPartition(std::move(parts));
}

} // namespace detail

/// Partition of n-1 for the single-apex family: one P_{n1}, then as many
/// P_{n2} as fit, then the remainder path if n2 does not divide n-1-n1.
/// Accepts n1 >= n2 (equality arises for even l-2 in the balanced family).
inline PathPartition h_op(int n, int n1, int n2) {
    if (n1 > n - 1) throw InvalidArgumentError("h_op: n1 exceeds n-1");
    return detail::repeat_fill(n - 1, {n1}, n2, "h_op");
}

/// Same shape over n-2 for the two-apex family.
inline PathPartition h_p(int n, int n1, int n2) {
    if (n1 > n - 2) throw InvalidArgumentError("h_p: n1 exceeds n-2");
    return detail::repeat_fill(n - 2, {n1}, n2, "h_p");
}

/// Three-parameter variant over n-2: leading P_{n1}, P_{n2}, then copies of
/// P_{n3} and remainder. The copy count is floor((n-2-n1-n2)/n3), i.e. the
/// residual after both leading parts.
inline PathPartition h_p3(int n, int n1, int n2, int n3) {
    if (n1 + n2 > n - 2) throw InvalidArgumentError("h_p3: n1+n2 exceeds n-2");
    return detail::repeat_fill(n - 2, {n1, n2}, n3, "h_p3");
}

// ---- named reference graphs ------------------------------------------------

/// K_{1,n-1}.
inline Graph star_graph(int n) {
    if (n < 2) throw InvalidArgumentError("star needs n >= 2");
    return complete_bipartite(1, n - 1);
}

/// K_k ∨ empty(n-k): complete graph on k apexes joined to an independent set.
inline Graph s_nk(int n, int k) {
    if (n <= k || k < 1) throw InvalidArgumentError("s_nk needs n > k >= 1");
    Graph g(n);
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) g.add_edge(a, b);
    for (int a = 0; a < k; ++a)
        for (int v = k; v < n; ++v) g.add_edge(a, v);
    return g;
}

/// s_nk plus one edge inside the independent set.
inline Graph s_plus_nk(int n, int k) {
    if (n < k + 2) throw InvalidArgumentError("s_plus_nk needs n >= k+2");
    Graph g = s_nk(n, k);
    g.add_edge(k, k + 1);
    return g;
}

/// K_{2,n-2} (no apex edge).
inline Graph k_2_n2(int n) {
    if (n < 3) throw InvalidArgumentError("k_2_n2 needs n >= 3");
    return complete_bipartite(2, n - 2);
}

/// K_2 ∨ (n-2)K_1, i.e. s_nk(n, 2).
inline Graph k2_join_empty(int n) { return s_nk(n, 2); }

} // namespace spex
