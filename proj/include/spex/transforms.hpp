#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spex/errors.hpp"
#include "spex/graph.hpp"
#include "spex/join.hpp"
#include "spex/partition.hpp"
#include "spex/spectral.hpp"

namespace spex {

/// Replace parts s1 >= s2 by s1+1 and s2-1 (the s2-1 part vanishes when
/// s2 = 1, merging the two paths). Total is preserved.
inline PathPartition s_transform(const PathPartition& p, int s1, int s2) {
    if (s1 < s2 || s2 < 1) throw InvalidArgumentError("s_transform needs s1 >= s2 >= 1");
    int need_s1 = 1 + (s1 == s2 ? 1 : 0);
    if (p.count_of(s1) < need_s1 || (s1 != s2 && p.count_of(s2) < 1))
        throw MissingPartError("partition [" + p.to_string() + "] lacks parts " + std::to_string(s1) + "," +
                               std::to_string(s2));
    std::vector<int> parts = p.parts();
    parts.erase(std::find(parts.begin(), parts.end(), s1));
    parts.erase(std::find(parts.begin(), parts.end(), s2));
    parts.push_back(s1 + 1);
    if (s2 - 1 >= 1) parts.push_back(s2 - 1);
    return PathPartition(std::move(parts));
}

/// Edge rewiring script: deletions applied first, then additions. Scripts
/// must keep the graph simple; violations raise InvalidEdit.
struct EditScript {
    std::vector<std::pair<int, int>> deletions;
    std::vector<std::pair<int, int>> additions;

    bool empty() const { return deletions.empty() && additions.empty(); }
};

inline Graph apply_edits(const Graph& g, const EditScript& e) {
    Graph out = g;
    for (auto [u, v] : e.deletions) {
        if (u < 0 || v < 0 || u >= out.order() || v >= out.order() || u == v || !out.has_edge(u, v))
            throw InvalidEditError("deletion (" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
        out.remove_edge(u, v);
    }
    for (auto [u, v] : e.additions) {
        if (u < 0 || v < 0 || u >= out.order() || v >= out.order() || u == v || out.has_edge(u, v))
            throw InvalidEditError("addition (" + std::to_string(u) + "," + std::to_string(v) + ") is not a new edge");
        out.add_edge(u, v);
    }
    return out;
}

/// Rayleigh lower bound on rho(G') - rho(G) for G' = apply_edits(G, e), with
/// x the Perron vector of G:
///   (2 sum_add x_u x_v - 2 sum_del x_u x_v) / ||x||^2.
inline double perturbation_lower_bound(const Graph& g, const EditScript& e, std::span<const double> x) {
    if (static_cast<int>(x.size()) != g.order()) throw InvalidArgumentError("vector length != graph order");
    double num = 0.0;
    for (auto [u, v] : e.additions) num += x[static_cast<std::size_t>(u)] * x[static_cast<std::size_t>(v)];
    for (auto [u, v] : e.deletions) num -= x[static_cast<std::size_t>(u)] * x[static_cast<std::size_t>(v)];
    double xx = 0.0;
    for (double xi : x) xx += xi * xi;
    return 2.0 * num / xx;
}

struct TransformComparison {
    double rho_before = 0.0;
    double rho_after = 0.0;
    double delta = 0.0;
};

/// Spectral radii of K_k ∨ H and K_k ∨ H* for the (s1,s2)-transformation,
/// both via the structured solver at shared tolerance.
inline TransformComparison compare_transform(int n, int apex_k, const PathPartition& p, int s1, int s2,
                                             const SolveOptions& opt = {}) {
    if (p.total() != n - apex_k)
        throw InvalidArgumentError("partition total " + std::to_string(p.total()) + " != n - apex_k");
    PathPartition after = s_transform(p, s1, s2);
    TransformComparison cmp;
    cmp.rho_before = spectral_radius_checked(JoinSpec(apex_k, p, apex_k == 2), opt).rho;
    cmp.rho_after = spectral_radius_checked(JoinSpec(apex_k, after, apex_k == 2), opt).rho;
    cmp.delta = cmp.rho_after - cmp.rho_before;
    return cmp;
}

struct GridSpec {
    int start = 0;
    int stop = 0;
    int step = 1;

    static GridSpec parse(const std::string& s) {
        GridSpec g;
        if (std::sscanf(s.c_str(), "%d:%d:%d", &g.start, &g.stop, &g.step) != 3)
            throw ParseError("grid needs start:stop:step, got '" + s + "'");
        g.validate();
        return g;
    }

    void validate() const {
        if (step < 1 || start > stop || start < 1) throw InvalidArgumentError("bad grid start:stop:step");
    }

    std::vector<int> values() const {
        std::vector<int> v;
        for (int x = start; x <= stop; x += step) v.push_back(x);
        return v;
    }

    std::string to_string() const {
        return std::to_string(start) + ":" + std::to_string(stop) + ":" + std::to_string(step);
    }
};

/// Partition family the scan walks: one P_{s1} and one P_{s2} plus a bulk of
/// P_2's (and a P_1 parity remainder) filling n - apex_k.
inline PathPartition scan_partition(int n, int apex_k, int s1, int s2) {
    int fill = n - apex_k - s1 - s2;
    if (fill < 0) throw InvalidArgumentError("n too small for the scan family");
    std::vector<int> parts{s1, s2};
    for (int i = 0; i < fill / 2; ++i) parts.push_back(2);
    if (fill % 2) parts.push_back(1);
    return PathPartition(std::move(parts));
}

struct TransformScanRow {
    int n = 0;
    double rho_before = 0.0;
    double rho_after = 0.0;
    double delta = 0.0;
};

struct TransformScanReport {
    int apex_k = 1;
    int s1 = 2;
    int s2 = 1;
    GridSpec grid;
    std::vector<TransformScanRow> rows;
    std::vector<int> nonpositive_ns; // grid points with delta <= 0
    /// Smallest grid n from which delta > 0 for the rest of the grid;
    /// -1 when the sign has not stabilized by the end of the grid.
    int observed_threshold_n = -1;
};

/// The comparison lemmas guarantee delta > 0 only at astronomically large n;
/// this records where positivity empirically starts on a grid instead of
/// asserting it.
inline TransformScanReport transform_scan(int apex_k, int s1, int s2, const GridSpec& grid,
                                          const SolveOptions& opt = {}) {
    if (s1 < s2 || s2 < 1) throw InvalidArgumentError("scan needs s1 >= s2 >= 1");
    TransformScanReport rep;
    rep.apex_k = apex_k;
    rep.s1 = s1;
    rep.s2 = s2;
    rep.grid = grid;
    for (int n : grid.values()) {
        PathPartition p = scan_partition(n, apex_k, s1, s2);
        TransformComparison cmp = compare_transform(n, apex_k, p, s1, s2, opt);
        rep.rows.push_back({n, cmp.rho_before, cmp.rho_after, cmp.delta});
        if (cmp.delta <= 0.0) rep.nonpositive_ns.push_back(n);
    }
    if (rep.nonpositive_ns.empty()) {
        rep.observed_threshold_n = grid.start;
    } else if (rep.nonpositive_ns.back() < (rep.rows.empty() ? grid.start : rep.rows.back().n)) {
        rep.observed_threshold_n = rep.nonpositive_ns.back() + grid.step;
    } // else: never stabilized, stays -1
    return rep;
}

} // namespace spex
