#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <span>
#include <vector>

#include "spex/errors.hpp"
#include "spex/graph.hpp"
#include "spex/join.hpp"

namespace spex {

struct SolveOptions {
    double tol = 1e-10;   // on ||A x - rho x||_inf with x max-normalized
    long max_iter = 200000;
};

struct SpectralResult {
    double rho = 0.0;
    std::vector<double> vector; // Perron estimate, max entry = 1
    double residual = 0.0;
    long iterations = 0;
    bool converged = false;
    bool connected = true;
    int achieving_component = 0; // component attaining rho (0 if connected)
};

namespace detail {

/// Shifted power iteration on A + I with all-ones start. The shift makes the
/// dominant eigenvalue strictly separated for every graph (bipartite ones
/// oscillate otherwise); the Rayleigh quotient supplies the rho estimate, so
/// eigenvalue error is quadratic in the residual.
template <class MatVec>
SpectralResult power_iterate(int n, MatVec&& mv, const SolveOptions& opt) {
    SpectralResult res;
    std::vector<double> x(static_cast<std::size_t>(n), 1.0), y(static_cast<std::size_t>(n), 0.0);
    for (long it = 1; it <= opt.max_iter; ++it) {
        mv(std::span<const double>(x), std::span<double>(y));
        double xy = 0.0, xx = 0.0;
        for (int i = 0; i < n; ++i) {
            xy += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
            xx += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
        }
        double rho = xy / xx;
        double resid = 0.0;
        for (int i = 0; i < n; ++i)
            resid = std::max(resid, std::abs(y[static_cast<std::size_t>(i)] - rho * x[static_cast<std::size_t>(i)]));
        res.rho = rho;
        res.residual = resid;
        res.iterations = it;
        if (resid <= opt.tol) {
            res.converged = true;
            res.vector = x;
            return res;
        }
        double mx = 0.0;
        for (int i = 0; i < n; ++i) {
            y[static_cast<std::size_t>(i)] += x[static_cast<std::size_t>(i)];
            mx = std::max(mx, y[static_cast<std::size_t>(i)]);
        }
        for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] / mx;
    }
    res.vector = x;
    return res; // converged stays false
}

inline SpectralResult solve_connected(const Graph& g, const SolveOptions& opt) {
    int n = g.order();
    auto mv = [&](std::span<const double> x, std::span<double> y) {
        for (int u = 0; u < n; ++u) {
            double s = 0.0;
            auto r = g.row(u);
            for (std::size_t w = 0; w < r.size(); ++w) {
                std::uint64_t bits = r[w];
                while (bits) {
                    int b = std::countr_zero(bits);
                    s += x[w * 64 + static_cast<std::size_t>(b)];
                    bits &= bits - 1;
                }
            }
            y[static_cast<std::size_t>(u)] = s;
        }
    };
    return power_iterate(n, mv, opt);
}

} // namespace detail

/// Spectral radius of an arbitrary graph. Disconnected inputs are decomposed;
/// rho is the max over components and `achieving_component` names the winner
/// (Perron positivity then holds only on that component's entries; the rest
/// of the returned vector is zero).
inline SpectralResult spectral_radius(const Graph& g, const SolveOptions& opt = {}) {
    auto ids = g.component_ids();
    int ncomp = ids.empty() ? 0 : 1 + *std::max_element(ids.begin(), ids.end());
    if (ncomp <= 1) {
        SpectralResult r = detail::solve_connected(g, opt);
        r.connected = true;
        return r;
    }
    SpectralResult best;
    best.rho = -1.0;
    long total_iters = 0;
    bool all_converged = true;
    std::vector<int> best_verts;
    for (int c = 0; c < ncomp; ++c) {
        std::vector<int> verts;
        for (int v = 0; v < g.order(); ++v)
            if (ids[static_cast<std::size_t>(v)] == c) verts.push_back(v);
        SpectralResult r = detail::solve_connected(g.induced(verts), opt);
        total_iters += r.iterations;
        all_converged = all_converged && r.converged;
        if (r.rho > best.rho) {
            best = r;
            best.achieving_component = c;
            best_verts = verts;
        }
    }
    std::vector<double> full(static_cast<std::size_t>(g.order()), 0.0);
    for (std::size_t i = 0; i < best_verts.size(); ++i)
        full[static_cast<std::size_t>(best_verts[i])] = best.vector[i];
    best.vector = std::move(full);
    best.iterations = total_iters;
    best.converged = all_converged;
    best.connected = false;
    return best;
}

/// Structured O(n) mat-vec: apex rows sum all non-apex entries; path rows sum
/// their at most two path neighbours plus the apex entries.
inline SpectralResult spectral_radius(const JoinSpec& spec, const SolveOptions& opt = {}) {
    int n = spec.order();
    int k = spec.apex_k;
    const auto& parts = spec.partition.parts();
    auto mv = [&](std::span<const double> x, std::span<double> y) {
        double apex_sum = x[0] + (k == 2 ? x[1] : 0.0);
        double nonapex_sum = 0.0;
        for (int v = k; v < n; ++v) nonapex_sum += x[static_cast<std::size_t>(v)];
        for (int a = 0; a < k; ++a)
            y[static_cast<std::size_t>(a)] = nonapex_sum + (spec.apex_edge ? x[static_cast<std::size_t>(1 - a)] : 0.0);
        std::size_t v = static_cast<std::size_t>(k);
        for (int part : parts) {
            for (int i = 0; i < part; ++i, ++v) {
                double s = apex_sum;
                if (i > 0) s += x[v - 1];
                if (i + 1 < part) s += x[v + 1];
                y[v] = s;
            }
        }
    };
    SpectralResult r = detail::power_iterate(n, mv, opt);
    r.connected = true;
    return r;
}

/// Throwing wrapper for callers that require convergence.
template <class Input>
SpectralResult spectral_radius_checked(const Input& in, const SolveOptions& opt = {}) {
    SpectralResult r = spectral_radius(in, opt);
    if (!r.converged)
        throw NonConvergenceError("residual " + std::to_string(r.residual) + " > tol after " +
                                  std::to_string(r.iterations) + " iterations");
    return r;
}

inline double rayleigh_quotient(const Graph& g, std::span<const double> x) {
    if (static_cast<int>(x.size()) != g.order()) throw InvalidArgumentError("vector length != graph order");
    double xx = 0.0, xax = 0.0;
    for (int u = 0; u < g.order(); ++u) {
        xx += x[static_cast<std::size_t>(u)] * x[static_cast<std::size_t>(u)];
        double s = 0.0;
        g.for_neighbors(u, [&](int v) { s += x[static_cast<std::size_t>(v)]; });
        xax += x[static_cast<std::size_t>(u)] * s;
    }
    if (xx == 0.0) throw InvalidArgumentError("zero vector");
    return xax / xx;
}

// ---- closed forms (test oracles) -------------------------------------------

inline double star_rho(int n) { return std::sqrt(static_cast<double>(n - 1)); }
inline double k_2_n2_rho(int n) { return std::sqrt(2.0 * n - 4.0); }
inline double k2_join_empty_rho(int n) { return (1.0 + std::sqrt(8.0 * n - 15.0)) / 2.0; }

// ---- class bounds -----------------------------------------------------------

/// rho(G) <= 3/2 + sqrt(n - 7/4) for connected outerplanar G, n >= 3.
inline double outerplanar_bound(int n) {
    if (n < 3) throw InvalidArgumentError("outerplanar_bound needs n >= 3");
    return 1.5 + std::sqrt(n - 1.75);
}

/// rho(G) <= 2 + sqrt(2n - 6) for planar G, n >= 3.
inline double planar_bound(int n) {
    if (n < 3) throw InvalidArgumentError("planar_bound needs n >= 3");
    return 2.0 + std::sqrt(2.0 * n - 6.0);
}

// ---- per-vertex eigenvector brackets ----------------------------------------

/// Bracket c/rho <= x_u <= c/rho + d/rho^2 for non-apex vertices, c=1, d=2.04
/// for a single apex and c=2, d=4.496 for two. Violations are data, not
/// errors: the brackets are asymptotic and the report records where they
/// start holding.
struct BracketReport {
    int n = 0;
    int apex_count = 1;
    double rho = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    int checked = 0;
    int lower_violations = 0;
    int upper_violations = 0;
    double min_lower_slack = 0.0; // min over u of x_u - lower
    double min_upper_slack = 0.0; // min over u of upper - x_u
    double min_entry = 0.0;
    double max_entry = 0.0;
    bool all_within = false;
};

/// Assumes the apexes-first vertex layout of realized joins and a vector
/// normalized so the max entry is 1. `tol` absorbs solver error at the exact
/// equality cases (star leaves sit exactly on the lower bound).
inline BracketReport check_eigenvector_bounds(const SpectralResult& result, int apex_count, double tol = 1e-9) {
    if (apex_count != 1 && apex_count != 2) throw InvalidArgumentError("apex_count must be 1 or 2");
    BracketReport rep;
    rep.n = static_cast<int>(result.vector.size());
    rep.apex_count = apex_count;
    rep.rho = result.rho;
    double c = apex_count == 1 ? 1.0 : 2.0;
    double d = apex_count == 1 ? 2.04 : 4.496;
    rep.lower = c / result.rho;
    rep.upper = c / result.rho + d / (result.rho * result.rho);
    rep.min_lower_slack = std::numeric_limits<double>::infinity();
    rep.min_upper_slack = std::numeric_limits<double>::infinity();
    rep.min_entry = std::numeric_limits<double>::infinity();
    rep.max_entry = -std::numeric_limits<double>::infinity();
    for (int u = apex_count; u < rep.n; ++u) {
        double x = result.vector[static_cast<std::size_t>(u)];
        ++rep.checked;
        rep.min_entry = std::min(rep.min_entry, x);
        rep.max_entry = std::max(rep.max_entry, x);
        rep.min_lower_slack = std::min(rep.min_lower_slack, x - rep.lower);
        rep.min_upper_slack = std::min(rep.min_upper_slack, rep.upper - x);
        if (x < rep.lower - tol) ++rep.lower_violations;
        if (x > rep.upper + tol) ++rep.upper_violations;
    }
    rep.all_within = rep.lower_violations == 0 && rep.upper_violations == 0;
    return rep;
}

// ---- full spectrum at toy sizes ---------------------------------------------

/// Full adjacency spectrum by cyclic Jacobi; for isomorphism fingerprints in
/// the whole-space oracle. n is capped because this is O(n^3) per sweep.
inline std::vector<double> small_graph_spectrum(const Graph& g) {
    int n = g.order();
    if (n > 32) throw TooLargeError("small_graph_spectrum caps at n = 32");
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    for (int u = 0; u < n; ++u)
        g.for_neighbors(u, [&](int v) { a[static_cast<std::size_t>(u) * n + v] = 1.0; });
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
        if (off < 1e-24) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (std::abs(apq) < 1e-15) continue;
                double theta = 0.5 * (at(q, q) - at(p, p)) / apq;
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double cth = 1.0 / std::sqrt(t * t + 1.0), s = t * cth;
                for (int i = 0; i < n; ++i) {
                    double aip = at(i, p), aiq = at(i, q);
                    at(i, p) = cth * aip - s * aiq;
                    at(i, q) = s * aip + cth * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    double api = at(p, i), aqi = at(q, i);
                    at(p, i) = cth * api - s * aqi;
                    at(q, i) = s * api + cth * aqi;
                }
            }
    }
    std::vector<double> eig(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = at(i, i);
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig;
}

} // namespace spex
