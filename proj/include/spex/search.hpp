#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "spex/containment.hpp"
#include "spex/errors.hpp"
#include "spex/extremal.hpp"
#include "spex/graph.hpp"
#include "spex/join.hpp"
#include "spex/partition.hpp"
#include "spex/pattern.hpp"
#include "spex/planarity.hpp"
#include "spex/spectral.hpp"
#include "spex/transforms.hpp"

#include "json.hpp"

namespace spex {

enum class GraphClass { all, planar, outerplanar };

inline std::string to_string(GraphClass c) {
    switch (c) {
        case GraphClass::all: return "all";
        case GraphClass::planar: return "planar";
        case GraphClass::outerplanar: return "outerplanar";
    }
    return {};
}

inline GraphClass parse_graph_class(const std::string& s) {
    if (s == "all") return GraphClass::all;
    if (s == "planar") return GraphClass::planar;
    if (s == "outerplanar") return GraphClass::outerplanar;
    throw ParseError("unknown graph class '" + s + "'");
}

enum class FreenessMode { structured, generic };

inline std::string to_string(FreenessMode m) {
    return m == FreenessMode::structured ? "structured" : "generic";
}

struct SearchOptions {
    SolveOptions solve;
    double tie_tol = 1e-8; // looser than solver tol, groups numerically equal maximizers
    int threads = 1;
    std::string checkpoint_path; // whole-space scans only; empty disables
};

// ---- partition-family argmax ---------------------------------------------------

struct PartitionMaximizer {
    PathPartition partition;
    double rho = 0.0;
};

struct ArgmaxReport {
    int n = 0;
    int apex_k = 1;
    Pattern pattern;
    FreenessMode mode = FreenessMode::structured;
    std::vector<PartitionMaximizer> best; // all co-maximizers, lexicographically sorted
    std::uint64_t explored = 0;           // partitions enumerated
    std::uint64_t free_count = 0;         // partitions passing the freeness filter
    double runtime_seconds = 0.0;
    bool has_reference = false; // comparison against a candidate, when supplied
    PathPartition reference;
    double reference_rho = 0.0;
    bool reference_free = false;
    bool agrees = false; // reference is among the co-maximizers

    const PartitionMaximizer& top() const {
        if (best.empty()) throw InvalidArgumentError("no free partition found");
        return best.front();
    }
};

/// Exhaustive argmax of rho over all join graphs K_k ∨ H with H ranging over
/// the partitions of n - apex_k, filtered by freeness. Reverse-lexicographic
/// enumeration, deterministic ties (all co-maximizers kept, sorted).
inline ArgmaxReport argmax_partitions(int n, int apex_k, const Pattern& pattern, FreenessMode mode,
                                      const SearchOptions& opts = {}, const PathPartition* reference = nullptr) {
    int m = n - apex_k;
    if (m < 1) throw InvalidArgumentError("n too small for the apex count");
    if (m > 60) throw BudgetExceededError("argmax_partitions caps n - apex_k at 60");
    if (mode == FreenessMode::generic && n > 64)
        throw BudgetExceededError("generic freeness caps realized order at 64");
    auto t0 = std::chrono::steady_clock::now();
    ArgmaxReport rep;
    rep.n = n;
    rep.apex_k = apex_k;
    rep.pattern = pattern;
    rep.mode = mode;
    auto is_free = [&](const PathPartition& p) {
        if (mode == FreenessMode::structured)
            return structured_free(apex_k, p, pattern).is_free();
        return !contains(realize(JoinSpec(apex_k, p, apex_k == 2)), pattern).found;
    };
    double best_rho = -1.0;
    for_each_partition(m, [&](std::span<const int> parts) {
        ++rep.explored;
        PathPartition p(std::vector<int>(parts.begin(), parts.end()));
        if (!is_free(p)) return true;
        ++rep.free_count;
        double rho = spectral_radius_checked(JoinSpec(apex_k, p, apex_k == 2), opts.solve).rho;
        if (rho > best_rho + opts.tie_tol) {
            best_rho = rho;
            rep.best.clear();
            rep.best.push_back({std::move(p), rho});
        } else if (rho >= best_rho - opts.tie_tol) {
            best_rho = std::max(best_rho, rho);
            rep.best.push_back({std::move(p), rho});
        }
        return true;
    });
    // co-maximizers may have entered before a slightly larger rho arrived
    std::erase_if(rep.best, [&](const PartitionMaximizer& pm) { return pm.rho < best_rho - opts.tie_tol; });
    std::sort(rep.best.begin(), rep.best.end(),
              [](const PartitionMaximizer& a, const PartitionMaximizer& b) { return a.partition < b.partition; });
    if (reference) {
        rep.has_reference = true;
        rep.reference = *reference;
        rep.reference_free = is_free(*reference);
        rep.reference_rho = spectral_radius_checked(JoinSpec(apex_k, *reference, apex_k == 2), opts.solve).rho;
        rep.agrees = std::any_of(rep.best.begin(), rep.best.end(),
                                 [&](const PartitionMaximizer& pm) { return pm.partition == *reference; });
    }
    rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// ---- whole-space oracle at toy sizes -------------------------------------------

struct GraphMaximizer {
    std::string graph6;
    double rho = 0.0;
};

struct OracleReport {
    int n = 0;
    GraphClass cls = GraphClass::all;
    std::optional<Pattern> pattern;
    std::vector<GraphMaximizer> best; // fingerprint-deduped, sorted by graph6
    std::uint64_t explored = 0;       // edge masks scanned
    std::uint64_t evaluated = 0;      // graphs whose rho was computed
    double runtime_seconds = 0.0;
    int threads = 1;
    bool resumed = false;
};

namespace detail {

inline Graph graph_from_mask(int n, std::uint64_t mask) {
    Graph g(n);
    int bit = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++bit)
            if ((mask >> bit) & 1) g.add_edge(i, j);
    return g;
}

/// Degree sequence + rounded spectrum; collisions over-report co-maximizers,
/// which is acceptable (missing a class member is not).
inline std::uint64_t iso_fingerprint(const Graph& g) {
    std::vector<int> deg(static_cast<std::size_t>(g.order()));
    for (int v = 0; v < g.order(); ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);
    std::sort(deg.begin(), deg.end());
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    for (int d : deg) mix(static_cast<std::uint64_t>(d) + 1);
    for (double ev : small_graph_spectrum(g)) mix(static_cast<std::uint64_t>(std::llround(ev * 1e6)) + (1ull << 62));
    return h;
}

} // namespace detail

/// Scan all labeled graphs on n <= 8 vertices, filter by class and freeness,
/// and return the global rho argmax. The mask space is split into blocks by
/// the high-order edge bits; workers share nothing and the merge is an
/// associative max over block results in block order, so reports are
/// deterministic for any thread count. A JSON checkpoint makes long scans
/// resumable at block granularity.
inline OracleReport tiny_oracle(int n, GraphClass cls, std::optional<Pattern> pattern,
                                const SearchOptions& opts = {}) {
    if (n < 1 || n > 8) throw BudgetExceededError("tiny_oracle caps n at 8");
    auto t0 = std::chrono::steady_clock::now();
    OracleReport rep;
    rep.n = n;
    rep.cls = cls;
    rep.pattern = pattern;
    rep.threads = std::max(1, opts.threads);

    int bits = n * (n - 1) / 2;
    int block_bits = std::min(16, bits);
    std::uint64_t block_size = std::uint64_t{1} << block_bits;
    std::uint64_t nblocks = std::uint64_t{1} << (bits - block_bits);

    std::size_t max_edges = static_cast<std::size_t>(bits);
    if (n >= 3 && cls == GraphClass::planar) max_edges = static_cast<std::size_t>(3 * n - 6);
    if (n >= 3 && cls == GraphClass::outerplanar) max_edges = static_cast<std::size_t>(2 * n - 3);

    nlohmann::json params{{"n", n},
                          {"class", to_string(cls)},
                          {"pattern", pattern ? to_string(*pattern) : "none"},
                          {"block_bits", block_bits}};

    std::vector<char> block_done(nblocks, 0);
    std::vector<std::vector<std::pair<std::uint64_t, double>>> block_hits(nblocks);
    std::vector<std::pair<std::uint64_t, double>> seed_hits;
    std::uint64_t seed_explored = 0, seed_evaluated = 0;
    if (!opts.checkpoint_path.empty()) {
        std::ifstream in(opts.checkpoint_path);
        if (in) {
            nlohmann::json ck = nlohmann::json::parse(in, nullptr, false);
            if (!ck.is_discarded() && ck.value("params", nlohmann::json{}) == params) {
                for (std::uint64_t b : ck.at("done_blocks").get<std::vector<std::uint64_t>>())
                    if (b < nblocks) block_done[b] = 1;
                for (const auto& c : ck.at("candidates"))
                    seed_hits.emplace_back(c.at(0).get<std::uint64_t>(), c.at(1).get<double>());
                seed_explored = ck.value("explored", std::uint64_t{0});
                seed_evaluated = ck.value("evaluated", std::uint64_t{0});
                rep.resumed = true;
            }
        }
    }

    std::atomic<std::uint64_t> next_block{0};
    std::atomic<std::uint64_t> explored{seed_explored}, evaluated{seed_evaluated};
    std::mutex ck_mutex;
    std::uint64_t ck_counter = 0;

    auto write_checkpoint = [&]() {
        if (opts.checkpoint_path.empty()) return;
        nlohmann::json ck;
        ck["params"] = params;
        std::vector<std::uint64_t> done;
        nlohmann::json cands = nlohmann::json::array();
        for (std::uint64_t b = 0; b < nblocks; ++b)
            if (block_done[b]) {
                done.push_back(b);
                for (auto& [mask, rho] : block_hits[b]) cands.push_back({mask, rho});
            }
        for (auto& [mask, rho] : seed_hits) cands.push_back({mask, rho});
        ck["done_blocks"] = done;
        ck["candidates"] = cands;
        ck["explored"] = explored.load();
        ck["evaluated"] = evaluated.load();
        std::ofstream out(opts.checkpoint_path, std::ios::trunc);
        out << ck.dump();
    };

    auto finish_block = [&](std::uint64_t b, std::vector<std::pair<std::uint64_t, double>>&& hits) {
        if (opts.checkpoint_path.empty()) {
            block_hits[b] = std::move(hits);
            block_done[b] = 1;
            return;
        }
        std::lock_guard<std::mutex> lock(ck_mutex);
        block_hits[b] = std::move(hits);
        block_done[b] = 1;
        if (++ck_counter % 64 == 0) write_checkpoint();
    };

    auto worker = [&]() {
        for (;;) {
            std::uint64_t b = next_block.fetch_add(1);
            if (b >= nblocks) break;
            if (block_done[b]) continue;
            std::uint64_t local_explored = 0, local_evaluated = 0;
            std::vector<std::pair<std::uint64_t, double>> hits;
            // the prune reference resets per block so every block's work (and
            // every counter) is a pure function of the block, keeping reports
            // byte-identical for any thread count or schedule
            double block_best = -1.0;
            for (std::uint64_t lo = 0; lo < block_size; ++lo) {
                std::uint64_t mask = (b << block_bits) | lo;
                ++local_explored;
                int m = std::popcount(mask);
                if (static_cast<std::size_t>(m) > max_edges) continue;
                // rho <= sqrt(2m) (trace bound); skip masks that cannot win
                if (block_best > 0 && 2.0 * m < (block_best - opts.tie_tol) * (block_best - opts.tie_tol))
                    continue;
                Graph g = detail::graph_from_mask(n, mask);
                if (pattern && contains(g, *pattern).found) continue;
                if (cls == GraphClass::planar && !is_planar(g)) continue;
                if (cls == GraphClass::outerplanar && !is_outerplanar(g)) continue;
                ++local_evaluated;
                double rho = spectral_radius_checked(g, opts.solve).rho;
                if (rho >= block_best - opts.tie_tol) {
                    block_best = std::max(block_best, rho);
                    hits.emplace_back(mask, rho);
                }
            }
            std::erase_if(hits, [&](const auto& h) { return h.second < block_best - opts.tie_tol; });
            explored += local_explored;
            evaluated += local_evaluated;
            finish_block(b, std::move(hits));
        }
    };

    int nthreads = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(rep.threads), nblocks));
    std::vector<std::thread> pool;
    for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    write_checkpoint();

    rep.explored = explored;
    rep.evaluated = evaluated;

    // deterministic merge in block order, then fingerprint dedupe
    double best_rho = -1.0;
    for (auto& [mask, rho] : seed_hits) best_rho = std::max(best_rho, rho);
    for (std::uint64_t b = 0; b < nblocks; ++b)
        for (auto& [mask, rho] : block_hits[b]) best_rho = std::max(best_rho, rho);
    std::vector<std::pair<std::uint64_t, double>> winners(seed_hits);
    for (std::uint64_t b = 0; b < nblocks; ++b)
        winners.insert(winners.end(), block_hits[b].begin(), block_hits[b].end());
    std::erase_if(winners, [&](const auto& h) { return h.second < best_rho - opts.tie_tol; });
    std::sort(winners.begin(), winners.end());
    winners.erase(std::unique(winners.begin(), winners.end()), winners.end());
    std::vector<std::uint64_t> seen;
    for (auto& [mask, rho] : winners) {
        Graph g = detail::graph_from_mask(n, mask);
        std::uint64_t fp = detail::iso_fingerprint(g);
        if (std::find(seen.begin(), seen.end(), fp) != seen.end()) continue;
        seen.push_back(fp);
        rep.best.push_back({to_graph6(g), rho});
    }
    std::sort(rep.best.begin(), rep.best.end(),
              [](const GraphMaximizer& a, const GraphMaximizer& b) { return a.graph6 < b.graph6; });
    rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// ---- open-problem evidence scans -------------------------------------------------

enum class ProblemId { P1, P2, P3 };

inline std::string to_string(ProblemId p) {
    switch (p) {
        case ProblemId::P1: return "P1";
        case ProblemId::P2: return "P2";
        case ProblemId::P3: return "P3";
    }
    return {};
}

inline ProblemId parse_problem(const std::string& s) {
    if (s == "P1") return ProblemId::P1;
    if (s == "P2") return ProblemId::P2;
    if (s == "P3") return ProblemId::P3;
    throw ParseError("unknown problem id '" + s + "'");
}

struct ConjectureRow {
    int n = 0;
    PathPartition best;
    double best_rho = 0.0;
    PathPartition conjectured;
    double conjectured_rho = 0.0;
    bool conjectured_free = false;
    bool agrees = false;
};

struct ConjectureReport {
    ProblemId problem = ProblemId::P1;
    int l = 3;
    int apex_k = 1;
    Pattern pattern;
    GridSpec grid;
    std::vector<ConjectureRow> rows;
    std::uint64_t explored = 0;
    double runtime_seconds = 0.0;
};

/// Numerical evidence for the open t=3 (one apex) and t=3,4 (two apex)
/// starlike cases: per grid point, the partition-family argmax under generic
/// freeness versus the conjectured candidate.
inline ConjectureReport conjecture_scan(ProblemId id, int l, const GridSpec& grid, const SearchOptions& opts = {}) {
    if (l < 3) throw InvalidArgumentError("conjecture scans need l >= 3");
    auto t0 = std::chrono::steady_clock::now();
    ConjectureReport rep;
    rep.problem = id;
    rep.l = l;
    rep.grid = grid;
    switch (id) {
        case ProblemId::P1: rep.apex_k = 1; rep.pattern = Pattern::starlike(3, l); break;
        case ProblemId::P2: rep.apex_k = 2; rep.pattern = Pattern::starlike(3, l); break;
        case ProblemId::P3: rep.apex_k = 2; rep.pattern = Pattern::starlike(4, l); break;
    }
    for (int n : grid.values()) {
        PathPartition conj = id == ProblemId::P1   ? h_op(n, 2 * l - 2, l - 2)
                             : id == ProblemId::P2 ? h_p(n, l - 1, l - 2)
                                                   : h_p(n, 2 * l - 2, l - 2);
        ArgmaxReport arep = argmax_partitions(n, rep.apex_k, rep.pattern, FreenessMode::generic, opts, &conj);
        rep.explored += arep.explored;
        ConjectureRow row;
        row.n = n;
        row.best = arep.top().partition;
        row.best_rho = arep.top().rho;
        row.conjectured = conj;
        row.conjectured_rho = arep.reference_rho;
        row.conjectured_free = arep.reference_free;
        row.agrees = arep.agrees;
        rep.rows.push_back(std::move(row));
    }
    rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace spex
