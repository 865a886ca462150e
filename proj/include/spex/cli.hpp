#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "spex/containment.hpp"
#include "spex/errors.hpp"
#include "spex/extremal.hpp"
#include "spex/graph.hpp"
#include "spex/join.hpp"
#include "spex/partition.hpp"
#include "spex/pattern.hpp"
#include "spex/planarity.hpp"
#include "spex/search.hpp"
#include "spex/serialize.hpp"
#include "spex/spectral.hpp"
#include "spex/transforms.hpp"

namespace spex {

namespace cli_detail {

inline int default_threads() {
    if (const char* env = std::getenv("SPEX_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

struct Options {
    std::string format; // resolved per subcommand when empty
    std::string out_path;
    bool timing = false;
    double tol = 1e-10;
    long max_iter = 200000;
    int threads = default_threads();

    // construct / rho / free sources
    std::string family;
    int n = 0, n1 = 0, n2 = 0, n3 = 0, k = 1;
    int apex = 0;
    bool apex_edge = false;
    std::string partition_csv;
    std::string named;
    std::string graph6;
    std::string pattern_str;
    std::string variant = "auto";
    bool dump_vector = false;

    // transform-scan / conjecture grids
    int s1 = 2, s2 = 1;
    std::string grid = "30:2000:10";

    // candidate / search
    std::string theorem;
    int t = 1, l = 3;
    bool alt_form = false;
    bool verify = false;
    int generic_max_order = 64;
    std::string mode = "structured";
    std::string graph_class = "outerplanar";
    std::string checkpoint;
    std::string problem = "P1";

    SolveOptions solve_options() const { return {tol, max_iter}; }
    SearchOptions search_options() const {
        SearchOptions s;
        s.solve = solve_options();
        s.threads = threads;
        s.checkpoint_path = checkpoint;
        return s;
    }
};

inline std::string format_or(const Options& o, const char* dflt) {
    return o.format.empty() ? std::string(dflt) : o.format;
}

inline void emit(const Options& opt, std::ostream& fallback, const std::string& payload) {
    if (opt.out_path.empty()) {
        fallback << payload;
        if (!payload.empty() && payload.back() != '\n') fallback << '\n';
    } else {
        std::ofstream f(opt.out_path, std::ios::trunc);
        if (!f) throw InvalidArgumentError("cannot open output path '" + opt.out_path + "'");
        f << payload;
        if (!payload.empty() && payload.back() != '\n') f << '\n';
    }
}

inline ClaimVariant parse_variant(const std::string& s) {
    if (s == "auto") return ClaimVariant::auto_select;
    if (s == "path1") return ClaimVariant::path_single;
    if (s == "path2") return ClaimVariant::path_double;
    if (s == "forest1") return ClaimVariant::forest_single;
    if (s == "forest2") return ClaimVariant::forest_double;
    if (s == "bound1") return ClaimVariant::forest_bound_single;
    if (s == "bound2") return ClaimVariant::forest_bound_double;
    if (s == "split1") return ClaimVariant::forest_split_single;
    if (s == "split2") return ClaimVariant::forest_split_double;
    if (s == "star1") return ClaimVariant::starlike_single;
    if (s == "star2") return ClaimVariant::starlike_double;
    throw ParseError("unknown variant '" + s + "'");
}

/// Exactly one graph source for construct/rho; joins keep their structure.
struct GraphSource {
    std::optional<JoinSpec> join;
    std::optional<Graph> graph;

    Graph materialize() const { return join ? realize(*join) : *graph; }
};

inline GraphSource resolve_source(const Options& o) {
    int given = (!o.family.empty()) + (!o.named.empty()) + (!o.graph6.empty()) + (!o.partition_csv.empty());
    if (given != 1)
        throw InvalidArgumentError("need exactly one graph source (--family / --named / --graph6 / --partition)");
    GraphSource src;
    if (!o.family.empty()) {
        if (o.n < 2) throw InvalidArgumentError("--family needs --n");
        if (o.family == "hop")
            src.join = JoinSpec(1, h_op(o.n, o.n1, o.n2));
        else if (o.family == "hp")
            src.join = JoinSpec(2, h_p(o.n, o.n1, o.n2), true);
        else if (o.family == "hp3")
            src.join = JoinSpec(2, h_p3(o.n, o.n1, o.n2, o.n3), true);
        else
            throw ParseError("unknown family '" + o.family + "'");
    } else if (!o.named.empty()) {
        if (o.named == "star")
            src.graph = star_graph(o.n);
        else if (o.named == "snk")
            src.graph = s_nk(o.n, o.k);
        else if (o.named == "snk+")
            src.graph = s_plus_nk(o.n, o.k);
        else if (o.named == "k2n2")
            src.graph = k_2_n2(o.n);
        else if (o.named == "k2empty")
            src.graph = k2_join_empty(o.n);
        else
            throw ParseError("unknown named graph '" + o.named + "'");
    } else if (!o.graph6.empty()) {
        src.graph = from_graph6(o.graph6);
    } else {
        if (o.apex != 1 && o.apex != 2) throw InvalidArgumentError("--partition needs --apex 1|2");
        src.join = JoinSpec(o.apex, PathPartition::parse(o.partition_csv), o.apex_edge);
    }
    return src;
}

inline json witness_json(const ContainmentWitness& w) {
    json comps = json::array();
    for (const auto& comp : witness_components(w)) comps.push_back(comp);
    return comps;
}

// ---- subcommand bodies -----------------------------------------------------

inline void run_construct(const Options& o, std::ostream& out) {
    GraphSource src = resolve_source(o);
    Graph g = src.materialize();
    std::string fmt = format_or(o, "graph6");
    if (fmt == "graph6") {
        emit(o, out, to_graph6(g));
    } else if (fmt == "dot") {
        emit(o, out, to_dot(g));
    } else if (fmt == "json") {
        json j{{"n", g.order()}, {"m", g.edge_count()}, {"graph6", to_graph6(g)}};
        if (src.join) j["join"] = to_json(*src.join);
        emit(o, out, j.dump());
    } else {
        throw InvalidArgumentError("construct formats: graph6|dot|json");
    }
}

inline void run_rho(const Options& o, std::ostream& out, std::istream& in) {
    if (o.graph6 == "-") {
        std::string line, payload;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            SpectralResult r = spectral_radius(from_graph6(line), o.solve_options());
            payload += to_json(r, o.dump_vector).dump() + "\n";
        }
        emit(o, out, payload);
        return;
    }
    GraphSource src = resolve_source(o);
    SpectralResult r = src.join ? spectral_radius(*src.join, o.solve_options())
                                : spectral_radius(*src.graph, o.solve_options());
    if (format_or(o, "json") == "text")
        emit(o, out, fmt12(r.rho));
    else
        emit(o, out, to_json(r, o.dump_vector).dump());
}

inline void run_free(const Options& o, std::ostream& out, std::istream& in) {
    Pattern pat = parse_pattern(o.pattern_str);
    auto one_host = [&](const GraphSource& src) {
        json j{{"pattern", to_string(pat)}};
        if (src.join) {
            j["apex"] = src.join->apex_k;
            j["partition"] = src.join->partition.to_string();
            try {
                FreeVerdict v = structured_free(src.join->apex_k, src.join->partition, pat, parse_variant(o.variant));
                j["structured"] = v.to_string();
            } catch (const UnsupportedVariantError& e) {
                j["structured"] = nullptr;
                j["structured_note"] = e.what();
            }
        } else {
            j["structured"] = nullptr;
        }
        Graph g = src.materialize();
        if (g.order() <= 64) {
            ContainmentWitness w = contains(g, pat);
            json gen{{"found", w.found}};
            if (w.found) {
                gen["witness"] = witness_json(w);
                j["witness"] = gen["witness"];
            }
            j["found"] = w.found; // top-level mirror of the generic verdict
            j["generic"] = gen;
        } else {
            j["found"] = nullptr;
            j["generic"] = nullptr;
        }
        return j;
    };
    if (o.graph6 == "-") {
        std::string line, payload;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            GraphSource src;
            src.graph = from_graph6(line);
            payload += one_host(src).dump() + "\n";
        }
        emit(o, out, payload);
        return;
    }
    json j = one_host(resolve_source(o));
    if (format_or(o, "json") == "text") {
        std::string s = "structured=" + (j["structured"].is_null() ? "n/a" : j["structured"].get<std::string>());
        if (!j["generic"].is_null())
            s += " generic=" + std::string(j["generic"]["found"].get<bool>() ? "NotFree" : "Free");
        emit(o, out, s);
    } else {
        emit(o, out, j.dump());
    }
}

inline void run_transform_scan(const Options& o, std::ostream& out) {
    if (o.apex != 1 && o.apex != 2) throw InvalidArgumentError("--apex must be 1 or 2");
    TransformScanReport rep = transform_scan(o.apex, o.s1, o.s2, GridSpec::parse(o.grid), o.solve_options());
    if (format_or(o, "csv") == "json")
        emit(o, out, to_json(rep, o.timing).dump());
    else
        emit(o, out, to_csv(rep));
}

inline void run_candidate(const Options& o, std::ostream& out) {
    CandidateSpec c = candidate(parse_theorem(o.theorem), o.n, o.t, o.l, o.alt_form);
    if (!o.verify) {
        emit(o, out, to_json(c).dump());
        return;
    }
    VerifyBudget budget{o.generic_max_order};
    CandidateReport rep = verify_candidate(c, budget, o.solve_options());
    emit(o, out, to_json(rep).dump());
}

inline void run_search(const Options& o, std::ostream& out) {
    if (o.apex != 1 && o.apex != 2) throw InvalidArgumentError("--apex must be 1 or 2");
    Pattern pat = parse_pattern(o.pattern_str);
    FreenessMode mode = o.mode == "generic" ? FreenessMode::generic : FreenessMode::structured;
    std::optional<PathPartition> ref;
    if (!o.theorem.empty()) {
        CandidateSpec c = candidate(parse_theorem(o.theorem), o.n, o.t, o.l, o.alt_form);
        if (c.spec.apex_k != o.apex)
            throw InvalidArgumentError("candidate apex class differs from --apex");
        ref = c.spec.partition;
    }
    ArgmaxReport rep = argmax_partitions(o.n, o.apex, pat, mode, o.search_options(), ref ? &*ref : nullptr);
    if (format_or(o, "json") == "csv")
        emit(o, out, to_csv(rep));
    else
        emit(o, out, to_json(rep, o.timing).dump());
}

inline void run_oracle(const Options& o, std::ostream& out) {
    std::optional<Pattern> pat;
    if (!o.pattern_str.empty() && o.pattern_str != "none") pat = parse_pattern(o.pattern_str);
    OracleReport rep = tiny_oracle(o.n, parse_graph_class(o.graph_class), pat, o.search_options());
    emit(o, out, to_json(rep, o.timing).dump());
}

inline void run_conjecture(const Options& o, std::ostream& out) {
    ConjectureReport rep = conjecture_scan(parse_problem(o.problem), o.l, GridSpec::parse(o.grid), o.search_options());
    if (format_or(o, "csv") == "json")
        emit(o, out, to_json(rep, o.timing).dump());
    else
        emit(o, out, to_csv(rep));
}

} // namespace cli_detail

/// Parse and dispatch. Exit codes: 0 success, 1 domain error (named error
/// printed on err), 2 usage error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr, std::istream& in = std::cin) {
    using cli_detail::Options;
    Options o;
    CLI::App app{"spectral extremal search over path-structured planar and outerplanar joins"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool with_solve = true) {
        sub->add_option("--format", o.format, "output format");
        sub->add_option("--out", o.out_path, "write output to a file instead of stdout");
        sub->add_flag("--timing", o.timing, "include wall-clock fields in reports");
        if (with_solve) {
            sub->add_option("--tol", o.tol, "residual tolerance");
            sub->add_option("--max-iter", o.max_iter, "iteration cap");
        }
    };
    auto add_source = [&](CLI::App* sub) {
        sub->add_option("--family", o.family, "hop|hp|hp3 with --n --n1 --n2 [--n3]");
        sub->add_option("--n", o.n, "order");
        sub->add_option("--n1", o.n1, "leading part");
        sub->add_option("--n2", o.n2, "repeated part");
        sub->add_option("--n3", o.n3, "third part (hp3)");
        sub->add_option("--named", o.named, "star|snk|snk+|k2n2|k2empty with --n [--k]");
        sub->add_option("--k", o.k, "apex clique size for named graphs");
        sub->add_option("--graph6", o.graph6, "graph6 string ('-' reads lines from stdin)");
        sub->add_option("--apex", o.apex, "apex count for --partition joins");
        sub->add_option("--partition", o.partition_csv, "comma-separated path orders");
        sub->add_flag("--apex-edge", o.apex_edge, "join the two apexes (apex=2)");
    };

    auto* construct = app.add_subcommand("construct", "materialize a named family member");
    add_source(construct);
    add_common(construct, false);

    auto* rho = app.add_subcommand("rho", "spectral radius and Perron vector");
    add_source(rho);
    add_common(rho);
    rho->add_flag("--vector", o.dump_vector, "include the eigenvector in the output");

    auto* free_cmd = app.add_subcommand("free", "structured and generic freeness checks");
    add_source(free_cmd);
    add_common(free_cmd, false);
    free_cmd->add_option("--pattern", o.pattern_str, "P:l | tP:t,l | Star:t,l | Book:t,l")->required();
    free_cmd->add_option("--variant", o.variant, "structured test selector (default auto)");

    auto* scan = app.add_subcommand("transform-scan", "delta of the path transformation over an n grid");
    scan->add_option("--apex", o.apex, "apex count")->required();
    scan->add_option("--s1", o.s1, "larger part")->required();
    scan->add_option("--s2", o.s2, "smaller part")->required();
    scan->add_option("--n-grid", o.grid, "start:stop:step")->required();
    add_common(scan);

    auto* cand = app.add_subcommand("candidate", "closed-form extremal candidate");
    cand->add_option("--theorem", o.theorem, "T1.i .. T4.iii")->required();
    cand->add_option("--n", o.n, "order")->required();
    cand->add_option("--t", o.t, "copy/branch count")->required();
    cand->add_option("--l", o.l, "path order")->required();
    cand->add_flag("--alt-form", o.alt_form, "equal-parts alternate for T3.ii");
    cand->add_flag("--verify", o.verify, "run structured+generic+spectral verification");
    cand->add_option("--generic-max-order", o.generic_max_order, "realized-order cap for the generic arm");
    add_common(cand);

    auto* search = app.add_subcommand("search", "argmax over the partition family");
    search->add_option("--n", o.n, "order")->required();
    search->add_option("--apex", o.apex, "apex count")->required();
    search->add_option("--pattern", o.pattern_str, "forbidden pattern")->required();
    search->add_option("--mode", o.mode, "structured|generic");
    search->add_option("--theorem", o.theorem, "compare against this candidate");
    search->add_option("--t", o.t, "candidate t");
    search->add_option("--l", o.l, "candidate l");
    search->add_flag("--alt-form", o.alt_form, "candidate alternate form");
    add_common(search);

    auto* oracle = app.add_subcommand("oracle", "whole labeled-graph-space argmax at n <= 8");
    oracle->add_option("--n", o.n, "order")->required();
    oracle->add_option("--class", o.graph_class, "all|planar|outerplanar");
    oracle->add_option("--pattern", o.pattern_str, "forbidden pattern (omit for none)");
    oracle->add_option("--threads", o.threads, "worker count (env SPEX_THREADS)");
    oracle->add_option("--checkpoint", o.checkpoint, "resumable scan state file");
    add_common(oracle);

    auto* conj = app.add_subcommand("conjecture", "open-case evidence scan");
    conj->add_option("--problem", o.problem, "P1|P2|P3")->required();
    conj->add_option("--l", o.l, "path order")->required();
    conj->add_option("--n-grid", o.grid, "start:stop:step")->required();
    add_common(conj);

    std::vector<const char*> argv;
    argv.push_back("spex");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (construct->parsed()) cli_detail::run_construct(o, out);
        else if (rho->parsed()) cli_detail::run_rho(o, out, in);
        else if (free_cmd->parsed()) cli_detail::run_free(o, out, in);
        else if (scan->parsed()) cli_detail::run_transform_scan(o, out);
        else if (cand->parsed()) cli_detail::run_candidate(o, out);
        else if (search->parsed()) cli_detail::run_search(o, out);
        else if (oracle->parsed()) cli_detail::run_oracle(o, out);
        else if (conj->parsed()) cli_detail::run_conjecture(o, out);
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.name() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

inline int run_cli(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args);
}

} // namespace spex
