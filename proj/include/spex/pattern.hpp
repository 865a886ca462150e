#pragma once

#include <string>

#include "spex/errors.hpp"
#include "spex/graph.hpp"

namespace spex {

enum class PatternKind { path, linear_forest, starlike, book };

/// Forbidden-subgraph descriptor.
///   path(l)           P_l, a path on l vertices
///   linear_forest(t,l) t vertex-disjoint copies of P_l
///   starlike(t,l)     one center with t pendant paths of l-1 vertices each
///   book(t,l)         t cycles of length l sharing exactly one common vertex
struct Pattern {
    PatternKind kind = PatternKind::path;
    int t = 1;
    int l = 2;

    static Pattern path(int l) { return validated({PatternKind::path, 1, l}); }
    static Pattern linear_forest(int t, int l) { return validated({PatternKind::linear_forest, t, l}); }
    static Pattern starlike(int t, int l) { return validated({PatternKind::starlike, t, l}); }
    static Pattern book(int t, int l) { return validated({PatternKind::book, t, l}); }

    int order() const {
        switch (kind) {
            case PatternKind::path: return l;
            case PatternKind::linear_forest: return t * l;
            case PatternKind::starlike: return t * (l - 1) + 1;
            case PatternKind::book: return t * (l - 1) + 1;
        }
        return 0;
    }

    bool operator==(const Pattern&) const = default;

private:
    static Pattern validated(Pattern p) {
        if (p.t < 1) throw InvalidArgumentError("pattern needs t >= 1");
        int min_l = p.kind == PatternKind::book ? 3 : 2;
        if (p.l < min_l) throw InvalidArgumentError("pattern needs l >= " + std::to_string(min_l));
        if (p.kind == PatternKind::path && p.t != 1) throw InvalidArgumentError("path pattern has t = 1");
        return p;
    }
};

/// Grammar: P:l | tP:t,l | Star:t,l | Book:t,l
inline std::string to_string(const Pattern& p) {
    switch (p.kind) {
        case PatternKind::path: return "P:" + std::to_string(p.l);
        case PatternKind::linear_forest: return "tP:" + std::to_string(p.t) + "," + std::to_string(p.l);
        case PatternKind::starlike: return "Star:" + std::to_string(p.t) + "," + std::to_string(p.l);
        case PatternKind::book: return "Book:" + std::to_string(p.t) + "," + std::to_string(p.l);
    }
    return {};
}

inline Pattern parse_pattern(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw ParseError("pattern needs KIND:args, got '" + s + "'");
    std::string head = s.substr(0, colon), args = s.substr(colon + 1);
    auto one = [&]() {
        try {
            std::size_t used = 0;
            int v = std::stoi(args, &used);
            if (used != args.size()) throw ParseError("");
            return v;
        } catch (const std::exception&) {
            throw ParseError("bad pattern argument in '" + s + "'");
        }
    };
    auto two = [&]() {
        auto comma = args.find(',');
        if (comma == std::string::npos) throw ParseError("pattern '" + head + "' needs t,l");
        try {
            return std::pair<int, int>{std::stoi(args.substr(0, comma)), std::stoi(args.substr(comma + 1))};
        } catch (const std::exception&) {
            throw ParseError("bad pattern argument in '" + s + "'");
        }
    };
    if (head == "P") return Pattern::path(one());
    if (head == "tP") {
        auto [t, l] = two();
        return Pattern::linear_forest(t, l);
    }
    if (head == "Star") {
        auto [t, l] = two();
        return Pattern::starlike(t, l);
    }
    if (head == "Book") {
        auto [t, l] = two();
        return Pattern::book(t, l);
    }
    throw ParseError("unknown pattern kind '" + head + "'");
}

/// Concrete graph of the pattern. Vertex layout is the one containment
/// witnesses are reported against: paths laid out consecutively; starlike
/// center first, then branches; book hub first, then cycles.
inline Graph pattern_graph(const Pattern& p) {
    switch (p.kind) {
        case PatternKind::path:
            return path_graph(p.l);
        case PatternKind::linear_forest: {
            Graph g(p.t * p.l);
            for (int c = 0; c < p.t; ++c)
                for (int i = 0; i + 1 < p.l; ++i) g.add_edge(c * p.l + i, c * p.l + i + 1);
            return g;
        }
        case PatternKind::starlike: {
            Graph g(p.t * (p.l - 1) + 1);
            int next = 1;
            for (int b = 0; b < p.t; ++b) {
                g.add_edge(0, next);
                for (int i = 1; i < p.l - 1; ++i, ++next) g.add_edge(next, next + 1);
                ++next;
            }
            return g;
        }
        case PatternKind::book: {
            Graph g(p.t * (p.l - 1) + 1);
            int next = 1;
            for (int c = 0; c < p.t; ++c) {
                int first = next;
                g.add_edge(0, first);
                for (int i = 1; i < p.l - 1; ++i, ++next) g.add_edge(next, next + 1);
                g.add_edge(next, 0);
                ++next;
            }
            return g;
        }
    }
    throw InvalidArgumentError("unreachable pattern kind");
}

} // namespace spex
