#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "spex/errors.hpp"

namespace spex {

/// Undirected simple graph on vertices {0..n-1} stored as one bitrow per
/// vertex. Adjacency tests are O(1), row scans O(n/64), which is what the
/// containment backtrackers and the dense mat-vec live on. Treated as
/// immutable once built; all mutators are for construction only.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * words_, 0) {
        if (n < 1) throw InvalidArgumentError("graph order must be >= 1");
    }

    int order() const noexcept { return n_; }

    bool has_edge(int u, int v) const {
        return (bits_[row_offset(u) + v / 64] >> (v % 64)) & 1u;
    }

    void add_edge(int u, int v) {
        check_pair(u, v);
        bits_[row_offset(u) + v / 64] |= std::uint64_t{1} << (v % 64);
        bits_[row_offset(v) + u / 64] |= std::uint64_t{1} << (u % 64);
    }

    void remove_edge(int u, int v) {
        check_pair(u, v);
        bits_[row_offset(u) + v / 64] &= ~(std::uint64_t{1} << (v % 64));
        bits_[row_offset(v) + u / 64] &= ~(std::uint64_t{1} << (u % 64));
    }

    std::span<const std::uint64_t> row(int u) const {
        return {bits_.data() + row_offset(u), static_cast<std::size_t>(words_)};
    }

    /// First word of a row; complete adjacency for n <= 64.
    std::uint64_t row64(int u) const { return bits_[row_offset(u)]; }

    int degree(int u) const {
        int d = 0;
        for (auto w : row(u)) d += std::popcount(w);
        return d;
    }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (auto w : bits_) twice += std::popcount(w);
        return twice / 2;
    }

    template <class F>
    void for_neighbors(int u, F&& f) const {
        auto r = row(u);
        for (int w = 0; w < words_; ++w) {
            std::uint64_t bitsw = r[w];
            while (bitsw) {
                int b = std::countr_zero(bitsw);
                f(w * 64 + b);
                bitsw &= bitsw - 1;
            }
        }
    }

    std::vector<int> neighbors(int u) const {
        std::vector<int> out;
        out.reserve(8);
        for_neighbors(u, [&](int v) { out.push_back(v); });
        return out;
    }

    /// Component id per vertex, ids assigned in order of smallest member.
    std::vector<int> component_ids() const {
        std::vector<int> id(n_, -1);
        std::vector<int> stack;
        int next = 0;
        for (int s = 0; s < n_; ++s) {
            if (id[s] >= 0) continue;
            id[s] = next;
            stack.push_back(s);
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for_neighbors(v, [&](int w) {
                    if (id[w] < 0) {
                        id[w] = next;
                        stack.push_back(w);
                    }
                });
            }
            ++next;
        }
        return id;
    }

    int component_count() const {
        auto ids = component_ids();
        return ids.empty() ? 0 : 1 + *std::max_element(ids.begin(), ids.end());
    }

    bool is_connected() const { return component_count() <= 1; }

    /// Induced subgraph on `verts` (kept in the given order).
    Graph induced(std::span<const int> verts) const {
        Graph g(static_cast<int>(verts.size()));
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j)
                if (has_edge(verts[i], verts[j])) g.add_edge(static_cast<int>(i), static_cast<int>(j));
        return g;
    }

    bool operator==(const Graph& o) const = default;

private:
    std::size_t row_offset(int u) const { return static_cast<std::size_t>(u) * words_; }

    void check_pair(int u, int v) const {
        if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InvalidArgumentError("vertex out of range");
        if (u == v) throw InvalidArgumentError("loops not allowed");
    }

    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
};

inline Graph path_graph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline Graph cycle_graph(int n) {
    if (n < 3) throw InvalidArgumentError("cycle needs >= 3 vertices");
    Graph g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

inline Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

inline Graph complete_bipartite(int a, int b) {
    Graph g(a + b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
    return g;
}

// ---- graph6 ---------------------------------------------------------------
// Standard format: n < 63 encoded as one byte n+63; 63 <= n < 2^18 as '~'
// followed by three 6-bit bytes; then the upper triangle x(i,j), i<j, ordered
// column by column, packed big-endian six bits per byte.

inline std::string to_graph6(const Graph& g) {
    int n = g.order();
    std::string out;
    if (n < 63) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n < (1 << 18)) {
        out.push_back(126);
        out.push_back(static_cast<char>(((n >> 12) & 0x3f) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 0x3f) + 63));
        out.push_back(static_cast<char>((n & 0x3f) + 63));
    } else {
        throw TooLargeError("graph6 writer supports n < 2^18");
    }
    int acc = 0, nbits = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                nbits = 0;
            }
        }
    if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
    return out;
}

inline Graph from_graph6(const std::string& s) {
    std::size_t pos = 0;
    auto next = [&]() -> int {
        if (pos >= s.size()) throw ParseError("truncated graph6 string");
        int c = static_cast<unsigned char>(s[pos++]);
        if (c < 63 || c > 126) throw ParseError("invalid graph6 byte");
        return c - 63;
    };
    int n;
    if (pos < s.size() && s[pos] == 126) {
        ++pos;
        if (pos < s.size() && s[pos] == 126) throw ParseError("graph6 n >= 2^18 unsupported");
        int a = next(), b = next(), c = next();
        n = (a << 12) | (b << 6) | c;
    } else {
        n = next();
    }
    if (n < 1) throw ParseError("graph6: empty graph order");
    Graph g(n);
    int acc = 0, nbits = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            if (nbits == 0) {
                acc = next();
                nbits = 6;
            }
            if ((acc >> (nbits - 1)) & 1) g.add_edge(i, j);
            --nbits;
        }
    return g;
}

/// DOT output for figures; vertex ids as labels.
inline std::string to_dot(const Graph& g, const std::string& name = "G") {
    std::string out = "graph " + name + " {\n";
    for (int v = 0; v < g.order(); ++v) out += "  " + std::to_string(v) + ";\n";
    for (int u = 0; u < g.order(); ++u)
        g.for_neighbors(u, [&](int v) {
            if (u < v) out += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
        });
    out += "}\n";
    return out;
}

} // namespace spex
