#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "spex/errors.hpp"

namespace spex {

/// Multiset of path orders, kept sorted non-increasing. The combinatorial
/// skeleton of every join family here: K_k ∨ (P_{n_1} ∪ ... ∪ P_{n_q}).
class PathPartition {
public:
    PathPartition() = default;

    explicit PathPartition(std::vector<int> parts) : parts_(std::move(parts)) {
        std::sort(parts_.begin(), parts_.end(), std::greater<>());
        for (int p : parts_)
            if (p < 1) throw InvalidArgumentError("partition parts must be >= 1");
    }

    static PathPartition parse(const std::string& csv) {
        std::vector<int> parts;
        std::size_t pos = 0;
        while (pos < csv.size()) {
            std::size_t comma = csv.find(',', pos);
            if (comma == std::string::npos) comma = csv.size();
            try {
                parts.push_back(std::stoi(csv.substr(pos, comma - pos)));
            } catch (const std::exception&) {
                throw ParseError("bad partition literal: '" + csv + "'");
            }
            pos = comma + 1;
        }
        if (parts.empty()) throw ParseError("empty partition literal");
        return PathPartition(std::move(parts));
    }

    const std::vector<int>& parts() const noexcept { return parts_; }
    std::size_t size() const noexcept { return parts_.size(); }
    bool empty() const noexcept { return parts_.empty(); }

    int total() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

    /// i-th largest part, 1-based; 0 beyond the last part. Matches the way
    /// the freeness inequalities are written (n_3 of a two-part partition is 0).
    int nth(int i) const {
        if (i < 1 || static_cast<std::size_t>(i) > parts_.size()) return 0;
        return parts_[static_cast<std::size_t>(i) - 1];
    }

    /// Multiset count of a given part value.
    int count_of(int value) const {
        return static_cast<int>(std::count(parts_.begin(), parts_.end(), value));
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(parts_[i]);
        }
        return s;
    }

    bool operator==(const PathPartition&) const = default;
    auto operator<=>(const PathPartition& o) const { return parts_ <=> o.parts_; }

private:
    std::vector<int> parts_;
};

/// Enumerate all partitions of m in reverse-lexicographic order, starting at
/// [m] and ending at [1,1,...,1]. `f` receives the parts sorted descending;
/// returning false stops the enumeration.
template <class F>
void for_each_partition(int m, F&& f) {
    if (m < 1) throw InvalidArgumentError("partition enumeration needs m >= 1");
    std::vector<int> a(static_cast<std::size_t>(m));
    a[0] = m;
    std::size_t k = 1;
    for (;;) {
        if (!f(std::span<const int>(a.data(), k))) return;
        // find rightmost part > 1
        std::size_t i = k;
        while (i > 0 && a[i - 1] == 1) --i;
        if (i == 0) return; // all ones: done
        int rem = static_cast<int>(k - i); // number of trailing 1s
        int v = --a[i - 1];
        ++rem;
        // redistribute rem into parts of size <= v
        k = i;
        while (rem > v) {
            a[k++] = v;
            rem -= v;
        }
        a[k++] = rem;
    }
}

inline std::uint64_t partition_count(int m) {
    // p(m) by Euler's recurrence; small m only.
    std::vector<std::uint64_t> p(static_cast<std::size_t>(m) + 1, 0);
    p[0] = 1;
    for (int k = 1; k <= m; ++k)
        for (int i = k; i <= m; ++i) p[static_cast<std::size_t>(i)] += p[static_cast<std::size_t>(i - k)];
    return p[static_cast<std::size_t>(m)];
}

} // namespace spex
