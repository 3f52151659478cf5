#pragma once

#include <bit>
#include <vector>

#include "skewrank/graph.hpp"

namespace skewrank {

/// A set of pairwise vertex-disjoint edges of a host graph.
struct Matching {
    std::vector<Edge> edges;  // sorted
};

struct MatchingResult {
    int size = 0;
    Matching witness;
};

namespace detail {

struct MatchingSearch {
    const Graph& g;
    int n;
    int best = -1;
    std::vector<Edge> current, best_edges;

    explicit MatchingSearch(const Graph& g_) : g(g_), n(g_.vertex_count()) {}

    // Branch on the lowest uncovered vertex: leave it unmatched, or match it
    // to each uncovered neighbor. Bound: floor(uncovered/2).
    void run(uint32_t covered, int low) {
        while (low < n && (covered >> low & 1u)) ++low;
        const int size = static_cast<int>(current.size());
        if (low >= n) {
            if (size > best) {
                best = size;
                best_edges = current;
            }
            return;
        }
        const int uncovered = n - std::popcount(covered);
        if (size + uncovered / 2 <= best) return;
        for (uint32_t m = g.neighbors(low) & ~covered; m != 0;) {
            int w = std::countr_zero(m);
            m &= m - 1;
            current.emplace_back(low, w);
            run(covered | (1u << low) | (1u << w), low + 1);
            current.pop_back();
        }
        run(covered | (1u << low), low + 1);
    }
};

}  // namespace detail

/// Maximum matching by branch and bound; exact for n <= 20.
inline MatchingResult matching_number(const Graph& g) {
    if (g.vertex_count() > 20) throw TooLarge("matching_number supports at most 20 vertices");
    detail::MatchingSearch s(g);
    s.run(0, 0);
    std::sort(s.best_edges.begin(), s.best_edges.end());
    return {s.best, Matching{std::move(s.best_edges)}};
}

/// Number of perfect matchings, saturating at `cap` (callers distinguish
/// 0 / 1 / at-least-2, so cap must be >= 2).
inline long count_perfect_matchings(const Graph& g, long cap = 2) {
    if (cap < 2) throw BadParameters("count_perfect_matchings requires cap >= 2");
    const int n = g.vertex_count();
    if (n % 2 != 0) return 0;
    long count = 0;
    // Match the lowest uncovered vertex to each uncovered neighbor.
    auto rec = [&](auto&& self, uint32_t covered, int low) -> void {
        if (count >= cap) return;
        while (low < n && (covered >> low & 1u)) ++low;
        if (low >= n) {
            ++count;
            return;
        }
        for (uint32_t m = g.neighbors(low) & ~covered; m != 0 && count < cap;) {
            int w = std::countr_zero(m);
            m &= m - 1;
            self(self, covered | (1u << low) | (1u << w), low + 1);
        }
    };
    rec(rec, 0, 0);
    return count;
}

}  // namespace skewrank
