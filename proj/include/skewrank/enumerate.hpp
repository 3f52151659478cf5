#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "skewrank/graph.hpp"

namespace skewrank {

namespace detail {

inline const std::vector<std::array<int8_t, 8>>& permutations_of(int n) {
    // Built once for every n <= 8; immutable afterwards, safe to share.
    static const std::vector<std::vector<std::array<int8_t, 8>>> cache = [] {
        std::vector<std::vector<std::array<int8_t, 8>>> c(9);
        for (int k = 1; k <= 8; ++k) {
            std::array<int8_t, 8> p{};
            std::iota(p.begin(), p.begin() + k, static_cast<int8_t>(0));
            do {
                c[k].push_back(p);
            } while (std::next_permutation(p.begin(), p.begin() + k));
        }
        return c;
    }();
    return cache[n];
}

/// Upper-triangle bit layout: pair (i,j), i<j, occupies bit b = index of the
/// pair in row-major order; bit 0 is the most significant position of the
/// canonical integer, so smaller integers are lexicographically smaller
/// adjacency bit-strings.
struct BitLayout {
    int n, nbits;
    std::array<std::pair<int8_t, int8_t>, 28> pair_of{};
    explicit BitLayout(int n_) : n(n_), nbits(n_ * (n_ - 1) / 2) {
        int b = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                pair_of[b++] = {static_cast<int8_t>(i), static_cast<int8_t>(j)};
    }
    uint64_t weight(int b) const { return 1ull << (nbits - 1 - b); }
};

inline void mask_to_adj(uint64_t mask, const BitLayout& L, std::array<uint32_t, 8>& adj) {
    adj.fill(0);
    uint64_t m = mask;
    for (int b = L.nbits - 1; m != 0; --b, m >>= 1) {
        if (m & 1ull) {
            auto [i, j] = L.pair_of[b];
            adj[i] |= 1u << j;
            adj[j] |= 1u << i;
        }
    }
}

inline bool adj_connected(const std::array<uint32_t, 8>& adj, int n) {
    if (n <= 1) return true;
    uint32_t seen = 1u, frontier = 1u;
    const uint32_t all = (1u << n) - 1;
    while (frontier != 0 && seen != all) {
        uint32_t next = 0;
        for (uint32_t f = frontier; f != 0;) {
            int v = std::countr_zero(f);
            f &= f - 1;
            next |= adj[v];
        }
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == all;
}

/// Is `mask` the minimum of its isomorphism orbit?
inline bool adj_is_canonical(uint64_t mask, const std::array<uint32_t, 8>& adj, const BitLayout& L) {
    const int n = L.n;
    // Quick necessary condition: the row-0 block of a minimum bit-string is
    // 0...01...1 with exactly min-degree ones.
    int mindeg = n;
    for (int v = 0; v < n; ++v) mindeg = std::min(mindeg, std::popcount(adj[v]));
    const uint64_t row0 = mask >> (L.nbits - (n - 1));
    if (row0 != (1ull << mindeg) - 1) return false;

    for (const auto& perm : permutations_of(n)) {
        for (int b = 0; b < L.nbits; ++b) {
            auto [i, j] = L.pair_of[b];
            const int orig = static_cast<int>(mask >> (L.nbits - 1 - b) & 1ull);
            const int perm_bit = static_cast<int>(adj[perm[i]] >> perm[j] & 1u);
            if (perm_bit != orig) {
                if (perm_bit < orig) return false;  // strictly smaller relabeling exists
                break;                              // this permutation is larger; next
            }
        }
    }
    return true;
}

inline Graph adj_to_graph(const std::array<uint32_t, 8>& adj, int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (uint32_t m = adj[i] >> (i + 1) << (i + 1); m != 0;) {
            int j = std::countr_zero(m);
            m &= m - 1;
            edges.emplace_back(i, j);
        }
    return Graph(n, std::move(edges));
}

}  // namespace detail

/// Canonical form of a graph on at most 8 vertices: the minimum upper-triangle
/// adjacency bit-string over all vertex permutations, packed into an integer
/// (most significant bit = pair (0,1)).
inline uint64_t canonical_form(const Graph& g) {
    const int n = g.vertex_count();
    if (n > 8) throw TooLarge("canonical_form supports at most 8 vertices");
    if (n <= 1) return 0;
    detail::BitLayout L(n);
    uint64_t best = ~0ull;
    for (const auto& perm : detail::permutations_of(n)) {
        uint64_t val = 0;
        for (int b = 0; b < L.nbits; ++b) {
            auto [i, j] = L.pair_of[b];
            if (g.has_edge(perm[i], perm[j])) val |= L.weight(b);
        }
        best = std::min(best, val);
    }
    return best;
}

/// Fast labeled-graph predicate used to prune the enumeration before the
/// (more expensive) canonicity test.
using AdjacencyFilter = std::function<bool(const std::array<uint32_t, 8>&, int)>;

/// Streams every labeled graph on n vertices (optionally connected only,
/// optionally one canonical representative per isomorphism class) in
/// increasing canonical-integer order. `yield` returns false to stop early.
inline void enumerate_graphs(int n, bool connected_only, bool up_to_iso,
                             const std::function<bool(const Graph&)>& yield,
                             const AdjacencyFilter& labeled_filter = {}) {
    if (n < 1 || n > 8) throw TooLarge("enumerate_graphs supports 1 <= n <= 8");
    detail::BitLayout L(n);
    std::array<uint32_t, 8> adj{};
    const uint64_t total = 1ull << L.nbits;
    for (uint64_t mask = 0; mask < total; ++mask) {
        detail::mask_to_adj(mask, L, adj);
        if (connected_only && !detail::adj_connected(adj, n)) continue;
        if (labeled_filter && !labeled_filter(adj, n)) continue;
        if (up_to_iso && n > 1 && !detail::adj_is_canonical(mask, adj, L)) continue;
        if (!yield(detail::adj_to_graph(adj, n))) return;
    }
}

inline std::vector<Graph> enumerate_graphs(int n, bool connected_only, bool up_to_iso) {
    std::vector<Graph> out;
    enumerate_graphs(n, connected_only, up_to_iso, [&](const Graph& g) {
        out.push_back(g);
        return true;
    });
    return out;
}

}  // namespace skewrank
