#pragma once

#include <bit>
#include <optional>
#include <vector>

#include "skewrank/graph.hpp"

namespace skewrank {

/// Elimination labeling of a k-path: order[t] is the vertex labeled v_{t+1}.
struct KPathLabeling {
    int k = 0;
    std::vector<int> order;
};

namespace detail {

inline bool mask_is_clique(const Graph& g, uint32_t mask) {
    for (uint32_t m = mask; m != 0;) {
        int v = std::countr_zero(m);
        m &= m - 1;
        if ((mask & ~(1u << v) & ~g.neighbors(v)) != 0) return false;
    }
    return true;
}

}  // namespace detail

/// Checks the four labeling invariants: leading clique, k back-neighbors
/// forming a clique for every later vertex, exactly two degree-k vertices
/// when n >= k+2, and non-adjacency propagating to all later labels.
inline bool kpath_labeling_valid(const Graph& g, const KPathLabeling& lab) {
    const int n = g.vertex_count(), k = lab.k;
    if (k < 1 || n < k + 1 || static_cast<int>(lab.order.size()) != n) return false;
    uint32_t seen = 0;
    for (int v : lab.order) {
        if (v < 0 || v >= n || (seen >> v & 1u)) return false;
        seen |= 1u << v;
    }

    uint32_t prefix = 0;
    for (int t = 0; t < k + 1; ++t) prefix |= 1u << lab.order[t];
    if (!detail::mask_is_clique(g, prefix)) return false;

    for (int t = k + 1; t < n; ++t) {
        const int v = lab.order[t];
        uint32_t back = g.neighbors(v) & prefix;
        if (std::popcount(back) != k || !detail::mask_is_clique(g, back)) return false;
        prefix |= 1u << v;
    }

    if (n >= k + 2) {
        int deg_k_count = 0;
        for (int v = 0; v < n; ++v)
            if (g.degree(v) == k) ++deg_k_count;
        if (deg_k_count != 2) return false;
    }

    for (int t = 0; t < n; ++t) {
        const int vi = lab.order[t];
        bool gap = false;
        for (int s = std::max(t + 1, k + 1); s < n; ++s) {
            const bool adj = g.has_edge(vi, lab.order[s]);
            if (!adj) gap = true;
            else if (gap) return false;
        }
    }
    return true;
}

namespace detail {

/// Strip a candidate k-path from end `e`, following the elimination chain;
/// returns a labeling only if every invariant verifies.
inline std::optional<KPathLabeling> strip_k_path(const Graph& g, int k, int e) {
    const int n = g.vertex_count();
    KPathLabeling lab{k, std::vector<int>(n, -1)};
    uint32_t remaining = g.all_vertices_mask();
    int prev = e;
    for (int pos = n - 1; pos >= k + 1; --pos) {
        lab.order[pos] = prev;
        const uint32_t nbrs = g.neighbors(prev) & remaining;
        if (std::popcount(nbrs) != k || !mask_is_clique(g, nbrs)) return std::nullopt;
        remaining &= ~(1u << prev);
        if (pos == k + 1) break;
        // The next vertex to strip: the unique clique neighbor left at degree k.
        int next = -1;
        for (uint32_t m = nbrs; m != 0;) {
            int w = std::countr_zero(m);
            m &= m - 1;
            if (std::popcount(g.neighbors(w) & remaining) == k) {
                if (next != -1) return std::nullopt;
                next = w;
            }
        }
        if (next == -1) return std::nullopt;
        prev = next;
    }

    if (!mask_is_clique(g, remaining)) return std::nullopt;
    int v1 = -1;
    for (uint32_t m = remaining; m != 0;) {
        int v = std::countr_zero(m);
        m &= m - 1;
        if (g.degree(v) == k) {
            if (v1 != -1) return std::nullopt;
            v1 = v;
        }
    }
    if (v1 == -1) return std::nullopt;
    lab.order[0] = v1;

    uint32_t rest = remaining & ~(1u << v1);
    int fill = 1;
    if (n >= k + 3) {
        // v_2 is the unique neighbor of v_1 of degree k+1 in g.
        int v2 = -1;
        for (uint32_t m = rest; m != 0;) {
            int v = std::countr_zero(m);
            m &= m - 1;
            if (g.degree(v) == k + 1) {
                if (v2 != -1) return std::nullopt;
                v2 = v;
            }
        }
        if (v2 == -1) return std::nullopt;
        lab.order[fill++] = v2;
        rest &= ~(1u << v2);
    }
    for (uint32_t m = rest; m != 0;) {
        lab.order[fill++] = std::countr_zero(m);
        m &= m - 1;
    }

    if (!kpath_labeling_valid(g, lab)) return std::nullopt;
    return lab;
}

}  // namespace detail

/// If g is a k-path for some k >= 1, returns the smallest such k with a
/// labeling; degree-k end ties are broken toward the smaller vertex index.
inline std::optional<KPathLabeling> recognize_k_path(const Graph& g) {
    const int n = g.vertex_count();
    if (n < 2 || !is_connected(g)) return std::nullopt;
    for (int k = 1; k <= n - 1; ++k) {
        if (n == k + 1) {
            if (g.edge_count() == n * (n - 1) / 2) {
                KPathLabeling lab{k, std::vector<int>(n)};
                for (int v = 0; v < n; ++v) lab.order[v] = v;
                return lab;
            }
            continue;
        }
        std::vector<int> ends;
        for (int v = 0; v < n; ++v)
            if (g.degree(v) == k) ends.push_back(v);
        if (ends.size() != 2) continue;
        for (int e : ends)
            if (auto lab = detail::strip_k_path(g, k, e)) return lab;
    }
    return std::nullopt;
}

}  // namespace skewrank
