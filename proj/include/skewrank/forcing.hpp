#pragma once

#include <bit>
#include <vector>

#include "skewrank/graph.hpp"

namespace skewrank {

/// Black/white vertex coloring evolving under the color change rule.
struct ColoringState {
    Graph host;
    uint32_t black = 0;

    ColoringState(Graph host_, uint32_t black_) : host(std::move(host_)), black(black_) {
        if ((black & ~host.all_vertices_mask()) != 0)
            throw OutOfRange("black set contains vertices outside the host graph");
    }
    ColoringState(Graph host_, const std::vector<int>& black_)
        : ColoringState(std::move(host_), vector_to_mask(black_)) {}
};

namespace detail {

/// Fixpoint of the color change rule: a black vertex with exactly one white
/// neighbor forces it black. The result does not depend on the order in
/// which forces are applied.
inline uint32_t forcing_closure_mask(const Graph& g, uint32_t black) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (uint32_t b = black; b != 0;) {
            int u = std::countr_zero(b);
            b &= b - 1;
            uint32_t white_nbrs = g.neighbors(u) & ~black;
            if (std::has_single_bit(white_nbrs)) {
                black |= white_nbrs;
                changed = true;
            }
        }
    }
    return black;
}

}  // namespace detail

/// Derived set of an initial coloring, as a sorted vertex list.
inline std::vector<int> forcing_closure(const ColoringState& state) {
    return mask_to_vector(detail::forcing_closure_mask(state.host, state.black));
}

struct ZeroForcingResult {
    int size = 0;
    std::vector<int> witness;  // minimum zero forcing set, lexicographically first
};

/// Z(g) and a minimum zero forcing set, by testing subsets in increasing size
/// order and lexicographic order within a size.
inline ZeroForcingResult zero_forcing_number(const Graph& g) {
    const int n = g.vertex_count();
    if (n > 12) throw TooLarge("zero_forcing_number supports at most 12 vertices");
    const uint32_t all = g.all_vertices_mask();
    if (n == 0) return {0, {}};
    for (int size = 0; size <= n; ++size) {
        // Lexicographic combinations {c[0] < c[1] < ...}; the subset
        // {0,1,..} is lexicographically first.
        std::vector<int> c(size);
        for (int i = 0; i < size; ++i) c[i] = i;
        while (true) {
            uint32_t mask = 0;
            for (int v : c) mask |= 1u << v;
            if (detail::forcing_closure_mask(g, mask) == all)
                return {size, c};
            // next combination
            int i = size - 1;
            while (i >= 0 && c[i] == n - size + i) --i;
            if (i < 0) break;
            ++c[i];
            for (int j = i + 1; j < size; ++j) c[j] = c[j - 1] + 1;
        }
    }
    return {n, mask_to_vector(all)};  // unreachable: the full set always forces
}

}  // namespace skewrank
