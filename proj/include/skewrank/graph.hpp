#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewrank/errors.hpp"

namespace skewrank {

using Edge = std::pair<int, int>;  // always stored with first < second

/// Simple undirected graph on vertices 0..n-1. Immutable after construction;
/// adjacency is kept as per-vertex bitmasks, which caps the library at 32
/// vertices (far above every search guard in this toolkit).
class Graph {
public:
    static constexpr int max_vertices = 32;

    Graph() = default;

    explicit Graph(int n) : n_(check_n(n)), adj_(static_cast<size_t>(n), 0u) {}

    Graph(int n, std::vector<Edge> edges) : Graph(n) {
        for (auto& [u, v] : edges) {
            if (u > v) std::swap(u, v);
            if (u < 0 || v >= n_) throw OutOfRange("edge endpoint out of range");
            if (u == v) throw ValidationError("self-loop not allowed");
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw ValidationError("duplicate edge");
        edges_ = std::move(edges);
        for (auto [u, v] : edges_) {
            adj_[u] |= 1u << v;
            adj_[v] |= 1u << u;
        }
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_edge(int u, int v) const {
        return u != v && (adj_[u] >> v & 1u) != 0;
    }
    /// Neighbor bitmask of v.
    uint32_t neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return std::popcount(adj_[v]); }

    uint32_t all_vertices_mask() const {
        return n_ == 32 ? ~0u : (1u << n_) - 1u;
    }

    bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    static int check_n(int n) {
        if (n < 0) throw ValidationError("negative vertex count");
        if (n > max_vertices) throw TooLarge("graphs are limited to 32 vertices");
        return n;
    }

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<uint32_t> adj_;
};

/// Partition of the vertex set into disjoint nonempty parts.
struct Partition {
    std::vector<std::vector<int>> parts;
};

/// A vertex-induced subgraph together with the map back to original ids:
/// vertex i of `graph` is vertex `vertex_map[i]` of the host.
struct InducedSubgraph {
    Graph graph;
    std::vector<int> vertex_map;
};

/// Decomposition of a connected graph at a cut vertex: branches are the
/// subgraphs induced by the cut vertex plus one component of G - v each.
struct BranchDecomposition {
    int cut_vertex = -1;
    std::vector<InducedSubgraph> branches;  // vertex_map is into the host graph
};

inline std::vector<int> mask_to_vector(uint32_t mask) {
    std::vector<int> out;
    for (int v = 0; mask != 0; ++v, mask >>= 1)
        if (mask & 1u) out.push_back(v);
    return out;
}

inline uint32_t vector_to_mask(const std::vector<int>& vs) {
    uint32_t m = 0;
    for (int v : vs) m |= 1u << v;
    return m;
}

namespace detail {

/// Vertices reachable from `start` while staying inside `allowed`.
inline uint32_t reach(const Graph& g, int start, uint32_t allowed) {
    uint32_t seen = 1u << start, frontier = seen;
    while (frontier != 0) {
        uint32_t next = 0;
        for (uint32_t f = frontier; f != 0;) {
            int v = std::countr_zero(f);
            f &= f - 1;
            next |= g.neighbors(v) & allowed;
        }
        frontier = next & ~seen;
        seen |= next;
    }
    return seen & (allowed | (1u << start));
}

inline int count_components_within(const Graph& g, uint32_t allowed) {
    int count = 0;
    uint32_t todo = allowed;
    while (todo != 0) {
        int v = std::countr_zero(todo);
        todo &= ~reach(g, v, allowed);
        ++count;
    }
    return count;
}

}  // namespace detail

/// Connected components as sorted vertex lists, ordered by smallest member.
inline std::vector<std::vector<int>> components(const Graph& g) {
    std::vector<std::vector<int>> out;
    uint32_t todo = g.all_vertices_mask();
    while (todo != 0) {
        int v = std::countr_zero(todo);
        uint32_t comp = detail::reach(g, v, todo);
        todo &= ~comp;
        out.push_back(mask_to_vector(comp));
    }
    return out;
}

inline bool is_connected(const Graph& g) {
    if (g.vertex_count() <= 1) return true;
    return detail::reach(g, 0, g.all_vertices_mask()) == g.all_vertices_mask();
}

/// Articulation points, via lowpoint DFS run per component.
inline std::vector<int> cut_vertices(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<bool> is_cut(n, false);
    int timer = 0;

    // Iterative DFS; frame = (vertex, parent, neighbor cursor).
    struct Frame { int v, parent; uint32_t rest; };
    for (int root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        int root_children = 0;
        std::vector<Frame> stack{{root, -1, g.neighbors(root)}};
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.rest == 0) {
                if (f.parent != -1) {
                    low[f.parent] = std::min(low[f.parent], low[f.v]);
                    if (f.parent != root && low[f.v] >= disc[f.parent])
                        is_cut[f.parent] = true;
                }
                stack.pop_back();
                continue;
            }
            int w = std::countr_zero(f.rest);
            f.rest &= f.rest - 1;
            if (disc[w] == -1) {
                if (f.v == root) ++root_children;
                disc[w] = low[w] = timer++;
                stack.push_back({w, f.v, g.neighbors(w)});
            } else if (w != f.parent) {
                low[f.v] = std::min(low[f.v], disc[w]);
            }
        }
        if (root_children >= 2) is_cut[root] = true;
    }

    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (is_cut[v]) out.push_back(v);
    return out;
}

/// Subgraph induced by X, relabeled 0..|X|-1 in ascending original order.
inline InducedSubgraph induced_subgraph(const Graph& g, std::vector<int> X) {
    std::sort(X.begin(), X.end());
    X.erase(std::unique(X.begin(), X.end()), X.end());
    for (int v : X)
        if (v < 0 || v >= g.vertex_count()) throw OutOfRange("vertex not in graph");
    std::vector<int> index(g.vertex_count(), -1);
    for (size_t i = 0; i < X.size(); ++i) index[X[i]] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges())
        if (index[u] != -1 && index[v] != -1)
            edges.emplace_back(index[u], index[v]);
    return {Graph(static_cast<int>(X.size()), std::move(edges)), std::move(X)};
}

inline InducedSubgraph delete_vertex(const Graph& g, int v) {
    std::vector<int> keep;
    for (int u = 0; u < g.vertex_count(); ++u)
        if (u != v) keep.push_back(u);
    return induced_subgraph(g, keep);
}

/// Branch decomposition at a cut vertex of a connected graph.
inline BranchDecomposition branches_at(const Graph& g, int v) {
    if (v < 0 || v >= g.vertex_count()) throw OutOfRange("vertex not in graph");
    if (!is_connected(g)) throw Disconnected("branch decomposition requires a connected graph");
    uint32_t rest = g.all_vertices_mask() & ~(1u << v);
    BranchDecomposition out;
    out.cut_vertex = v;
    uint32_t todo = rest;
    while (todo != 0) {
        int s = std::countr_zero(todo);
        uint32_t comp = detail::reach(g, s, rest);
        todo &= ~comp;
        auto verts = mask_to_vector(comp | (1u << v));
        out.branches.push_back(induced_subgraph(g, verts));
    }
    if (out.branches.size() < 2)
        throw NotACutVertex("vertex " + std::to_string(v) + " is not a cut vertex");
    return out;
}

/// The unique partition into independent parts with all cross edges present,
/// if one exists with at least two parts. Parts are the components of the
/// complement; each must be an independent set of g.
inline std::optional<Partition> is_complete_multipartite(const Graph& g) {
    const int n = g.vertex_count();
    if (n == 0) return std::nullopt;
    uint32_t all = g.all_vertices_mask();
    std::vector<std::vector<int>> parts;
    uint32_t todo = all;
    while (todo != 0) {
        int v = std::countr_zero(todo);
        // Component of v in the complement graph, grown frontier by frontier.
        uint32_t seen = 1u << v, frontier = seen;
        while (frontier != 0) {
            uint32_t next = 0;
            for (uint32_t f = frontier; f != 0;) {
                int u = std::countr_zero(f);
                f &= f - 1;
                next |= all & ~g.neighbors(u) & ~(1u << u);
            }
            frontier = next & ~seen;
            seen |= frontier;
        }
        // The part must be independent in g.
        for (uint32_t s = seen; s != 0;) {
            int u = std::countr_zero(s);
            s &= s - 1;
            if ((g.neighbors(u) & seen) != 0) return std::nullopt;
        }
        parts.push_back(mask_to_vector(seen));
        todo &= ~seen;
    }
    if (parts.size() < 2) return std::nullopt;  // edgeless graphs are handled elsewhere
    std::sort(parts.begin(), parts.end());
    return Partition{std::move(parts)};
}

/// True iff g contains a cycle of even length. A graph has no even cycle
/// exactly when every block is a single edge or an odd cycle, so we walk the
/// biconnected components.
inline bool has_even_cycle(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<Edge> edge_stack;
    int timer = 0;

    auto block_is_bad = [&](const std::vector<Edge>& block) {
        if (block.size() <= 1) return false;  // single edge
        // A block that is a cycle has every vertex of degree 2; odd length ok.
        std::vector<int> deg(n, 0);
        for (auto [u, v] : block) { ++deg[u]; ++deg[v]; }
        for (auto [u, v] : block)
            if (deg[u] != 2 || deg[v] != 2) return true;  // not a cycle: even cycle inside
        return block.size() % 2 == 0;
    };

    struct Frame { int v, parent; uint32_t rest; };
    for (int root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        std::vector<Frame> stack{{root, -1, g.neighbors(root)}};
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.rest == 0) {
                if (f.parent != -1) {
                    low[f.parent] = std::min(low[f.parent], low[f.v]);
                    if (low[f.v] >= disc[f.parent]) {
                        // Pop the block delimited by the tree edge (parent, v).
                        const Edge stop{std::min(f.parent, f.v), std::max(f.parent, f.v)};
                        std::vector<Edge> block;
                        while (!edge_stack.empty()) {
                            Edge e = edge_stack.back();
                            edge_stack.pop_back();
                            block.push_back(e);
                            if (e == stop) break;
                        }
                        if (block_is_bad(block)) return true;
                    }
                }
                stack.pop_back();
                continue;
            }
            int w = std::countr_zero(f.rest);
            f.rest &= f.rest - 1;
            if (disc[w] == -1) {
                edge_stack.push_back({std::min(f.v, w), std::max(f.v, w)});
                disc[w] = low[w] = timer++;
                stack.push_back({w, f.v, g.neighbors(w)});
            } else if (w != f.parent && disc[w] < disc[f.v]) {
                edge_stack.push_back({std::min(f.v, w), std::max(f.v, w)});
                low[f.v] = std::min(low[f.v], disc[w]);
            }
        }
    }
    return false;
}

// ---- standard families -----------------------------------------------------

inline Graph complete_graph(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

inline Graph path_graph(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, std::move(edges));
}

inline Graph cycle_graph(int n) {
    if (n < 3) throw BadParameters("cycles need at least 3 vertices");
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(0, n - 1);
    return Graph(n, std::move(edges));
}

inline Graph complete_multipartite(const std::vector<int>& part_sizes) {
    int n = 0;
    for (int s : part_sizes) {
        if (s < 1) throw BadParameters("part sizes must be positive");
        n += s;
    }
    std::vector<int> part_of;
    for (size_t t = 0; t < part_sizes.size(); ++t)
        part_of.insert(part_of.end(), part_sizes[t], static_cast<int>(t));
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (part_of[i] != part_of[j]) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

/// P_n^k: path power joining vertices at path distance at most k.
inline Graph path_power(int n, int k) {
    if (n < 1 || k < 1) throw BadParameters("path_power requires n >= 1 and k >= 1");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n && j - i <= k; ++j) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

}  // namespace skewrank
