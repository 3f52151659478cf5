#pragma once

#include <map>
#include <random>
#include <utility>
#include <vector>

#include "skewrank/gf.hpp"
#include "skewrank/graph.hpp"

namespace skewrank {

/// Skew-symmetric matrix over GF(p) whose off-diagonal support is exactly the
/// edge set of a graph.
class SkewMatrix {
public:
    SkewMatrix(PrimeField field, Graph support, std::vector<long> entries)
        : field_(field), support_(std::move(support)), a_(std::move(entries)) {
        const int n = support_.vertex_count();
        if (static_cast<int>(a_.size()) != n * n)
            throw ValidationError("entry array has wrong size");
        for (int i = 0; i < n; ++i) {
            if (a_[i * n + i] != 0) throw ValidationError("nonzero diagonal entry");
            for (int j = i + 1; j < n; ++j) {
                long v = a_[i * n + j];
                if (v < 0 || v >= field_.modulus() || a_[j * n + i] != field_.neg(v))
                    throw ValidationError("matrix is not skew-symmetric over GF(p)");
                if ((v != 0) != support_.has_edge(i, j))
                    throw ValidationError("support does not match the graph");
            }
        }
    }

    const PrimeField& field() const { return field_; }
    const Graph& support() const { return support_; }
    int dim() const { return support_.vertex_count(); }
    long at(int i, int j) const { return a_[i * dim() + j]; }
    const std::vector<long>& entries() const { return a_; }

private:
    PrimeField field_;
    Graph support_;
    std::vector<long> a_;
};

/// Exact rank over GF(p); always even for a skew-symmetric matrix.
inline int rank_skew(const SkewMatrix& a) {
    std::vector<long> m = a.entries();
    return detail::gf_rank_destructive(m.data(), a.dim(), a.field().modulus());
}

/// Build the member of S^-(GF(p), g) determined by an edge -> value map.
/// Every edge must receive exactly one nonzero value.
inline SkewMatrix matrix_from_assignment(const Graph& g, PrimeField field,
                                         const std::map<Edge, long>& values) {
    const int n = g.vertex_count();
    std::vector<long> a(static_cast<size_t>(n) * n, 0);
    for (const auto& [e, raw] : values) {
        auto [u, v] = e;
        if (u > v) std::swap(u, v);
        if (!g.has_edge(u, v))
            throw ExtraValue("value given for non-edge {" + std::to_string(u) + "," +
                             std::to_string(v) + "}");
        long val = field.reduce(raw);
        if (val == 0)
            throw ZeroValue("edge {" + std::to_string(u) + "," + std::to_string(v) +
                            "} assigned zero");
        a[u * n + v] = val;
        a[v * n + u] = field.neg(val);
    }
    for (auto [u, v] : g.edges())
        if (a[u * n + v] == 0)
            throw MissingEdgeValue("edge {" + std::to_string(u) + "," + std::to_string(v) +
                                   "} has no value");
    return SkewMatrix(field, g, std::move(a));
}

/// Uniformly random valid assignment for g (every edge a nonzero value).
inline SkewMatrix random_skew(const Graph& g, PrimeField field, std::mt19937_64& rng) {
    const int n = g.vertex_count();
    std::uniform_int_distribution<long> dist(1, field.modulus() - 1);
    std::vector<long> a(static_cast<size_t>(n) * n, 0);
    for (auto [u, v] : g.edges()) {
        long val = dist(rng);
        a[u * n + v] = val;
        a[v * n + u] = field.neg(val);
    }
    return SkewMatrix(field, g, std::move(a));
}

/// A rank value together with a matrix attaining it.
struct RankWitness {
    int rank;
    SkewMatrix matrix;
};

}  // namespace skewrank
