#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewrank/forcing.hpp"
#include "skewrank/graph.hpp"
#include "skewrank/kpath.hpp"
#include "skewrank/matching.hpp"
#include "skewrank/oracle.hpp"

namespace skewrank {

/// Field semantics a rank query runs under. Generic mode stands for a
/// sufficiently large (infinite) field: structural rules that need an
/// infinite field apply, and the finite-field oracle is never used as proof.
struct FieldSpec {
    enum class Mode { finite, generic };
    Mode mode = Mode::generic;
    std::optional<PrimeField> field;

    static FieldSpec finite(long p) { return {Mode::finite, PrimeField(p)}; }
    static FieldSpec generic() { return {Mode::generic, std::nullopt}; }
    bool is_finite() const { return mode == Mode::finite; }
};

/// One applied rule in a result's trace. `subgraph` lists original vertex
/// ids; depth 0 entries are the per-component conclusions.
struct TraceEntry {
    std::string rule;
    std::vector<int> subgraph;
    int lower = 0, upper = 0;
    int depth = 0;
};

struct RankResult {
    int lower = 0, upper = 0;
    std::optional<int> exact;
    std::vector<TraceEntry> trace;
    std::optional<RankWitness> certificate;
};

struct EngineOptions {
    bool use_oracle = false;  // finite mode only: force exactness + certificate
    OracleOptions oracle{};
};

/// Minimum skew rank of a k-path on n vertices over a sufficiently large
/// field: n-k rounded up to the next even number.
inline int kpath_mr(int n, int k) {
    if (k < 1 || n < k + 1) throw BadParameters("kpath_mr requires n >= k+1 >= 2");
    return (n - k) % 2 == 0 ? n - k : n - k + 1;
}

/// Same value for the k-th power of a path; complete (rank 2) once k >= n.
inline int path_power_mr(int n, int k) {
    if (n < 2 || k < 1) throw BadParameters("path_power_mr requires n >= 2 and k >= 1");
    if (k >= n) return 2;
    return kpath_mr(n, k);
}

inline int round_up_even(int x) { return x % 2 == 0 ? x : x + 1; }

/// Zero-forcing lower bound and matching upper bound, per component.
/// lower = sum over components of (n_c - Z(c)) rounded up to even;
/// upper = 2 * match(g). Exact when they meet.
inline RankResult mr_bounds(const Graph& g) {
    RankResult res;
    for (const auto& comp : components(g)) {
        auto sub = induced_subgraph(g, comp);
        const int nc = sub.graph.vertex_count();
        const int z = zero_forcing_number(sub.graph).size;
        const int lo = round_up_even(std::max(0, nc - z));
        const int hi = 2 * matching_number(sub.graph).size;
        res.lower += lo;
        res.upper += hi;
        res.trace.push_back({"bounds", sub.vertex_map, lo, hi, 0});
    }
    if (res.lower == res.upper) res.exact = res.lower;
    return res;
}

namespace detail {

struct ConnectedOutcome {
    int lower = 0, upper = 0;
    std::optional<int> exact;
};

inline std::vector<int> compose_map(const std::vector<int>& outer, const std::vector<int>& inner) {
    std::vector<int> out(inner.size());
    for (size_t i = 0; i < inner.size(); ++i) out[i] = outer[inner[i]];
    return out;
}

/// Structural solver for one connected graph. `vmap` maps local vertices to
/// the original graph for trace reporting.
inline ConnectedOutcome solve_connected(const Graph& gc, const std::vector<int>& vmap,
                                        const FieldSpec& spec, const EngineOptions& opt,
                                        std::vector<TraceEntry>& trace, int depth) {
    const int n = gc.vertex_count();
    auto conclude = [&](const char* rule, int value) {
        trace.push_back({rule, vmap, value, value, depth});
        return ConnectedOutcome{value, value, value};
    };

    // R1: empty graph.
    if (gc.edge_count() == 0) return conclude("R1-empty", 0);

    // R2: complete multipartite (sufficiently large fields only).
    if (!spec.is_finite() && is_complete_multipartite(gc)) return conclude("R2-multipartite", 2);

    // R3: no even cycle: rank is twice the matching number over every field.
    if (!has_even_cycle(gc)) return conclude("R3-odd-cycles", 2 * matching_number(gc).size);

    // R4: unique perfect matching forces full rank over every field.
    if (n % 2 == 0 && count_perfect_matchings(gc, 2) == 1) return conclude("R4-unique-pm", n);

    // R5: k-path formula (sufficiently large fields only).
    if (!spec.is_finite()) {
        if (auto lab = recognize_k_path(gc)) return conclude("R5-kpath", kpath_mr(n, lab->k));
    }

    // R6: cut-vertex recursion, first cut vertex whose subproblems all resolve.
    for (int v : cut_vertices(gc)) {
        auto dec = branches_at(gc, v);
        int sum_deleted = 0, sum_rv = 0;
        bool ok = true;
        std::vector<TraceEntry> sub_trace;
        for (const auto& br : dec.branches) {
            const auto br_map = compose_map(vmap, br.vertex_map);
            int local_v = static_cast<int>(std::lower_bound(br.vertex_map.begin(),
                                                            br.vertex_map.end(), v) -
                                           br.vertex_map.begin());
            auto minus = delete_vertex(br.graph, local_v);
            auto whole = solve_connected(br.graph, br_map, spec, opt, sub_trace, depth + 1);
            auto rest = solve_connected(minus.graph, compose_map(br_map, minus.vertex_map),
                                        spec, opt, sub_trace, depth + 1);
            if (!whole.exact || !rest.exact) {
                ok = false;
                break;
            }
            sum_deleted += *rest.exact;
            sum_rv += *whole.exact - *rest.exact;
        }
        if (ok) {
            const int value = sum_deleted + std::min(sum_rv, 2);
            trace.push_back({"R6-cut-vertex", vmap, value, value, depth});
            trace.insert(trace.end(), sub_trace.begin(), sub_trace.end());
            return {value, value, value};
        }
    }

    // R7: zero-forcing / matching bounds.
    const int z = zero_forcing_number(gc).size;
    const int lo = round_up_even(std::max(0, n - z));
    const int hi = 2 * matching_number(gc).size;
    if (lo == hi) return conclude("R7-bounds", lo);
    trace.push_back({"R7-bounds", vmap, lo, hi, depth});
    return {lo, hi, std::nullopt};
}

}  // namespace detail

/// Applies the structural rules in fixed order per connected component and
/// sums the results (matrices described by a disjoint union are block
/// diagonal). In finite mode the infinite-field rules (R2, R5) are skipped;
/// with `use_oracle` set, finite mode falls back to the exhaustive search so
/// the result is exact and carries a certificate.
inline RankResult mr_exact_structural(const Graph& g, const FieldSpec& spec,
                                      const EngineOptions& opt = {}) {
    if (opt.use_oracle && !spec.is_finite())
        throw BadParameters("the oracle is only available in finite mode");

    RankResult res;
    bool all_exact = true;
    const int n = g.vertex_count();
    std::vector<long> cert_entries;
    if (opt.use_oracle) cert_entries.assign(static_cast<size_t>(n) * n, 0);

    for (const auto& comp : components(g)) {
        auto sub = induced_subgraph(g, comp);
        auto out = detail::solve_connected(sub.graph, sub.vertex_map, spec, opt, res.trace, 0);

        if (opt.use_oracle) {
            OracleOptions oopt = opt.oracle;
            oopt.lower_bound = out.exact ? *out.exact : out.lower;
            auto wit = min_rank_exhaustive(sub.graph, *spec.field, oopt);
            if (out.exact && wit.rank != *out.exact)
                throw Error("structural rule disagrees with the oracle on a component");
            out = {wit.rank, wit.rank, wit.rank};
            res.trace.push_back({"oracle", sub.vertex_map, wit.rank, wit.rank, 0});
            const int cn = sub.graph.vertex_count();
            for (int i = 0; i < cn; ++i)
                for (int j = 0; j < cn; ++j)
                    cert_entries[sub.vertex_map[i] * n + sub.vertex_map[j]] =
                        wit.matrix.at(i, j);
        }

        res.lower += out.lower;
        res.upper += out.upper;
        all_exact = all_exact && out.exact.has_value();
    }
    if (all_exact) res.exact = res.lower;
    if (opt.use_oracle && res.exact) {
        SkewMatrix m(*spec.field, g, std::move(cert_entries));
        res.certificate = RankWitness{*res.exact, std::move(m)};
    }
    return res;
}

/// r_v = mr(g) - mr(g - v); requires both ranks exact under `spec`.
inline int r_v(const Graph& g, int v, const FieldSpec& spec, const EngineOptions& opt = {}) {
    if (v < 0 || v >= g.vertex_count()) throw OutOfRange("vertex not in graph");
    auto whole = mr_exact_structural(g, spec, opt);
    auto rest = mr_exact_structural(delete_vertex(g, v).graph, spec, opt);
    if (!whole.exact || !rest.exact)
        throw Inexact("r_v needs exact ranks for the graph and for g - v");
    return *whole.exact - *rest.exact;
}

/// Cut-vertex recursion evaluated at v: sum of branch ranks with v deleted,
/// plus min(sum of r_v over branches, 2).
inline int cut_vertex_mr(const Graph& g, int v, const FieldSpec& spec,
                         const EngineOptions& opt = {}) {
    auto dec = branches_at(g, v);  // throws unless v is a cut vertex of connected g
    int sum_deleted = 0, sum_rv = 0;
    for (const auto& br : dec.branches) {
        int local_v = static_cast<int>(std::lower_bound(br.vertex_map.begin(),
                                                        br.vertex_map.end(), v) -
                                       br.vertex_map.begin());
        auto minus = delete_vertex(br.graph, local_v);
        auto whole = mr_exact_structural(br.graph, spec, opt);
        auto rest = mr_exact_structural(minus.graph, spec, opt);
        if (!whole.exact || !rest.exact)
            throw Inexact("cut_vertex_mr could not resolve a branch exactly");
        sum_deleted += *rest.exact;
        sum_rv += *whole.exact - *rest.exact;
    }
    return sum_deleted + std::min(sum_rv, 2);
}

/// Outcome of the rank-4 cut-vertex test (sufficiently large fields).
struct Mr4Classification {
    enum class Verdict { case_i, case_ii, no };
    Verdict verdict = Verdict::no;
    int cut_vertex = -1;
    std::vector<InducedSubgraph> case_i_branches;       // two multipartite branches
    std::optional<InducedSubgraph> case_ii_component;   // the component W of G - v
    int isolated_count = 0;
};

/// Tests, at each cut vertex in increasing order, the two shapes that
/// characterize rank 4 for graphs with a cut vertex:
///  (i)  G - v has exactly two components, each spanning at least one edge,
///       and both branches (component plus v) are complete multipartite;
///  (ii) G - v is one complete multipartite component with at least one edge
///       plus one or more isolated vertices.
inline Mr4Classification classify_mr4_cut_vertex(const Graph& g) {
    if (!is_connected(g)) throw Disconnected("classification requires a connected graph");
    auto cuts = cut_vertices(g);
    if (cuts.empty()) throw NoCutVertex("graph has no cut vertex");

    for (int v : cuts) {
        auto rest = delete_vertex(g, v);
        auto comps = components(rest.graph);

        // Case (i).
        if (comps.size() == 2) {
            bool ok = true;
            for (const auto& c : comps) {
                auto part = induced_subgraph(rest.graph, c);
                if (part.graph.edge_count() == 0) { ok = false; break; }
                std::vector<int> branch_verts{v};
                for (int u : c) branch_verts.push_back(rest.vertex_map[u]);
                auto branch = induced_subgraph(g, branch_verts);
                if (!is_complete_multipartite(branch.graph)) { ok = false; break; }
            }
            if (ok) {
                Mr4Classification out;
                out.verdict = Mr4Classification::Verdict::case_i;
                out.cut_vertex = v;
                for (const auto& c : comps) {
                    std::vector<int> branch_verts{v};
                    for (int u : c) branch_verts.push_back(rest.vertex_map[u]);
                    out.case_i_branches.push_back(induced_subgraph(g, branch_verts));
                }
                return out;
            }
        }

        // Case (ii).
        int isolated = 0;
        std::vector<int> big;  // the one multi-vertex component, original ids
        bool shape_ok = true;
        for (const auto& c : comps) {
            if (c.size() == 1) {
                ++isolated;
            } else if (big.empty()) {
                for (int u : c) big.push_back(rest.vertex_map[u]);
            } else {
                shape_ok = false;
                break;
            }
        }
        if (shape_ok && isolated >= 1 && !big.empty()) {
            auto w = induced_subgraph(g, big);
            if (is_complete_multipartite(w.graph)) {
                Mr4Classification out;
                out.verdict = Mr4Classification::Verdict::case_ii;
                out.cut_vertex = v;
                out.case_ii_component = std::move(w);
                out.isolated_count = isolated;
                return out;
            }
        }
    }
    return {};
}

/// Constructive proof that rank `target` is attainable with support g over
/// GF(p). Throws NotAchievable (with a diagnosis) when the exhaustive sweep
/// shows no assignment attains the target.
inline RankWitness certify(const Graph& g, int target, PrimeField field,
                           OracleOptions opt = {}) {
    if (target < 0 || target % 2 != 0)
        throw BadParameters("target rank must be a nonnegative even integer");
    if (auto m = find_rank_witness(g, field, target, opt))
        return {target, std::move(*m)};

    // Diagnose which side of the attainable range the target misses.
    std::string msg = "no assignment with support g attains rank " + std::to_string(target);
    auto min_wit = min_rank_exhaustive(g, field, opt);
    if (target < min_wit.rank) {
        msg += ": below the minimum rank " + std::to_string(min_wit.rank);
    } else if (g.vertex_count() <= 20) {
        const int max_rank = 2 * matching_number(g).size;
        if (target > max_rank)
            msg += ": above the maximum rank " + std::to_string(max_rank);
        else
            msg += ": attainability gap between minimum " + std::to_string(min_wit.rank) +
                   " and maximum " + std::to_string(max_rank);
    }
    throw NotAchievable(msg);
}

}  // namespace skewrank
