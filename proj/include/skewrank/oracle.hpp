#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "skewrank/skew.hpp"

namespace skewrank {

struct OracleOptions {
    double budget = 1e8;          // cap on the nominal search-space size
    long node_cap = 400'000'000;  // cap on assignments actually examined
    int probe_trials = 64;        // random incumbents tried before the sweep
    uint64_t seed = 0;
    std::optional<int> lower_bound;  // sound lower bound enabling early exit
    bool normalize = true;           // fix spanning-forest edge values to 1
    int threads = 1;
};

namespace detail {

/// Exhaustive target-rank search over one support graph. Edges are processed
/// vertex by vertex, so at depth j the leading principal j x j block is fully
/// assigned; its rank never exceeds the rank of any completion, which is what
/// makes pruning sound. Appending a vertex raises the rank by 2 exactly when
/// its column escapes the row space of the current block (skew symmetry rules
/// out a rise of 1).
///
/// Vertices are processed in maximum-adjacency order (start at a maximum
/// degree vertex, then repeatedly take the vertex with the most processed
/// neighbors), which drives the partial rank up as early as possible. All
/// internal state lives in position space; `order[pos]` maps back to the
/// input graph's vertex ids.
struct RankSearch {
    struct Slot {
        int i, j;  // position-space endpoints, i < j
        bool tree;
    };

    long p;
    int n;
    std::vector<long> inv_table;  // inverses 1..p-1
    std::vector<int> order;       // order[pos] = original vertex
    std::vector<uint32_t> padj;   // position-space adjacency
    std::vector<Slot> slots;
    std::vector<int> vbegin;      // slot range [vbegin[j], vbegin[j+1]) enters at position j
    std::vector<int> free_slots;  // indices of non-tree slots, in slot order

    std::vector<long> mat;  // current assignment, n x n, position space
    std::vector<long> val;  // per-slot value

    long best_rank = -1;  // rank of the accepted leaf; -1 = none found
    std::vector<long> best_val;
    int target_rank = 0;          // the stage's rank budget
    bool target_at_most = false;  // accept rank <= target instead of == target
    long nodes = 0;
    long node_cap = 0;
    bool stop = false;

    int restrict_slot = -1;  // partitioned search: value range for one slot
    long restrict_lo = 1, restrict_hi = 0;

    // Scratch echelon bases, one per depth.
    std::vector<std::vector<std::vector<long>>> basis_rows;
    std::vector<std::vector<int>> basis_pivots;

    RankSearch(const Graph& g, long p_, bool normalize) : p(p_), n(g.vertex_count()) {
        inv_table.assign(p, 0);
        for (long a = 1; a < p; ++a) {
            long inv = 1, base = a, e = p - 2;
            while (e > 0) {
                if (e & 1) inv = inv * base % p;
                base = base * base % p;
                e >>= 1;
            }
            inv_table[a] = inv;
        }
        // Processing order: among vertices adjacent to the prefix, take the
        // one with the fewest unprocessed neighbors (ties: more processed
        // neighbors, then lower id). Heavily constrained columns then enter
        // early, and partial ranks saturate the stage target sooner.
        std::vector<int> pos(n, -1);
        order.reserve(n);
        for (int step = 0; step < n; ++step) {
            int pick = -1;
            std::array<int, 4> pick_key{};
            for (int v = 0; v < n; ++v) {
                if (pos[v] != -1) continue;
                int back = 0;
                for (uint32_t m = g.neighbors(v); m != 0;) {
                    int w = std::countr_zero(m);
                    m &= m - 1;
                    if (pos[w] != -1) ++back;
                }
                const std::array<int, 4> key{back > 0 ? 0 : 1, g.degree(v) - back, -back, v};
                if (pick == -1 || key < pick_key) {
                    pick = v;
                    pick_key = key;
                }
            }
            pos[pick] = step;
            order.push_back(pick);
        }

        padj.assign(n, 0);
        for (auto [u, v] : g.edges()) {
            padj[pos[u]] |= 1u << pos[v];
            padj[pos[v]] |= 1u << pos[u];
        }

        // Spanning forest: each position's tree edge goes to its earliest
        // processed neighbor. Any spanning forest supports the diagonal
        // scaling normalization.
        vbegin.assign(n + 1, 0);
        for (int j = 0; j < n; ++j) {
            vbegin[j] = static_cast<int>(slots.size());
            const uint32_t back = padj[j] & ((1u << j) - 1);
            const int parent = (normalize && back != 0) ? std::countr_zero(back) : -1;
            for (uint32_t m = back; m != 0;) {
                int i = std::countr_zero(m);
                m &= m - 1;
                slots.push_back({i, j, i == parent});
            }
        }
        vbegin[n] = static_cast<int>(slots.size());

        mat.assign(static_cast<size_t>(n) * n, 0);
        val.assign(slots.size(), 0);
        for (size_t s = 0; s < slots.size(); ++s) {
            if (slots[s].tree) set_slot(static_cast<int>(s), 1);
        }
        for (size_t s = 0; s < slots.size(); ++s)
            if (!slots[s].tree) free_slots.push_back(static_cast<int>(s));
        basis_rows.resize(n + 1);
        basis_pivots.resize(n + 1);
    }

    int free_count() const { return static_cast<int>(free_slots.size()); }

    double nominal_space() const { return std::pow(static_cast<double>(p - 1), free_count()); }

    void set_slot(int s, long v) {
        val[s] = v;
        mat[slots[s].i * n + slots[s].j] = v;
        mat[slots[s].j * n + slots[s].i] = v == 0 ? 0 : p - v;
    }

    void load_assignment(const std::vector<long>& values) {
        for (size_t s = 0; s < slots.size(); ++s) set_slot(static_cast<int>(s), values[s]);
    }

    int full_rank_of_current() {
        std::vector<long> m = mat;
        return gf_rank_destructive(m.data(), n, p);
    }

    /// Row-space echelon basis of the leading j x j block.
    void build_basis(int j) {
        auto& rows = basis_rows[j];
        auto& pivots = basis_pivots[j];
        rows.clear();
        pivots.clear();
        std::vector<long> work(static_cast<size_t>(j) * j);
        for (int r = 0; r < j; ++r)
            for (int c = 0; c < j; ++c) work[r * j + c] = mat[r * n + c];
        int rank = 0;
        for (int col = 0; col < j && rank < j; ++col) {
            int pivot = -1;
            for (int r = rank; r < j; ++r)
                if (work[r * j + col] != 0) { pivot = r; break; }
            if (pivot == -1) continue;
            for (int c = 0; c < j; ++c) std::swap(work[pivot * j + c], work[rank * j + c]);
            long inv = mod_inv(work[rank * j + col]);
            for (int c = col; c < j; ++c) work[rank * j + c] = work[rank * j + c] * inv % p;
            for (int r = 0; r < j; ++r) {
                if (r == rank) continue;
                long f = work[r * j + col];
                if (f == 0) continue;
                for (int c = col; c < j; ++c) {
                    long x = (work[r * j + c] - f * work[rank * j + c]) % p;
                    work[r * j + c] = x < 0 ? x + p : x;
                }
            }
            ++rank;
        }
        for (int r = 0; r < rank; ++r) {
            rows.emplace_back(work.begin() + r * j, work.begin() + (r + 1) * j);
            int piv = 0;
            while (rows.back()[piv] == 0) ++piv;
            pivots.push_back(piv);
        }
    }

    long mod_inv(long a) const { return inv_table[a % p]; }

    /// Is column j (over rows 0..j-1) inside the row space of the j x j block?
    bool column_in_rowspace(int j, std::vector<long>& scratch) {
        for (int i = 0; i < j; ++i) scratch[i] = mat[i * n + j];
        const auto& rows = basis_rows[j];
        const auto& pivots = basis_pivots[j];
        for (size_t r = 0; r < rows.size(); ++r) {
            long c = scratch[pivots[r]];
            if (c == 0) continue;
            const auto& row = rows[r];
            for (int t = pivots[r]; t < j; ++t) {
                long x = (scratch[t] - c * row[t]) % p;
                scratch[t] = x < 0 ? x + p : x;
            }
        }
        for (int i = 0; i < j; ++i)
            if (scratch[i] != 0) return false;
        return true;
    }

    bool accepts(int rank) const {
        return target_at_most ? rank <= target_rank : rank == target_rank;
    }

    /// May this partial rank still lead to an acceptable leaf?
    bool viable(int rank) const { return rank <= target_rank; }

    void record_leaf(int rank) {
        if (!accepts(rank)) return;
        best_rank = rank;
        best_val = val;
        stop = true;
    }

    void dfs(int j, int rank_j) {
        if (stop) return;
        if (j == n) {
            record_leaf(rank_j);
            return;
        }
        build_basis(j);

        std::vector<int> digits;  // free slots entering at vertex j
        for (int s = vbegin[j]; s < vbegin[j + 1]; ++s)
            if (!slots[s].tree) digits.push_back(s);

        // When a rank rise of 2 already exceeds the stage target, only
        // columns inside the current row space matter, and of those only the
        // affine slice meeting the zero/tree constraints; that slice is never
        // larger than the raw value-combination space.
        if (!viable(rank_j + 2)) {
            enumerate_rowspace_columns(j, rank_j);
            return;
        }

        // Odometer over this vertex's free edges, first slot most significant.
        std::vector<long> scratch(j);
        std::vector<long> lo(digits.size(), 1), hi(digits.size(), p - 1);
        for (size_t d = 0; d < digits.size(); ++d) {
            if (digits[d] == restrict_slot) {
                lo[d] = restrict_lo;
                hi[d] = restrict_hi;
                if (lo[d] > hi[d]) return;  // empty partition chunk
            }
            set_slot(digits[d], lo[d]);
        }
        while (true) {
            if (++nodes > node_cap)
                throw BudgetExceeded(static_cast<double>(nodes),
                                     "rank search exceeded its node cap");
            const bool indep = !column_in_rowspace(j, scratch);
            const int r2 = rank_j + (indep ? 2 : 0);
            if (viable(r2)) {
                dfs(j + 1, r2);
                if (stop) return;
            }
            // advance odometer
            int d = static_cast<int>(digits.size()) - 1;
            while (d >= 0 && val[digits[d]] == hi[d]) {
                set_slot(digits[d], lo[d]);
                --d;
            }
            if (d < 0) break;
            set_slot(digits[d], val[digits[d]] + 1);
        }
    }

    /// Children of a depth-j node restricted to columns in the row space of
    /// the leading block (the only ones that keep the rank unchanged). The
    /// column's equality constraints (zero on non-edges, 1 on tree edges) are
    /// solved inside the row space first; only the resulting affine subspace
    /// is enumerated, leaving just the nonzero conditions to test per
    /// candidate.
    void enumerate_rowspace_columns(int j, int rank_j) {
        const auto& rows = basis_rows[j];
        const int rk = static_cast<int>(rows.size());

        std::vector<int> free_rows, free_row_slot;
        long range_lo = 1, range_hi = p - 1;
        int restricted_row = -1;
        std::vector<int> eq_rows;  // constrained rows, rhs 0 (non-edge) or 1 (tree)
        std::vector<long> eq_rhs;
        {
            std::vector<int> slot_at(j, -1);
            for (int s = vbegin[j]; s < vbegin[j + 1]; ++s) {
                slot_at[slots[s].i] = s;
                if (s == restrict_slot) {
                    restricted_row = slots[s].i;
                    range_lo = restrict_lo;
                    range_hi = restrict_hi;
                    if (range_lo > range_hi) return;  // empty partition chunk
                }
            }
            for (int i = 0; i < j; ++i) {
                if (slot_at[i] == -1) {
                    eq_rows.push_back(i);
                    eq_rhs.push_back(0);
                } else if (slots[slot_at[i]].tree) {
                    eq_rows.push_back(i);
                    eq_rhs.push_back(1);
                } else {
                    free_rows.push_back(i);
                    free_row_slot.push_back(slot_at[i]);
                }
            }
        }

        // Solve sum_t c[t] * rows[t][i] = rhs_i by elimination on the
        // (#eq x rk) system; columns without a pivot are the free directions.
        const int ne = static_cast<int>(eq_rows.size());
        std::vector<long> sys(static_cast<size_t>(ne) * (rk + 1));
        for (int e = 0; e < ne; ++e) {
            for (int t = 0; t < rk; ++t) sys[e * (rk + 1) + t] = rows[t][eq_rows[e]];
            sys[e * (rk + 1) + rk] = eq_rhs[e];
        }
        std::vector<int> pivot_col;
        int rr = 0;
        for (int col = 0; col < rk && rr < ne; ++col) {
            int piv = -1;
            for (int e = rr; e < ne; ++e)
                if (sys[e * (rk + 1) + col] != 0) { piv = e; break; }
            if (piv == -1) continue;
            for (int t = 0; t <= rk; ++t) std::swap(sys[piv * (rk + 1) + t], sys[rr * (rk + 1) + t]);
            const long inv = mod_inv(sys[rr * (rk + 1) + col]);
            for (int t = col; t <= rk; ++t) sys[rr * (rk + 1) + t] = sys[rr * (rk + 1) + t] * inv % p;
            for (int e = 0; e < ne; ++e) {
                if (e == rr) continue;
                const long f = sys[e * (rk + 1) + col];
                if (f == 0) continue;
                for (int t = col; t <= rk; ++t) {
                    long x = (sys[e * (rk + 1) + t] - f * sys[rr * (rk + 1) + t]) % p;
                    sys[e * (rk + 1) + t] = x < 0 ? x + p : x;
                }
            }
            pivot_col.push_back(col);
            ++rr;
        }
        for (int e = rr; e < ne; ++e)
            if (sys[e * (rk + 1) + rk] != 0) return;  // inconsistent: no column fits

        std::vector<int> is_pivot(rk, -1);
        for (int t = 0; t < rr; ++t) is_pivot[pivot_col[t]] = t;
        std::vector<int> free_coords;
        for (int t = 0; t < rk; ++t)
            if (is_pivot[t] == -1) free_coords.push_back(t);
        const int d = static_cast<int>(free_coords.size());

        // Particular solution and nullspace directions in coefficient space.
        auto coeff_to_column = [&](const std::vector<long>& c, std::vector<long>& b) {
            std::fill(b.begin(), b.end(), 0);
            for (int t = 0; t < rk; ++t) {
                if (c[t] == 0) continue;
                const auto& row = rows[t];
                for (int i = 0; i < j; ++i) b[i] = (b[i] + c[t] * row[i]) % p;
            }
        };
        std::vector<long> c0(rk, 0);
        for (int t = 0; t < rr; ++t) c0[pivot_col[t]] = sys[t * (rk + 1) + rk];
        std::vector<long> base_col(j);
        coeff_to_column(c0, base_col);
        std::vector<std::vector<long>> dir_cols(d, std::vector<long>(j));
        for (int s = 0; s < d; ++s) {
            std::vector<long> c(rk, 0);
            c[free_coords[s]] = 1;
            for (int t = 0; t < rr; ++t) {
                const long v = sys[t * (rk + 1) + free_coords[s]];
                c[pivot_col[t]] = v == 0 ? 0 : p - v;  // back-substitute
            }
            coeff_to_column(c, dir_cols[s]);
        }

        // Enumerate the affine subspace; only free rows need checking.
        std::vector<long> u(d, 0), b = base_col;
        while (true) {
            if (++nodes > node_cap)
                throw BudgetExceeded(static_cast<double>(nodes),
                                     "rank search exceeded its node cap");
            bool ok = true;
            for (size_t t = 0; t < free_rows.size() && ok; ++t) {
                const long v = b[free_rows[t]];
                ok = v != 0 && (free_rows[t] != restricted_row ||
                                (v >= range_lo && v <= range_hi));
            }
            if (ok) {
                for (size_t t = 0; t < free_rows.size(); ++t)
                    set_slot(free_row_slot[t], b[free_rows[t]]);
                dfs(j + 1, rank_j);
                if (stop) return;
            }
            // base-p counter; every digit change adds its direction once
            int s = d - 1;
            while (s >= 0) {
                const auto& dir = dir_cols[s];
                for (int i = 0; i < j; ++i) {
                    b[i] += dir[i];
                    if (b[i] >= p) b[i] -= p;
                }
                if (++u[s] < p) break;
                u[s] = 0;
                --s;
            }
            if (s < 0) break;
        }
    }

    void run_root() { dfs(0, 0); }
};

/// Turn per-slot values (position space) into an entry matrix in the input
/// graph's labeling.
inline std::vector<long> values_to_entries(const RankSearch& s, const std::vector<long>& values) {
    const int n = s.n;
    std::vector<long> a(static_cast<size_t>(n) * n, 0);
    for (size_t k = 0; k < s.slots.size(); ++k) {
        const int i = s.order[s.slots[k].i];
        const int j = s.order[s.slots[k].j];
        a[i * n + j] = values[k];
        a[j * n + i] = values[k] == 0 ? 0 : s.p - values[k];
    }
    return a;
}

struct ComponentOutcome {
    int rank;
    std::vector<long> values;  // per-slot
};

/// Minimum rank of one connected component graph (already relabeled).
/// Iterative deepening: stage t sweeps every assignment whose leading blocks
/// all stay at rank <= t (a superset of the rank-<= t assignments, since a
/// submatrix never out-ranks the whole), so an empty stage proves min > t and
/// the first hit is the exact minimum.
inline ComponentOutcome min_rank_component(const Graph& gc, const PrimeField& field,
                                           const OracleOptions& opt, int floor_rank) {
    const long p = field.modulus();
    const int n = gc.vertex_count();
    RankSearch proto(gc, p, opt.normalize);
    if (proto.nominal_space() > opt.budget)
        throw BudgetExceeded(proto.nominal_space(),
                             "minimum-rank search space exceeds the budget");

    if (proto.free_slots.empty()) {
        // Single normalized assignment (spanning forests, in particular).
        return {proto.full_rank_of_current(), proto.val};
    }

    // Random probes give an upper incumbent (often the generic rank).
    long probe_best = -1;
    std::vector<long> probe_val;
    if (opt.probe_trials > 0) {
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<long> dist(1, p - 1);
        std::vector<long> v(proto.slots.size());
        for (int t = 0; t < opt.probe_trials; ++t) {
            for (size_t s = 0; s < proto.slots.size(); ++s)
                v[s] = proto.slots[s].tree ? 1 : dist(rng);
            proto.load_assignment(v);
            const int r = proto.full_rank_of_current();
            if (probe_best < 0 || r < probe_best) {
                probe_best = r;
                probe_val = v;
                if (probe_best <= floor_rank) break;
            }
        }
    }
    if (probe_best >= 0 && probe_best <= floor_rank)
        return {static_cast<int>(probe_best), probe_val};

    const int threads = std::max(1, opt.threads);
    auto run_stage = [&](int target, long lo, long hi) {
        RankSearch s(gc, p, opt.normalize);
        s.target_rank = target;
        s.target_at_most = true;
        s.node_cap = std::max<long>(1, opt.node_cap / threads);
        if (lo > 0) {
            s.restrict_slot = s.free_slots.front();
            s.restrict_lo = lo;
            s.restrict_hi = hi;
        }
        s.run_root();
        return std::pair<long, std::vector<long>>(s.best_rank, s.best_val);
    };

    for (int t = std::max(0, floor_rank + (floor_rank % 2)); t <= n; t += 2) {
        if (probe_best >= 0 && t >= probe_best) break;
        std::pair<long, std::vector<long>> found{-1, {}};
        if (threads == 1) {
            found = run_stage(t, 0, 0);
        } else {
            std::vector<std::pair<long, std::vector<long>>> results(threads, {-1l, {}});
            std::vector<std::exception_ptr> errors(threads);
            std::vector<std::thread> pool;
            for (int w = 0; w < threads; ++w) {
                pool.emplace_back([&, w] {
                    const long span = p - 1;
                    const long lo = 1 + span * w / threads;
                    const long hi = span * (w + 1) / threads;
                    try {
                        if (lo <= hi) results[w] = run_stage(t, lo, hi);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
            for (auto& th : pool) th.join();
            for (auto& e : errors)
                if (e) std::rethrow_exception(e);
            for (auto& r : results)
                if (r.first >= 0 && (found.first < 0 || r.first < found.first)) found = r;
        }
        if (found.first >= 0) return {static_cast<int>(found.first), found.second};
    }
    return {static_cast<int>(probe_best), probe_val};
}

}  // namespace detail

/// Exact minimum skew rank of g over GF(p) with a witness attaining it.
/// Components are searched independently (matrices described by a disconnected
/// graph are block-diagonal up to ordering, so ranks add).
inline RankWitness min_rank_exhaustive(const Graph& g, PrimeField field,
                                       OracleOptions opt = {}) {
    const int n = g.vertex_count();
    const long p = field.modulus();
    std::vector<long> entries(static_cast<size_t>(n) * n, 0);
    int total = 0;

    auto comps = components(g);
    for (const auto& comp : comps) {
        auto sub = induced_subgraph(g, comp);
        int floor_rank = sub.graph.edge_count() > 0 ? 2 : 0;
        if (comps.size() == 1 && opt.lower_bound)
            floor_rank = std::max(floor_rank, *opt.lower_bound);
        auto out = detail::min_rank_component(sub.graph, field, opt, floor_rank);
        total += out.rank;
        detail::RankSearch shape(sub.graph, p, opt.normalize);
        auto sub_entries = detail::values_to_entries(shape, out.values);
        const int cn = sub.graph.vertex_count();
        for (int i = 0; i < cn; ++i)
            for (int j = 0; j < cn; ++j)
                entries[sub.vertex_map[i] * n + sub.vertex_map[j]] = sub_entries[i * cn + j];
    }
    return {total, SkewMatrix(field, g, std::move(entries))};
}

/// Maximum rank over `trials` uniformly random valid assignments; lower-bounds
/// MR^-(GF(p), g). Deterministic given the seed. `stop_at` short-circuits when
/// a known ceiling (2 * matching number) has been reached.
inline int max_rank_sample(const Graph& g, PrimeField field, long trials, uint64_t seed,
                           int stop_at = -1) {
    if (trials < 1) throw BadParameters("max_rank_sample requires trials >= 1");
    std::mt19937_64 rng(seed);
    int best = 0;
    for (long t = 0; t < trials; ++t) {
        SkewMatrix a = random_skew(g, field, rng);
        best = std::max(best, rank_skew(a));
        if (stop_at >= 0 && best >= stop_at) break;
    }
    return best;
}

/// Search for a matrix with support g and rank exactly `target`: random
/// trials first, then a full sweep (pruned where the partial rank already
/// exceeds the target). Returns nothing if the sweep proves no assignment
/// attains the target.
inline std::optional<SkewMatrix> find_rank_witness(const Graph& g, PrimeField field,
                                                   int target, OracleOptions opt = {}) {
    const long p = field.modulus();
    const int n = g.vertex_count();
    if (target == 0) {
        if (g.edge_count() > 0) return std::nullopt;
        return SkewMatrix(field, g, std::vector<long>(static_cast<size_t>(n) * n, 0));
    }

    std::mt19937_64 rng(opt.seed);
    for (int t = 0; t < opt.probe_trials; ++t) {
        SkewMatrix a = random_skew(g, field, rng);
        if (rank_skew(a) == target) return a;
    }

    detail::RankSearch s(g, p, opt.normalize);
    if (s.nominal_space() > opt.budget)
        throw BudgetExceeded(s.nominal_space(), "certificate sweep exceeds the budget");
    s.target_rank = target;
    s.node_cap = opt.node_cap;
    s.run_root();
    if (s.best_rank != target) return std::nullopt;
    auto entries = detail::values_to_entries(s, s.best_val);
    return SkewMatrix(field, g, std::move(entries));
}

}  // namespace skewrank
