#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "skewrank/engine.hpp"
#include "skewrank/enumerate.hpp"
#include "skewrank/io.hpp"

namespace skewrank {

struct CampaignOptions {
    int nmax = -1;             // -1: campaign default
    std::vector<long> primes;  // empty: campaign default
    uint64_t seed = 0;
    double budget = -1;        // nominal search-space cap; -1: campaign default (1e12)
    long trials = -1;          // sampling trials; -1: campaign default
    long cases = -1;           // random-case campaigns; -1: campaign default
    int threads = 1;
};

struct Disagreement {
    std::string graph;  // edge-list text
    std::string expected, got;
    long prime = 0;
};

struct VerificationReport {
    std::string family;
    std::vector<long> primes;
    long graphs_checked = 0;
    long agreements = 0;
    std::vector<Disagreement> disagreements;
    std::vector<std::string> notes;
    double runtime_seconds = 0;
};

inline nlohmann::json to_json(const VerificationReport& r) {
    nlohmann::json ds = nlohmann::json::array();
    for (const auto& d : r.disagreements)
        ds.push_back({{"graph", d.graph},
                      {"expected", d.expected},
                      {"got", d.got},
                      {"prime", d.prime}});
    return {{"family", r.family},
            {"primes", r.primes},
            {"graphs_checked", r.graphs_checked},
            {"agreements", r.agreements},
            {"disagreements", std::move(ds)},
            {"notes", r.notes},
            {"runtime_seconds", r.runtime_seconds}};
}

namespace detail {

/// Shared exact-rank cache keyed by isomorphism class and prime. Presence
/// only saves time; cached values equal fresh oracle results by construction.
struct OracleCache {
    std::mutex mu;
    std::map<std::tuple<int, uint64_t, long>, int> ranks;
};

inline int oracle_rank(const Graph& g, long p, double budget, OracleCache* cache,
                       uint64_t seed = 0) {
    std::optional<std::tuple<int, uint64_t, long>> key;
    if (cache && g.vertex_count() >= 4 && g.vertex_count() <= 7) {
        key = std::make_tuple(g.vertex_count(), canonical_form(g), p);
        std::lock_guard lock(cache->mu);
        auto it = cache->ranks.find(*key);
        if (it != cache->ranks.end()) return it->second;
    }
    OracleOptions opt;
    opt.budget = budget;
    opt.seed = seed;
    const int r = min_rank_exhaustive(g, PrimeField(p), opt).rank;
    if (key) {
        std::lock_guard lock(cache->mu);
        cache->ranks.emplace(*key, r);
    }
    return r;
}

inline void run_pool(int threads, size_t count, const std::function<void(size_t)>& work) {
    if (threads <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) work(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (size_t i; (i = next.fetch_add(1)) < count;) work(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Per-task outcome; merged into the report in task order so reports are
/// deterministic regardless of the worker pool.
struct CheckOutcome {
    bool ok = true;
    Disagreement d;
    std::vector<std::string> notes;
};

inline VerificationReport make_report(std::string family, std::vector<long> primes) {
    VerificationReport rep;
    rep.family = std::move(family);
    rep.primes = std::move(primes);
    return rep;
}

inline void merge_outcomes(VerificationReport& rep, const std::vector<CheckOutcome>& outs) {
    for (const auto& o : outs) {
        ++rep.graphs_checked;
        if (o.ok)
            ++rep.agreements;
        else
            rep.disagreements.push_back(o.d);
        for (const auto& n : o.notes) rep.notes.push_back(n);
    }
}

inline std::vector<Graph> connected_family(int n_lo, int n_hi) {
    std::vector<Graph> out;
    for (int n = n_lo; n <= n_hi; ++n) {
        auto gs = enumerate_graphs(n, true, true);
        out.insert(out.end(), gs.begin(), gs.end());
    }
    return out;
}

inline bool adj_has_unique_pm(const std::array<uint32_t, 8>& adj, int n) {
    if (n % 2 != 0) return false;
    const uint32_t all = (1u << n) - 1;
    int count = 0;
    auto rec = [&](auto&& self, uint32_t covered) -> void {
        uint32_t todo = all & ~covered;
        if (todo == 0) {
            ++count;
            return;
        }
        const int low = std::countr_zero(todo);
        for (uint32_t m = adj[low] & ~covered; m != 0 && count < 2;) {
            const int w = std::countr_zero(m);
            m &= m - 1;
            self(self, covered | (1u << low) | (1u << w));
        }
    };
    rec(rec, 0);
    return count == 1;
}

}  // namespace detail

namespace campaigns {

/// "lem-zf": n - rank <= Z(G) for every connected graph, every listed prime.
inline VerificationReport lem_zf(CampaignOptions opt) {
    const int nmax = opt.nmax > 0 ? opt.nmax : 6;
    const std::vector<long> primes = opt.primes.empty() ? std::vector<long>{5, 11} : opt.primes;
    const double budget = opt.budget > 0 ? opt.budget : 1e12;
    VerificationReport rep = detail::make_report("lem-zf", primes);

    auto graphs = detail::connected_family(1, nmax);
    detail::OracleCache cache;
    std::vector<detail::CheckOutcome> outs(graphs.size() * primes.size());
    detail::run_pool(opt.threads, outs.size(), [&](size_t i) {
        const Graph& g = graphs[i / primes.size()];
        const long p = primes[i % primes.size()];
        auto& o = outs[i];
        const int rank = detail::oracle_rank(g, p, budget, &cache, opt.seed);
        const int z = zero_forcing_number(g).size;
        const int nullity = g.vertex_count() - rank;
        o.ok = nullity <= z;
        if (!o.ok)
            o.d = {serialize_graph(g), "n - rank <= Z = " + std::to_string(z),
                   "nullity " + std::to_string(nullity), p};
    });
    detail::merge_outcomes(rep, outs);
    return rep;
}

/// "lem-maxrank": converged sampled maximum rank equals 2*match(G).
inline VerificationReport lem_maxrank(CampaignOptions opt) {
    const int nmax = opt.nmax > 0 ? opt.nmax : 6;
    const std::vector<long> primes = opt.primes.empty() ? std::vector<long>{11} : opt.primes;
    const long trials = opt.trials > 0 ? opt.trials : 1000;
    VerificationReport rep = detail::make_report("lem-maxrank", primes);

    auto graphs = detail::connected_family(1, nmax);
    std::vector<detail::CheckOutcome> outs(graphs.size() * primes.size());
    detail::run_pool(opt.threads, outs.size(), [&](size_t i) {
        const Graph& g = graphs[i / primes.size()];
        const long p = primes[i % primes.size()];
        auto& o = outs[i];
        const int target = 2 * matching_number(g).size;
        const int got = max_rank_sample(g, PrimeField(p), trials, opt.seed, target);
        o.ok = got == target;
        if (!o.ok)
            o.d = {serialize_graph(g), "max rank = 2*match = " + std::to_string(target),
                   "sampled max " + std::to_string(got), p};
    });
    detail::merge_outcomes(rep, outs);
    return rep;
}

/// "lem-upm": unique perfect matching forces rank n.
inline VerificationReport lem_upm(CampaignOptions opt) {
    const int nmax = opt.nmax > 0 ? opt.nmax : 8;
    const std::vector<long> primes = opt.primes.empty() ? std::vector<long>{5} : opt.primes;
    const double budget = opt.budget > 0 ? opt.budget : 1e12;
    VerificationReport rep = detail::make_report("lem-upm", primes);

    std::vector<Graph> graphs;
    for (int n = 2; n <= nmax; n += 2)
        enumerate_graphs(
            n, true, true,
            [&](const Graph& g) {
                graphs.push_back(g);
                return true;
            },
            detail::adj_has_unique_pm);
    rep.notes.push_back("graphs with a unique perfect matching: " +
                        std::to_string(graphs.size()));

    detail::OracleCache cache;
    std::vector<detail::CheckOutcome> outs(graphs.size() * primes.size());
    detail::run_pool(opt.threads, outs.size(), [&](size_t i) {
        const Graph& g = graphs[i / primes.size()];
        const long p = primes[i % primes.size()];
        auto& o = outs[i];
        const int rank = detail::oracle_rank(g, p, budget, &cache, opt.seed);
        o.ok = rank == g.vertex_count();
        if (!o.ok)
            o.d = {serialize_graph(g), "rank " + std::to_string(g.vertex_count()),
                   "rank " + std::to_string(rank), p};
    });
    detail::merge_outcomes(rep, outs);
    return rep;
}

/// "thm-odd": no even cycles gives rank = 2*match over any field.
inline VerificationReport thm_odd(CampaignOptions opt) {
    const int nmax = opt.nmax > 0 ? opt.nmax : 7;
    const std::vector<long> primes = opt.primes.empty() ? std::vector<long>{5} : opt.primes;
    const double budget = opt.budget > 0 ? opt.budget : 1e12;
    VerificationReport rep = detail::make_report("thm-odd", primes);

    std::vector<Graph> graphs;
    for (const auto& g : detail::connected_family(1, nmax))
        if (!has_even_cycle(g)) graphs.push_back(g);

    detail::OracleCache cache;
    std::vector<detail::CheckOutcome> outs(graphs.size() * primes.size());
    detail::run_pool(opt.threads, outs.size(), [&](size_t i) {
        const Graph& g = graphs[i / primes.size()];
        const long p = primes[i % primes.size()];
        auto& o = outs[i];
        const int rank = detail::oracle_rank(g, p, budget, &cache, opt.seed);
        const int target = 2 * matching_number(g).size;
        o.ok = rank == target;
        if (!o.ok)
            o.d = {serialize_graph(g), "rank 2*match = " + std::to_string(target),
                   "rank " + std::to_string(rank), p};
    });
    detail::merge_outcomes(rep, outs);
    return rep;
}

/// "lem-cut": the cut-vertex formula, with all sub-ranks from the oracle,
/// reproduces the oracle rank of the whole graph at every cut vertex.
inline VerificationReport lem_cut(CampaignOptions opt) {
    const int nmax = opt.nmax > 0 ? opt.nmax : 7;
    const std::vector<long> primes = opt.primes.empty() ? std::vector<long>{11} : opt.primes;
    const double budget = opt.budget > 0 ? opt.budget : 1e12;
    VerificationReport rep = detail::make_report("lem-cut", primes);

    std::vector<Graph> graphs;
    for (const auto& g : detail::connected_family(2, nmax))
        if (!cut_vertices(g).empty()) graphs.push_back(g);

    detail::OracleCache cache;
    std::vector<detail::CheckOutcome> outs(graphs.size() * primes.size());
    detail::run_pool(opt.threads, outs.size(), [&](size_t i) {
        const Graph& g = graphs[i / primes.size()];
        const long p = primes[i % primes.size()];
        auto& o = outs[i];
        try {
            const int whole = detail::oracle_rank(g, p, budget, &cache, opt.seed);
            for (int v : cut_vertices(g)) {
                auto dec = branches_at(g, v);
                int sum_deleted = 0, sum_rv = 0;
                for (const auto& br : dec.branches) {
                    int local_v = static_cast<int>(std::lower_bound(br.vertex_map.begin(),
                                                                    br.vertex_map.end(), v) -
                                                   br.vertex_map.begin());
                    const int rank_branch =
                        detail::oracle_rank(br.graph, p, budget, &cache, opt.seed);
                    const int rank_rest = detail::oracle_rank(
                        delete_vertex(br.graph, local_v).graph, p, budget, &cache, opt.seed);
                    sum_deleted += rank_rest;
                    sum_rv += rank_branch - rank_rest;
                }
                const int formula = sum_deleted + std::min(sum_rv, 2);
                if (formula != whole) {
                    o.ok = false;
                    o.d = {serialize_graph(g), "formula at v=" + std::to_string(v) + " = rank",
                           std::to_string(formula) + " vs " + std::to_string(whole), p};
                    break;
                }
            }
        } catch (const BudgetExceeded&) {
            o.notes.push_back("skipped (budget): n=" + std::to_string(g.vertex_count()) +
                              " m=" + std::to_string(g.edge_count()) + " p=" + std::to_string(p));
        }
    });
    detail::merge_outcomes(rep, outs);
    return rep;
}

/// "thm-mr4": the cut-vertex rank-4 classifier agrees with the oracle at the
/// largest prime; smaller primes are reported informationally.
inline VerificationReport thm_mr4(CampaignOptions opt) {
    const int nmax = opt.nmax > 0 ? opt.nmax : 7;
    const std::vector<long> primes =
        opt.primes.empty() ? std::vector<long>{5, 11, 13} : opt.primes;
    const double budget = opt.budget > 0 ? opt.budget : 1e12;
    const long decide = *std::max_element(primes.begin(), primes.end());
    VerificationReport rep = detail::make_report("thm-mr4", primes);

    std::vector<Graph> graphs;
    for (const auto& g : detail::connected_family(2, nmax))
        if (!cut_vertices(g).empty()) graphs.push_back(g);

    detail::OracleCache cache;
    std::vector<detail::CheckOutcome> outs(graphs.size());
    detail::run_pool(opt.threads, outs.size(), [&](size_t i) {
        const Graph& g = graphs[i];
        auto& o = outs[i];
        const bool is4 = classify_mr4_cut_vertex(g).verdict != Mr4Classification::Verdict::no;
        std::map<long, int> ranks;
        for (long p : primes) {
            try {
                ranks[p] = detail::oracle_rank(g, p, budget, &cache, opt.seed);
            } catch (const BudgetExceeded&) {
            }
        }
        if (!ranks.count(decide)) {
            o.notes.push_back("skipped (budget) at p=" + std::to_string(decide) + ": n=" +
                              std::to_string(g.vertex_count()) + " m=" +
                              std::to_string(g.edge_count()));
            return;
        }
        o.ok = (ranks[decide] == 4) == is4;
        if (!o.ok)
            o.d = {serialize_graph(g),
                   std::string("classifier says rank ") + (is4 ? "= 4" : "!= 4"),
                   "oracle rank " + std::to_string(ranks[decide]), decide};
        for (long p : primes)
            if (p != decide && ranks.count(p) && (ranks[p] == 4) != (ranks[decide] == 4))
                o.notes.push_back("not stabilized at p=" + std::to_string(p) + ": rank " +
                                  std::to_string(ranks[p]) + " vs " +
                                  std::to_string(ranks[decide]) + " for\n" + serialize_graph(g));
    });
    detail::merge_outcomes(rep, outs);
    return rep;
}

/// "thm-kpath": path powers are recognized as k-paths, their first k labels
/// force the whole graph, and the closed-form rank matches the oracle at the
/// largest prime (where the search fits the budget).
inline VerificationReport thm_kpath(CampaignOptions opt) {
    const int nmax = opt.nmax > 0 ? opt.nmax : 9;
    const std::vector<long> primes =
        opt.primes.empty() ? std::vector<long>{5, 11, 13} : opt.primes;
    const double budget = opt.budget > 0 ? opt.budget : 1e12;
    const long decide = *std::max_element(primes.begin(), primes.end());
    const int kmax = 3;
    VerificationReport rep = detail::make_report("thm-kpath", primes);

    std::vector<std::pair<int, int>> tasks;  // (n, k)
    for (int k = 1; k <= kmax; ++k)
        for (int n = k + 1; n <= nmax; ++n) tasks.emplace_back(n, k);

    detail::OracleCache cache;
    std::vector<detail::CheckOutcome> outs(tasks.size());
    detail::run_pool(opt.threads, outs.size(), [&](size_t i) {
        const auto [n, k] = tasks[i];
        auto& o = outs[i];
        const Graph g = path_power(n, k);
        const std::string name = "P_" + std::to_string(n) + "^" + std::to_string(k);

        auto lab = recognize_k_path(g);
        if (!lab || lab->k != k || !kpath_labeling_valid(g, *lab)) {
            o.ok = false;
            o.d = {serialize_graph(g), name + " recognized as a " + std::to_string(k) + "-path",
                   lab ? "recognized with k=" + std::to_string(lab->k) : "not recognized", 0};
            return;
        }
        std::vector<int> zset(lab->order.begin(), lab->order.begin() + k);
        if (detail::forcing_closure_mask(g, vector_to_mask(zset)) != g.all_vertices_mask()) {
            o.ok = false;
            o.d = {serialize_graph(g), "first k labels form a zero forcing set",
                   "closure is not the whole vertex set", 0};
            return;
        }

        const int formula = kpath_mr(n, k);
        for (long p : primes) {
            try {
                const int rank = detail::oracle_rank(g, p, budget, &cache, opt.seed);
                if (p == decide && rank != formula) {
                    o.ok = false;
                    o.d = {serialize_graph(g), name + " rank " + std::to_string(formula),
                           "oracle rank " + std::to_string(rank), p};
                    return;
                }
                if (p != decide && rank != formula)
                    o.notes.push_back("not stabilized at p=" + std::to_string(p) + ": " + name +
                                      " oracle " + std::to_string(rank) + " vs formula " +
                                      std::to_string(formula));
            } catch (const BudgetExceeded&) {
                o.notes.push_back("skipped (budget): " + name + " at p=" + std::to_string(p));
            }
        }
    });
    detail::merge_outcomes(rep, outs);
    return rep;
}

/// "lem-induced": induced subgraphs never have larger minimum rank.
inline VerificationReport lem_induced(CampaignOptions opt) {
    const int nmax = opt.nmax > 0 ? opt.nmax : 6;
    const std::vector<long> primes = opt.primes.empty() ? std::vector<long>{5, 11} : opt.primes;
    const double budget = opt.budget > 0 ? opt.budget : 1e12;
    VerificationReport rep = detail::make_report("lem-induced", primes);

    auto graphs = detail::connected_family(2, nmax);
    detail::OracleCache cache;
    std::vector<detail::CheckOutcome> outs(graphs.size() * primes.size());
    detail::run_pool(opt.threads, outs.size(), [&](size_t i) {
        const Graph& g = graphs[i / primes.size()];
        const long p = primes[i % primes.size()];
        auto& o = outs[i];
        const int whole = detail::oracle_rank(g, p, budget, &cache, opt.seed);
        const int n = g.vertex_count();
        for (uint32_t sub = 1; sub + 1 < (1u << n); ++sub) {
            auto h = induced_subgraph(g, mask_to_vector(sub));
            const int r = detail::oracle_rank(h.graph, p, budget, &cache, opt.seed);
            if (r > whole) {
                o.ok = false;
                o.d = {serialize_graph(g),
                       "induced subgraph rank <= " + std::to_string(whole),
                       "subgraph on " + std::to_string(h.graph.vertex_count()) +
                           " vertices has rank " + std::to_string(r),
                       p};
                break;
            }
        }
    });
    detail::merge_outcomes(rep, outs);
    return rep;
}

/// "lem-subadd": union subadditivity on random edge decompositions; asserted
/// at the largest prime, reported informationally at the others.
inline VerificationReport lem_subadd(CampaignOptions opt) {
    const int nmax = opt.nmax > 0 ? opt.nmax : 6;
    const std::vector<long> primes = opt.primes.empty() ? std::vector<long>{5, 13} : opt.primes;
    const double budget = opt.budget > 0 ? opt.budget : 1e12;
    const long cases = opt.cases > 0 ? opt.cases : 200;
    const long decide = *std::max_element(primes.begin(), primes.end());
    VerificationReport rep = detail::make_report("lem-subadd", primes);

    struct Case {
        Graph g, g1, g2;
    };
    std::vector<Case> instances;
    std::mt19937_64 rng(opt.seed);
    while (static_cast<long>(instances.size()) < cases) {
        const int n = 2 + static_cast<int>(rng() % (nmax - 1));
        std::vector<Edge> edges, e1, e2;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() & 1) edges.emplace_back(u, v);
        if (edges.empty()) continue;
        for (auto e : edges) {
            switch (rng() % 3) {
                case 0: e1.push_back(e); break;
                case 1: e2.push_back(e); break;
                default:
                    e1.push_back(e);
                    e2.push_back(e);
            }
        }
        instances.push_back({Graph(n, edges), Graph(n, e1), Graph(n, e2)});
    }

    detail::OracleCache cache;
    std::vector<detail::CheckOutcome> outs(instances.size());
    detail::run_pool(opt.threads, outs.size(), [&](size_t i) {
        const auto& c = instances[i];
        auto& o = outs[i];
        for (long p : primes) {
            const int rg = detail::oracle_rank(c.g, p, budget, &cache, opt.seed);
            const int r1 = detail::oracle_rank(c.g1, p, budget, &cache, opt.seed);
            const int r2 = detail::oracle_rank(c.g2, p, budget, &cache, opt.seed);
            if (rg <= r1 + r2) continue;
            if (p == decide) {
                o.ok = false;
                o.d = {serialize_graph(c.g),
                       "rank(g) <= rank(g1) + rank(g2) = " + std::to_string(r1 + r2),
                       "rank " + std::to_string(rg), p};
            } else {
                o.notes.push_back("subadditivity violated at small prime p=" +
                                  std::to_string(p) + " (informational): rank " +
                                  std::to_string(rg) + " > " + std::to_string(r1) + "+" +
                                  std::to_string(r2) + " for\n" + serialize_graph(c.g));
            }
        }
    });
    detail::merge_outcomes(rep, outs);
    return rep;
}

/// "lem-multipartite": rank 2 exactly for complete multipartite graphs,
/// decided at the largest prime.
inline VerificationReport lem_multipartite(CampaignOptions opt) {
    const int nmax = opt.nmax > 0 ? opt.nmax : 6;
    const std::vector<long> primes =
        opt.primes.empty() ? std::vector<long>{5, 11, 13} : opt.primes;
    const double budget = opt.budget > 0 ? opt.budget : 1e12;
    const long decide = *std::max_element(primes.begin(), primes.end());
    VerificationReport rep = detail::make_report("lem-multipartite", primes);

    auto graphs = detail::connected_family(2, nmax);
    detail::OracleCache cache;
    std::vector<detail::CheckOutcome> outs(graphs.size());
    detail::run_pool(opt.threads, outs.size(), [&](size_t i) {
        const Graph& g = graphs[i];
        auto& o = outs[i];
        const bool cm = is_complete_multipartite(g).has_value();
        for (long p : primes) {
            const int rank = detail::oracle_rank(g, p, budget, &cache, opt.seed);
            if (p == decide) {
                o.ok = cm == (rank == 2);
                if (!o.ok)
                    o.d = {serialize_graph(g),
                           cm ? "complete multipartite: rank 2" : "not multipartite: rank != 2",
                           "oracle rank " + std::to_string(rank), p};
            } else if (cm != (rank == 2)) {
                o.notes.push_back("not stabilized at p=" + std::to_string(p) + ": rank " +
                                  std::to_string(rank) + " for\n" + serialize_graph(g));
            }
        }
    });
    detail::merge_outcomes(rep, outs);
    return rep;
}

}  // namespace campaigns

inline VerificationReport run_verification(const std::string& campaign,
                                           const CampaignOptions& opt = {}) {
    const auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    if (campaign == "lem-zf")
        rep = campaigns::lem_zf(opt);
    else if (campaign == "lem-maxrank")
        rep = campaigns::lem_maxrank(opt);
    else if (campaign == "lem-upm")
        rep = campaigns::lem_upm(opt);
    else if (campaign == "thm-odd")
        rep = campaigns::thm_odd(opt);
    else if (campaign == "lem-cut")
        rep = campaigns::lem_cut(opt);
    else if (campaign == "thm-mr4")
        rep = campaigns::thm_mr4(opt);
    else if (campaign == "thm-kpath")
        rep = campaigns::thm_kpath(opt);
    else if (campaign == "lem-induced")
        rep = campaigns::lem_induced(opt);
    else if (campaign == "lem-subadd")
        rep = campaigns::lem_subadd(opt);
    else if (campaign == "lem-multipartite")
        rep = campaigns::lem_multipartite(opt);
    else
        throw UnknownCampaign("unknown campaign: " + campaign);
    rep.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace skewrank
