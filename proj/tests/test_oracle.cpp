#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "skewrank/enumerate.hpp"
#include "skewrank/oracle.hpp"
#include "test_util.hpp"

using namespace skewrank;

TEST_CASE("minimum rank examples") {
    PrimeField f5(5);
    CHECK(min_rank_exhaustive(Graph(4), f5).rank == 0);
    CHECK(min_rank_exhaustive(complete_graph(2), f5).rank == 2);
    CHECK(min_rank_exhaustive(cycle_graph(4), f5).rank == 2);
    CHECK(min_rank_exhaustive(path_graph(4), f5).rank == 4);
    CHECK(min_rank_exhaustive(path_graph(3), f5).rank == 2);
}

TEST_CASE("witnesses certify themselves") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        std::vector<Edge> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() & 1) edges.emplace_back(i, j);
        Graph g(n, edges);
        const long p = (trial & 1) ? 5 : 11;
        auto w = min_rank_exhaustive(g, PrimeField(p));
        CHECK(w.rank % 2 == 0);
        CHECK(w.matrix.support() == g);        // SkewMatrix construction validates
        CHECK(rank_skew(w.matrix) == w.rank);  // the rest of the invariants
    }
}

TEST_CASE("normalized search equals the plain unnormalized scan") {
    // All connected graphs on up to 4 vertices at p in {3, 5}, against the
    // test-side full scan.
    for (long p : {3l, 5l}) {
        for (int n = 1; n <= 4; ++n) {
            for (const auto& g : enumerate_graphs(n, true, true)) {
                const int expected = testutil::brute_min_rank(g, p);
                CHECK(min_rank_exhaustive(g, PrimeField(p)).rank == expected);
                OracleOptions raw;
                raw.normalize = false;
                CHECK(min_rank_exhaustive(g, PrimeField(p), raw).rank == expected);
            }
        }
    }
}

TEST_CASE("minimum rank is invariant under relabeling") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        std::vector<Edge> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() & 1) edges.emplace_back(i, j);
        Graph g(n, edges);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Edge> pedges;
        for (auto [u, v] : edges) pedges.emplace_back(perm[u], perm[v]);
        Graph h(n, pedges);
        PrimeField f(7);
        CHECK(min_rank_exhaustive(g, f).rank == min_rank_exhaustive(h, f).rank);
    }
}

TEST_CASE("partitioned search equals single-threaded search") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 4);
        std::vector<Edge> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 3 != 0) edges.emplace_back(i, j);
        Graph g(n, edges);
        PrimeField f(trial & 1 ? 7 : 11);
        OracleOptions single, multi;
        single.budget = multi.budget = 1e12;
        multi.threads = 3;
        auto a = min_rank_exhaustive(g, f, single);
        auto b = min_rank_exhaustive(g, f, multi);
        CHECK(a.rank == b.rank);
        CHECK(rank_skew(b.matrix) == b.rank);
    }
}

TEST_CASE("budget guard") {
    OracleOptions tiny;
    tiny.budget = 10;
    CHECK_THROWS_AS(min_rank_exhaustive(complete_graph(5), PrimeField(11), tiny),
                    BudgetExceeded);
    // within budget: a tree has no free edges at all
    CHECK(min_rank_exhaustive(path_graph(5), PrimeField(11), tiny).rank == 4);
}

TEST_CASE("caller-supplied lower bound only accelerates") {
    OracleOptions hinted;
    hinted.lower_bound = 2;
    CHECK(min_rank_exhaustive(cycle_graph(4), PrimeField(5), hinted).rank == 2);
    hinted.lower_bound = 4;  // sound for P_4 (unique perfect matching)
    CHECK(min_rank_exhaustive(path_graph(4), PrimeField(5), hinted).rank == 4);
}

TEST_CASE("max rank sampling") {
    PrimeField f11(11);
    CHECK(max_rank_sample(complete_graph(2), PrimeField(3), 1, 0) == 2);
    CHECK(max_rank_sample(path_graph(4), f11, 50, 0) == 4);
    CHECK(max_rank_sample(cycle_graph(5), f11, 50, 0) == 4);
    CHECK_THROWS_AS(max_rank_sample(path_graph(3), f11, 0, 0), BadParameters);
    // sampled max never exceeds the exhaustive max, nor dips below the minimum
    for (const auto& g : enumerate_graphs(4, true, true)) {
        const int brute = testutil::brute_max_rank(g, 5);
        const int sampled = max_rank_sample(g, PrimeField(5), 40, 1);
        CHECK(sampled <= brute);
        CHECK(min_rank_exhaustive(g, PrimeField(5)).rank <= sampled);
    }
}

TEST_CASE("sampling is deterministic given the seed") {
    Graph g = cycle_graph(6);
    PrimeField f(11);
    CHECK(max_rank_sample(g, f, 7, 123) == max_rank_sample(g, f, 7, 123));
}

TEST_CASE("exact-rank witness search") {
    PrimeField f5(5), f11(11);
    auto hit = find_rank_witness(cycle_graph(4), f5, 2);
    REQUIRE(hit.has_value());
    CHECK(rank_skew(*hit) == 2);
    auto four = find_rank_witness(cycle_graph(4), f5, 4);
    REQUIRE(four.has_value());
    CHECK(rank_skew(*four) == 4);
    CHECK_FALSE(find_rank_witness(complete_graph(2), f5, 0).has_value());
    CHECK_FALSE(find_rank_witness(path_graph(4), f11, 2).has_value());
}

TEST_CASE("oracle respects induced-subgraph monotonicity at small scale") {
    for (const auto& g : enumerate_graphs(4, true, true)) {
        const int whole = min_rank_exhaustive(g, PrimeField(5)).rank;
        for (uint32_t sub = 1; sub + 1 < 16u; ++sub) {
            auto h = induced_subgraph(g, mask_to_vector(sub));
            CHECK(min_rank_exhaustive(h.graph, PrimeField(5)).rank <= whole);
        }
    }
}
