#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "skewrank/enumerate.hpp"
#include "test_util.hpp"

using namespace skewrank;

TEST_CASE("small enumerations match known class counts") {
    auto n2 = enumerate_graphs(2, true, true);
    REQUIRE(n2.size() == 1);
    CHECK(n2[0] == complete_graph(2));

    auto n3 = enumerate_graphs(3, true, true);
    REQUIRE(n3.size() == 2);
    CHECK(testutil::brute_isomorphic(n3[0], path_graph(3)));
    CHECK(testutil::brute_isomorphic(n3[1], complete_graph(3)));

    CHECK(enumerate_graphs(4, true, true).size() == 6);
    CHECK(enumerate_graphs(4, false, true).size() == 11);
    CHECK(enumerate_graphs(5, true, true).size() == 21);
    CHECK(enumerate_graphs(6, true, true).size() == 112);
    CHECK(enumerate_graphs(3, false, false).size() == 8);

    CHECK_THROWS_AS(enumerate_graphs(0, false, false), TooLarge);
    CHECK_THROWS_AS(enumerate_graphs(9, false, false), TooLarge);
}

TEST_CASE("representatives cover every class exactly once") {
    // Independent dedup of all labeled connected graphs via pairwise
    // isomorphism scans.
    for (int n = 3; n <= 5; ++n) {
        std::vector<Graph> classes;
        enumerate_graphs(n, true, false, [&](const Graph& g) {
            for (const auto& seen : classes)
                if (testutil::brute_isomorphic(seen, g)) return true;
            classes.push_back(g);
            return true;
        });
        auto reps = enumerate_graphs(n, true, true);
        REQUIRE(reps.size() == classes.size());
        for (size_t a = 0; a < reps.size(); ++a)
            for (size_t b = a + 1; b < reps.size(); ++b)
                CHECK_FALSE(testutil::brute_isomorphic(reps[a], reps[b]));
    }
}

TEST_CASE("canonical form is an isomorphism invariant") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        std::vector<Edge> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() & 1) edges.emplace_back(i, j);
        Graph g(n, edges);

        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Edge> relabeled;
        for (auto [u, v] : edges) relabeled.emplace_back(perm[u], perm[v]);
        Graph h(n, relabeled);

        CHECK(canonical_form(g) == canonical_form(h));
    }
}

TEST_CASE("canonical form separates non-isomorphic graphs at small n") {
    for (int n = 2; n <= 5; ++n) {
        auto reps = enumerate_graphs(n, false, true);
        std::set<uint64_t> forms;
        for (const auto& g : reps) forms.insert(canonical_form(g));
        CHECK(forms.size() == reps.size());
    }
}

TEST_CASE("enumeration with a labeled filter") {
    // Filter to triangle-free graphs; counts must match post-filtering.
    auto is_triangle_free = [](const std::array<uint32_t, 8>& adj, int n) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if ((adj[i] >> j & 1u) && (adj[i] & adj[j]) != 0) return false;
        return true;
    };
    std::vector<Graph> filtered;
    enumerate_graphs(
        5, true, true,
        [&](const Graph& g) {
            filtered.push_back(g);
            return true;
        },
        is_triangle_free);

    int expected = 0;
    for (const auto& g : enumerate_graphs(5, true, true)) {
        bool tf = true;
        for (int i = 0; i < 5 && tf; ++i)
            for (int j = i + 1; j < 5 && tf; ++j)
                if (g.has_edge(i, j) && (g.neighbors(i) & g.neighbors(j)) != 0) tf = false;
        expected += tf;
    }
    CHECK(static_cast<int>(filtered.size()) == expected);
}
