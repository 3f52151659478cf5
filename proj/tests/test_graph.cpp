#include <random>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "skewrank/enumerate.hpp"
#include "skewrank/graph.hpp"
#include "test_util.hpp"

using namespace skewrank;

namespace {

Graph bowtie() { return Graph(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}}); }

std::mt19937_64 rng(20240817);

Graph random_graph(int n, double density = 0.5) {
    std::vector<Edge> edges;
    std::uniform_real_distribution<double> coin(0, 1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng) < density) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

}  // namespace

TEST_CASE("graph construction validates invariants") {
    CHECK_THROWS_AS(Graph(3, {{0, 0}}), ValidationError);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), OutOfRange);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), ValidationError);
    Graph g(3, {{2, 0}});  // endpoints normalized
    CHECK(g.has_edge(0, 2));
    CHECK(g.edges() == std::vector<Edge>{{0, 2}});
}

TEST_CASE("components") {
    CHECK(components(Graph(3)) ==
          std::vector<std::vector<int>>{{0}, {1}, {2}});
    CHECK(components(path_graph(3)) == std::vector<std::vector<int>>{{0, 1, 2}});
    Graph g(3, {{0, 1}});
    CHECK(components(g) == std::vector<std::vector<int>>{{0, 1}, {2}});
}

TEST_CASE("cut vertices") {
    CHECK(cut_vertices(path_graph(3)) == std::vector<int>{1});
    CHECK(cut_vertices(complete_graph(4)).empty());
    CHECK(cut_vertices(bowtie()) == std::vector<int>{0});
}

TEST_CASE("cut vertices agree with deletion counting") {
    for (int n = 2; n <= 6; ++n) {
        for (int trial = 0; trial < 40; ++trial) {
            Graph g = random_graph(n);
            auto cuts = cut_vertices(g);
            const int base = static_cast<int>(components(g).size());
            for (int v = 0; v < n; ++v) {
                const bool listed = std::find(cuts.begin(), cuts.end(), v) != cuts.end();
                const int after = static_cast<int>(components(delete_vertex(g, v).graph).size());
                CHECK(listed == (after > base));
            }
        }
    }
}

TEST_CASE("branch decomposition") {
    auto dec = branches_at(bowtie(), 0);
    REQUIRE(dec.branches.size() == 2);
    for (const auto& br : dec.branches) {
        CHECK(br.graph == complete_graph(3));
        CHECK(br.vertex_map.front() == 0);
    }

    auto p5 = branches_at(path_graph(5), 2);
    REQUIRE(p5.branches.size() == 2);
    CHECK(p5.branches[0].graph == path_graph(3));
    CHECK(p5.branches[1].graph == path_graph(3));

    Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
    auto st = branches_at(star, 0);
    REQUIRE(st.branches.size() == 3);
    for (const auto& br : st.branches) CHECK(br.graph == complete_graph(2));

    CHECK_THROWS_AS(branches_at(complete_graph(4), 0), NotACutVertex);
    CHECK_THROWS_AS(branches_at(Graph(3, {{0, 1}}), 0), Disconnected);
}

TEST_CASE("branch reassembly invariants") {
    for (int trial = 0; trial < 60; ++trial) {
        Graph g = random_graph(6, 0.4);
        if (!is_connected(g)) continue;
        for (int v : cut_vertices(g)) {
            auto dec = branches_at(g, v);
            REQUIRE(dec.branches.size() >= 2);
            std::set<Edge> all_edges;
            for (size_t a = 0; a < dec.branches.size(); ++a) {
                const auto& br = dec.branches[a];
                // branch minus v is connected
                int local_v = static_cast<int>(std::lower_bound(br.vertex_map.begin(),
                                                                br.vertex_map.end(), v) -
                                               br.vertex_map.begin());
                CHECK(is_connected(delete_vertex(br.graph, local_v).graph));
                for (auto [x, y] : br.graph.edges())
                    all_edges.insert({std::min(br.vertex_map[x], br.vertex_map[y]),
                                      std::max(br.vertex_map[x], br.vertex_map[y])});
                for (size_t b = a + 1; b < dec.branches.size(); ++b) {
                    std::vector<int> inter;
                    std::set_intersection(br.vertex_map.begin(), br.vertex_map.end(),
                                          dec.branches[b].vertex_map.begin(),
                                          dec.branches[b].vertex_map.end(),
                                          std::back_inserter(inter));
                    CHECK(inter == std::vector<int>{v});
                }
            }
            CHECK(std::vector<Edge>(all_edges.begin(), all_edges.end()) == g.edges());
        }
    }
}

TEST_CASE("complete multipartite recognition") {
    auto c4 = is_complete_multipartite(cycle_graph(4));
    REQUIRE(c4.has_value());
    CHECK(c4->parts == std::vector<std::vector<int>>{{0, 2}, {1, 3}});

    auto k3 = is_complete_multipartite(complete_graph(3));
    REQUIRE(k3.has_value());
    CHECK(k3->parts.size() == 3);

    CHECK_FALSE(is_complete_multipartite(path_graph(4)).has_value());
    CHECK_FALSE(is_complete_multipartite(Graph(3)).has_value());  // edgeless
    CHECK_FALSE(is_complete_multipartite(Graph(1)).has_value());
    CHECK(is_complete_multipartite(complete_multipartite({2, 3, 1})).has_value());
}

TEST_CASE("complete multipartite matches an independent characterization") {
    // Independent route: a graph with at least one edge is complete
    // multipartite exactly when every non-adjacent pair has the same
    // neighborhood (the parts are then the neighborhood classes).
    for (int n = 2; n <= 6; ++n) {
        for (int trial = 0; trial < 60; ++trial) {
            Graph g = random_graph(n);
            bool expected = g.edge_count() > 0;
            for (int u = 0; u < n && expected; ++u)
                for (int v = u + 1; v < n && expected; ++v)
                    if (!g.has_edge(u, v) && g.neighbors(u) != g.neighbors(v))
                        expected = false;
            CHECK(is_complete_multipartite(g).has_value() == expected);
        }
    }
}

TEST_CASE("even cycle detection") {
    CHECK_FALSE(has_even_cycle(cycle_graph(5)));
    CHECK(has_even_cycle(cycle_graph(4)));
    Graph two_triangles(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(has_even_cycle(two_triangles));
    CHECK_FALSE(has_even_cycle(bowtie()));
    CHECK_FALSE(has_even_cycle(path_graph(6)));
}

TEST_CASE("even cycle detection agrees with cycle enumeration") {
    // exhaustive over every connected graph with up to 7 vertices
    long checked = 0;
    for (int n = 3; n <= 7; ++n)
        enumerate_graphs(n, true, true, [&](const Graph& g) {
            ++checked;
            CHECK(has_even_cycle(g) == testutil::brute_has_even_cycle(g));
            return true;
        });
    CHECK(checked == 2 + 6 + 21 + 112 + 853);
    // plus disconnected spot checks
    for (int trial = 0; trial < 60; ++trial) {
        Graph g = random_graph(7, 0.3);
        CHECK(has_even_cycle(g) == testutil::brute_has_even_cycle(g));
    }
}

TEST_CASE("path powers") {
    CHECK(path_power(5, 1) == path_graph(5));
    CHECK(path_power(4, 3) == complete_graph(4));
    CHECK(path_power(5, 2) ==
          Graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 2}, {1, 3}, {2, 4}}));
    CHECK_THROWS_AS(path_power(0, 1), BadParameters);
    CHECK_THROWS_AS(path_power(3, 0), BadParameters);
}

TEST_CASE("induced subgraphs") {
    CHECK(induced_subgraph(complete_graph(4), {0, 2, 3}).graph == complete_graph(3));
    CHECK(induced_subgraph(path_graph(5), {0, 1, 2}).graph == path_graph(3));
    CHECK(induced_subgraph(cycle_graph(5), {0, 1, 2, 3}).graph == path_graph(4));
    CHECK_THROWS_AS(induced_subgraph(path_graph(3), {0, 5}), OutOfRange);
    auto sub = induced_subgraph(path_graph(5), {4, 2, 3});
    CHECK(sub.vertex_map == std::vector<int>{2, 3, 4});
    CHECK(sub.graph == path_graph(3));
}
