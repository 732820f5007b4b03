#include <doctest.h>

#include <algorithm>

#include "catspan/graph.hpp"
#include "catspan/rng.hpp"
#include "oracles.hpp"

using namespace catspan;

TEST_CASE("shortest_path on a path graph") {
    WeightedGraph g(3);
    EdgeId ab = g.add_edge(0, 1, Rational(1));
    EdgeId bc = g.add_edge(1, 2, Rational(2));
    auto r = shortest_path(g, 0, 2);
    REQUIRE(r.has_value());
    CHECK(r->distance == Rational(3));
    CHECK(r->path == std::vector<EdgeId>{ab, bc});

    auto self = shortest_path(g, 0, 0);
    REQUIRE(self.has_value());
    CHECK(self->distance == Rational(0));
    CHECK(self->path.empty());
}

TEST_CASE("shortest_path prefers the cheap two-hop route") {
    WeightedGraph g(3);
    g.add_edge(0, 1, Rational(5));   // ab
    g.add_edge(1, 2, Rational(1));   // bc
    EdgeId ac = g.add_edge(0, 2, Rational(1));
    auto r = shortest_path(g, 0, 1);
    REQUIRE(r.has_value());
    CHECK(r->distance == Rational(2));
    CHECK(r->path == std::vector<EdgeId>{ac, 1});
}

TEST_CASE("shortest_path reports unreachable") {
    WeightedGraph g(3);
    g.add_edge(0, 1, Rational(1));
    CHECK_FALSE(shortest_path(g, 0, 2).has_value());
}

TEST_CASE("all_pairs_distances basics") {
    WeightedGraph g1(1);
    auto t1 = all_pairs_distances(g1);
    CHECK(t1.at(0, 0) == Rational(0));

    WeightedGraph g2(2);
    g2.add_edge(0, 1, Rational(3));
    auto t2 = all_pairs_distances(g2);
    CHECK(*t2.at(0, 1) == Rational(3));
    CHECK(*t2.at(1, 0) == Rational(3));
    CHECK(*t2.at(0, 0) == Rational(0));
}

TEST_CASE("all_pairs_distances matches Floyd-Warshall on random graphs") {
    SplitMix64 rng(11);
    for (int iter = 0; iter < 40; iter++) {
        int n = 2 + int(rng.next_below(7));
        auto g = oracle::random_connected_graph(rng, n, int(rng.next_below(8)), 9);
        auto table = all_pairs_distances(g);
        auto want = oracle::floyd_warshall(g);
        for (VertexId u = 0; u < n; u++)
            for (VertexId v = 0; v < n; v++) {
                REQUIRE(table.at(u, v).has_value() == want[u][v].has_value());
                if (want[u][v]) CHECK(*table.at(u, v) == *want[u][v]);
            }
    }
}

TEST_CASE("distance table triangle inequality and symmetry") {
    SplitMix64 rng(12);
    auto g = oracle::random_connected_graph(rng, 8, 10, 50);
    auto t = all_pairs_distances(g);
    for (VertexId u = 0; u < 8; u++)
        for (VertexId v = 0; v < 8; v++) {
            CHECK(*t.at(u, v) == *t.at(v, u));
            CHECK_FALSE(t.at(u, v)->is_negative());
            for (VertexId x = 0; x < 8; x++)
                CHECK(*t.at(u, v) <= *t.at(u, x) + *t.at(x, v));
        }
}

TEST_CASE("shortest_path never beats an explicit path") {
    SplitMix64 rng(13);
    for (int iter = 0; iter < 30; iter++) {
        auto g = oracle::random_connected_graph(rng, 7, 6, 20);
        // random walk of a few steps, then compare with shortest distance
        VertexId u = VertexId(rng.next_below(7));
        VertexId cur = u;
        Rational walk_w(0);
        for (int s = 0; s < 5; s++) {
            auto inc = g.incident(cur);
            if (inc.empty()) break;
            EdgeId e = inc[size_t(rng.next_below(inc.size()))];
            walk_w += g.edge(e).weight;
            cur = g.other_end(e, cur);
        }
        auto r = shortest_path(g, u, cur);
        REQUIRE(r.has_value());
        CHECK(r->distance <= walk_w);
        // path realizes the distance
        Rational sum(0);
        for (EdgeId e : r->path) sum += g.edge(e).weight;
        CHECK(sum == r->distance);
    }
}

TEST_CASE("minimum_spanning_tree trivial cases") {
    WeightedGraph tree(4);
    tree.add_edge(0, 1, Rational(2));
    tree.add_edge(1, 2, Rational(5));
    tree.add_edge(1, 3, Rational(1));
    auto t = minimum_spanning_tree(tree);
    CHECK(t.edges == std::vector<EdgeId>{0, 1, 2});

    WeightedGraph tri(3);
    tri.add_edge(0, 1, Rational(1));
    tri.add_edge(1, 2, Rational(1));
    tri.add_edge(0, 2, Rational(2));
    auto t2 = minimum_spanning_tree(tri);
    CHECK(t2.edges == std::vector<EdgeId>{0, 1});
}

TEST_CASE("minimum_spanning_tree rejects disconnected graphs") {
    WeightedGraph g(3);
    g.add_edge(0, 1, Rational(1));
    CHECK_THROWS_WITH_AS(minimum_spanning_tree(g), "graph not connected", std::runtime_error);
}

TEST_CASE("minimum_spanning_tree weight matches enumeration") {
    SplitMix64 rng(14);
    for (int iter = 0; iter < 25; iter++) {
        int n = 3 + int(rng.next_below(5));
        auto g = oracle::random_connected_graph(rng, n, int(rng.next_below(6)), 30);
        auto t = minimum_spanning_tree(g);
        auto want = oracle::brute_mst_weight(g);
        REQUIRE(want.has_value());
        CHECK(subgraph_weight(g, t.edges) == *want);
    }
}

TEST_CASE("mst weight invariant under edge id permutation") {
    SplitMix64 rng(15);
    auto g = oracle::random_connected_graph(rng, 7, 8, 12);
    auto w1 = subgraph_weight(g, minimum_spanning_tree(g).edges);
    // rebuild with edges inserted in reverse order
    WeightedGraph g2(7);
    for (EdgeId e = g.edge_count() - 1; e >= 0; e--)
        g2.add_edge(g.edge(e).u, g.edge(e).v, g.edge(e).weight);
    auto w2 = subgraph_weight(g2, minimum_spanning_tree(g2).edges);
    CHECK(w1 == w2);
}

TEST_CASE("subgraph_weight") {
    WeightedGraph tri(3);
    tri.add_edge(0, 1, Rational(1));
    tri.add_edge(1, 2, Rational(1));
    tri.add_edge(0, 2, Rational(2));
    CHECK(subgraph_weight(tri, std::vector<EdgeId>{}) == Rational(0));
    CHECK(subgraph_weight(tri, std::vector<EdgeId>{0, 1, 2}) == Rational(4));
    std::vector<EdgeId> bad{7};
    CHECK_THROWS_AS(subgraph_weight(tri, bad), std::invalid_argument);
}

TEST_CASE("graph rejects malformed edges") {
    WeightedGraph g(2);
    CHECK_THROWS_AS(g.add_edge(0, 0, Rational(1)), std::invalid_argument);
    g.add_edge(0, 1, Rational(1));
    CHECK_THROWS_AS(g.add_edge(1, 0, Rational(2)), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 5, Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 1, Rational(-1, 2)), std::invalid_argument);
}
