// Independent oracles used by the tests. These deliberately take the dumbest
// correct route (Floyd-Warshall, subset enumeration) so they share no code
// with the implementations they check.
#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "catspan/graph.hpp"
#include "catspan/rng.hpp"

namespace oracle {

using catspan::EdgeId;
using catspan::Rational;
using catspan::VertexId;
using catspan::WeightedGraph;

inline std::vector<std::vector<std::optional<Rational>>> floyd_warshall(const WeightedGraph& g) {
    int n = g.vertex_count();
    std::vector<std::vector<std::optional<Rational>>> d(n, std::vector<std::optional<Rational>>(n));
    for (int i = 0; i < n; i++) d[i][i] = Rational(0);
    for (EdgeId e = 0; e < g.edge_count(); e++) {
        const auto& ed = g.edge(e);
        if (!d[ed.u][ed.v] || ed.weight < *d[ed.u][ed.v]) {
            d[ed.u][ed.v] = ed.weight;
            d[ed.v][ed.u] = ed.weight;
        }
    }
    for (int m = 0; m < n; m++)
        for (int i = 0; i < n; i++) {
            if (!d[i][m]) continue;
            for (int j = 0; j < n; j++) {
                if (!d[m][j]) continue;
                Rational via = *d[i][m] + *d[m][j];
                if (!d[i][j] || via < *d[i][j]) d[i][j] = via;
            }
        }
    return d;
}

// minimum spanning tree weight by enumerating all (n-1)-subsets of edges
inline std::optional<Rational> brute_mst_weight(const WeightedGraph& g) {
    int n = g.vertex_count();
    int m = g.edge_count();
    if (n - 1 > m) return std::nullopt;
    std::vector<int> pick(n - 1);
    std::optional<Rational> best;
    // iterate over combinations
    for (int i = 0; i < n - 1; i++) pick[i] = i;
    auto spanning = [&]() {
        std::vector<int> parent(n);
        for (int i = 0; i < n; i++) parent[i] = i;
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        int merges = 0;
        for (int idx : pick) {
            int a = find(g.edge(idx).u), b = find(g.edge(idx).v);
            if (a != b) {
                parent[a] = b;
                merges++;
            }
        }
        return merges == n - 1;
    };
    while (true) {
        if (spanning()) {
            Rational w(0);
            for (int idx : pick) w += g.edge(idx).weight;
            if (!best || w < *best) best = w;
        }
        int i = n - 2;
        while (i >= 0 && pick[i] == m - (n - 1) + i) i--;
        if (i < 0) break;
        pick[i]++;
        for (int j = i + 1; j < n - 1; j++) pick[j] = pick[j - 1] + 1;
    }
    return best;
}

// connected random graph on n vertices with integer weights in [1, maxw]
inline WeightedGraph random_connected_graph(catspan::SplitMix64& rng, int n, int extra_edges,
                                            std::int64_t maxw) {
    WeightedGraph g(n);
    for (VertexId v = 1; v < n; v++) {
        VertexId u = VertexId(rng.next_below(std::uint64_t(v)));
        g.add_edge(u, v, Rational(1 + std::int64_t(rng.next_below(std::uint64_t(maxw)))));
    }
    for (int i = 0; i < extra_edges; i++) {
        VertexId u = VertexId(rng.next_below(std::uint64_t(n)));
        VertexId v = VertexId(rng.next_below(std::uint64_t(n)));
        if (u == v || g.find_edge(u, v)) continue;
        g.add_edge(u, v, Rational(1 + std::int64_t(rng.next_below(std::uint64_t(maxw)))));
    }
    return g;
}

}  // namespace oracle
