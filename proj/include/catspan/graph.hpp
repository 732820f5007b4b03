#pragma once

#include <optional>
#include <span>
#include <vector>

#include "catspan/rational.hpp"

namespace catspan {

using VertexId = int;
using EdgeId = int;

struct Edge {
    VertexId u;
    VertexId v;
    Rational weight;
};

// Simple undirected graph with nonnegative weights. Vertex ids are dense
// 0..n-1; edge ids are dense in insertion order. No self-loops, no parallel
// edges.
class WeightedGraph {
public:
    WeightedGraph() = default;
    explicit WeightedGraph(int n) : adj_(n) {}

    int vertex_count() const { return int(adj_.size()); }
    int edge_count() const { return int(edges_.size()); }

    VertexId add_vertex() {
        adj_.emplace_back();
        return VertexId(adj_.size() - 1);
    }

    EdgeId add_edge(VertexId u, VertexId v, const Rational& w);

    const Edge& edge(EdgeId e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }

    VertexId other_end(EdgeId e, VertexId from) const {
        const Edge& ed = edges_[e];
        return ed.u == from ? ed.v : ed.u;
    }

    std::span<const EdgeId> incident(VertexId v) const { return adj_[v]; }

    std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> adj_;
};

struct TreeEdges {
    std::vector<EdgeId> edges;  // exactly n-1 edge ids, acyclic, spanning
    VertexId root = 0;
};

struct PathResult {
    Rational distance;
    std::vector<EdgeId> path;  // edge ids from u to v; empty when u == v
};

// Shortest path with a deterministic tie-break: among simple shortest paths,
// the lexicographically smallest edge-id sequence. Returns nullopt when v is
// unreachable from u.
std::optional<PathResult> shortest_path(const WeightedGraph& g, VertexId u, VertexId v);

// Single-source distances. `alive` restricts the usable edges (nullptr = all);
// `cutoff` stops expanding labels strictly greater than the bound.
std::vector<std::optional<Rational>> sssp_distances(const WeightedGraph& g, VertexId src,
                                                    const std::vector<char>* alive = nullptr,
                                                    const Rational* cutoff = nullptr);

// Distance plus the minimum hop count among shortest paths; the hop count
// makes path reconstruction well-founded even across zero-weight edges.
struct DistHops {
    Rational dist;
    int hops;
};

std::vector<std::optional<DistHops>> sssp_dist_hops(const WeightedGraph& g, VertexId src,
                                                    const std::vector<char>* alive = nullptr);

// Rebuild the deterministic u->v path from a distance/hops-to-v array (as
// produced by sssp_dist_hops(g, v)): every step decreases the hop count,
// ties broken by the smallest edge id.
std::vector<EdgeId> reconstruct_path(const WeightedGraph& g, VertexId u, VertexId v,
                                     const std::vector<std::optional<DistHops>>& to_v);

class DistanceTable {
public:
    DistanceTable() = default;
    DistanceTable(int n) : n_(n), d_(size_t(n) * n) {}

    int size() const { return n_; }
    std::optional<Rational>& at(VertexId u, VertexId v) { return d_[size_t(u) * n_ + v]; }
    const std::optional<Rational>& at(VertexId u, VertexId v) const {
        return d_[size_t(u) * n_ + v];
    }

    bool operator==(const DistanceTable& o) const { return n_ == o.n_ && d_ == o.d_; }

private:
    int n_ = 0;
    std::vector<std::optional<Rational>> d_;
};

DistanceTable all_pairs_distances(const WeightedGraph& g,
                                  const std::vector<char>* alive = nullptr);

// Kruskal with (weight, edge id) order; throws if g is not connected.
TreeEdges minimum_spanning_tree(const WeightedGraph& g);

Rational subgraph_weight(const WeightedGraph& g, std::span<const EdgeId> edges);

bool is_connected(const WeightedGraph& g);

// Component labels after removing `blocked` vertices (label -1 for blocked).
std::vector<int> components_without(const WeightedGraph& g, const std::vector<char>& blocked);

// Parent vertex/edge arrays for a spanning tree rooted at tree.root.
struct RootedTree {
    std::vector<VertexId> parent;       // -1 at root
    std::vector<EdgeId> parent_edge;    // -1 at root
    std::vector<VertexId> order;        // root-first traversal order
};
RootedTree root_tree(const WeightedGraph& g, const TreeEdges& tree);

}  // namespace catspan
