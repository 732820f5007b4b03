#pragma once

#include "catspan/decomposition.hpp"
#include "catspan/graph.hpp"

namespace catspan {

// Spanning tree rooted at the vertex with the leftmost interval; every
// parent link strictly decreases left().
struct MonotoneTree {
    TreeEdges tree;
    std::vector<VertexId> parent;      // -1 at root
    std::vector<EdgeId> parent_edge;   // -1 at root
    VertexId root() const { return tree.root; }
};

struct MonotonicityReport {
    bool monotone = false;
    VertexId bad_child = -1;   // first violating link, when not monotone
    VertexId bad_parent = -1;
};

MonotonicityReport is_monotone(const WeightedGraph& g, const TreeEdges& t,
                               const IntervalLayout& layout);

// Left-to-right scan: each vertex introduced by a bag attaches to its
// cheapest neighbor already in the tree (ties to the smallest vertex id).
// Per-vertex choices are independent, so the result is the lightest
// monotone spanning tree.
MonotoneTree lightest_monotone_tree(const WeightedGraph& g, const CaterpillarDecomposition& d,
                                    const IntervalLayout& layout);

// Recursive construction: a monotone leftmost-to-rightmost shortest path,
// then the components of MST minus the path's vertices are hooked onto it at
// their leftmost vertices and handled recursively. Flap vertices attach by
// their cheapest edge into the flap clique.
MonotoneTree recursive_monotone_tree(const WeightedGraph& g, const CaterpillarDecomposition& d,
                                     const IntervalLayout& layout);

}  // namespace catspan
