#pragma once

#include <map>
#include <vector>

#include "catspan/decomposition.hpp"
#include "catspan/graph.hpp"

namespace catspan {

// Record of one transform, enough to map a spanner of the transformed graph
// back to the graph the transform was applied to.
struct ReductionTrace {
    std::vector<EdgeId> contracted_zero_edges;               // S
    std::map<EdgeId, std::vector<EdgeId>> completion_paths;  // added edge -> realizing path
    std::vector<VertexId> vertex_to_original;                // per transformed vertex
    std::vector<EdgeId> edge_to_original;                    // per transformed edge; -1 for S edges
    int transformed_edge_count = 0;
};

struct DegreeReduceResult {
    WeightedGraph graph;
    CaterpillarDecomposition decomposition;
    ReductionTrace trace;
};

// Insert replacer bags after every full group of `width` original bags,
// swapping each bag vertex for a zero-weight-connected copy. Keeps the
// decomposition nice; spine width may grow by one (recorded in the output
// width). Every output vertex sits in at most 3k+3 spine bags.
DegreeReduceResult degree_reduce(const WeightedGraph& g, const CaterpillarDecomposition& d);

struct CompleteResult {
    WeightedGraph graph;
    ReductionTrace trace;
};

// Add every edge allowed by the decomposition: spine pairs with intersecting
// intervals and pairs inside one flap clique. New edges get the shortest path
// distance as weight, so the distance table is unchanged.
CompleteResult complete(const WeightedGraph& g, const IntervalLayout& layout,
                        const CaterpillarDecomposition& d);

// Map a spanner edge set back through one trace: completion edges are
// replaced by their recorded paths, copy edges are translated to their
// originals and the zero-weight S edges vanish with the contraction.
std::vector<EdgeId> lift_spanner(const std::vector<EdgeId>& spanner_edges,
                                 const ReductionTrace& trace);

}  // namespace catspan
