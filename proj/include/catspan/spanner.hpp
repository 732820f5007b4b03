#pragma once

#include <string>
#include <vector>

#include "catspan/charging.hpp"
#include "catspan/decomposition.hpp"
#include "catspan/graph.hpp"
#include "catspan/monotone_tree.hpp"
#include "catspan/reductions.hpp"

namespace catspan {

// Greedy spanner with forced tree edges: scan non-tree edges in non-decreasing
// weight (ties by id), keep e iff (1+eps) * w(e) < current spanner distance.
std::vector<EdgeId> greedy_spanner(const WeightedGraph& g, const TreeEdges& t,
                                   const Rational& epsilon);

struct SpannerCertificate {
    std::vector<EdgeId> spanner;
    Rational epsilon;
    Rational max_stretch;  // max over pairs of d_spanner / d_graph
    VertexId witness_u = -1, witness_v = -1;
    Rational spanner_weight;
    Rational tree_weight;
    Rational mst_weight;
    Rational scheme_value;
    bool scheme_valid = false;
    bool scheme_acyclic = false;
    bool stretch_ok = false;  // max_stretch <= 1 + eps
    bool bound_ok = false;    // w(spanner) <= (1 + v/eps) * w(tree)
    bool dual_ok = false;     // eps * w(spanner - tree) <= v * w(tree)
    bool certified = false;
    std::string reason;
};

SpannerCertificate certify(const WeightedGraph& g, const TreeEdges& t,
                           const std::vector<EdgeId>& spanner, const Rational& epsilon,
                           const ChargingScheme& scheme);

// Everything that does not depend on epsilon: reductions, layout, monotone
// tree, charging scheme.
struct PreparedInstance {
    CaterpillarDecomposition nice;
    DegreeReduceResult reduced;
    IntervalLayout layout;
    CompleteResult completed;
    MonotoneTree tree;
    ChargingScheme scheme;
    SchemeReport scheme_report;
    AcyclicReport acyclic_report;
};

PreparedInstance prepare_instance(const WeightedGraph& g, const CaterpillarDecomposition& d);

struct PipelineResult {
    SpannerCertificate cert;      // on the completed graph
    std::vector<EdgeId> lifted;   // edge ids of the input graph
    Rational lifted_weight;
    Rational original_mst;
    Rational lightness;           // lifted_weight / original_mst
    Rational lifted_stretch;      // on the input graph
    bool lifted_stretch_ok = false;
    int completed_vertices = 0;
    int completed_edges = 0;
};

PipelineResult run_pipeline(const WeightedGraph& g, const PreparedInstance& prep,
                            const Rational& epsilon);

PipelineResult pipeline(const WeightedGraph& g, const CaterpillarDecomposition& d,
                        const Rational& epsilon);

}  // namespace catspan
