#pragma once

#include <string>
#include <vector>

#include "catspan/decomposition.hpp"
#include "catspan/graph.hpp"
#include "catspan/monotone_tree.hpp"

namespace catspan {

// One charging move: `edge` pushes `amount` units of charge onto every edge
// of `path`; edge + path must form a simple cycle.
struct DetourMove {
    EdgeId edge = -1;
    std::vector<EdgeId> path;
    Rational amount;
};

struct ChargingScheme {
    TreeEdges tree;
    std::vector<DetourMove> moves;
};

struct SchemeViolation {
    std::string condition;
    std::string witness;
};

// Conditions checked: (1) Out(e) >= 1 for non-tree e, (2) Net(e) <= 0 for
// non-tree e, plus every move's detour shape. value = max tree Net, floored
// at zero.
struct SchemeReport {
    bool valid = false;
    Rational value;
    std::vector<SchemeViolation> violations;
};

SchemeReport verify_scheme(const WeightedGraph& g, const ChargingScheme& s,
                           const std::vector<char>* alive = nullptr);

// Conditions (4) only non-tree edges charge and (5) the charge relation has a
// topological order (returned; otherwise a witness cycle).
struct AcyclicReport {
    bool acyclic = false;
    std::vector<EdgeId> order;
    std::vector<EdgeId> cycle;
    std::vector<SchemeViolation> violations;
};

AcyclicReport verify_acyclic(const WeightedGraph& g, const ChargingScheme& s,
                             const std::vector<char>* alive = nullptr);

// Path algebra of composing two detours: m2.edge is replaced in m1.path by
// m2.path and the walk reduced to a simple path. The returned amount is zero;
// amounts are the caller's concern.
DetourMove shortcut(const WeightedGraph& g, const DetourMove& m1, const DetourMove& m2);

// Rewire all charges through non-tree edge e onto shortcuts and drop e, as in
// the scheme-preservation argument. Requires a valid acyclic scheme; the
// result is valid and acyclic on g - e with no larger value.
ChargingScheme eliminate_edge(const WeightedGraph& g, const ChargingScheme& s, EdgeId e,
                              const std::vector<char>* alive = nullptr);

// Forest over edge ids: tree edges are roots; a non-tree edge {j,k} with
// left(j) < left(k) hangs under {i,j} where i is k's tree parent. Parent
// links strictly decrease the left endpoint of the intersection interval.
struct T2Forest {
    std::vector<EdgeId> parent;                           // -1 for tree-edge nodes
    std::vector<std::vector<EdgeId>> children;            // ordered by left(I)
    std::vector<std::pair<Rational, Rational>> interval;  // I_u cap I_v per edge
    std::vector<EdgeId> roots;                            // tree-edge nodes
};

T2Forest build_t2_forest(const WeightedGraph& g, const MonotoneTree& t,
                         const IntervalLayout& layout);

// Euler-tour triangle-move scheme covering the spine (non-flap) edges.
ChargingScheme build_kpath_scheme(const WeightedGraph& g, const MonotoneTree& t,
                                  const IntervalLayout& layout);

// Per-flap scheme: local triangle moves inside each flap clique; components
// whose charge would land on a non-tree spine edge instead escape along the
// tree path between their root edge's endpoints.
ChargingScheme build_flap_scheme(const WeightedGraph& g, const MonotoneTree& t,
                                 const CaterpillarDecomposition& d, const IntervalLayout& layout);

// Union of two schemes against the same tree.
ChargingScheme merge_schemes(const ChargingScheme& a, const ChargingScheme& b);

}  // namespace catspan
