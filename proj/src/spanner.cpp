#include "catspan/spanner.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace catspan {

std::vector<EdgeId> greedy_spanner(const WeightedGraph& g, const TreeEdges& t,
                                   const Rational& epsilon) {
    if (!(Rational(0) < epsilon)) throw std::invalid_argument("greedy_spanner: epsilon must be positive");
    root_tree(g, t);  // throws unless t spans g

    std::vector<char> alive(g.edge_count(), 0);
    for (EdgeId e : t.edges) alive[e] = 1;

    std::vector<EdgeId> candidates;
    for (EdgeId e = 0; e < g.edge_count(); e++)
        if (!alive[e]) candidates.push_back(e);
    std::sort(candidates.begin(), candidates.end(), [&](EdgeId a, EdgeId b) {
        if (g.edge(a).weight != g.edge(b).weight) return g.edge(a).weight < g.edge(b).weight;
        return a < b;
    });

    Rational one_plus = Rational(1) + epsilon;
    for (EdgeId e : candidates) {
        Rational bound = one_plus * g.edge(e).weight;
        auto dist = sssp_distances(g, g.edge(e).u, &alive, &bound);
        auto& dv = dist[g.edge(e).v];
        if (!dv || bound < *dv) alive[e] = 1;
    }

    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < g.edge_count(); e++)
        if (alive[e]) out.push_back(e);
    return out;
}

SpannerCertificate certify(const WeightedGraph& g, const TreeEdges& t,
                           const std::vector<EdgeId>& spanner, const Rational& epsilon,
                           const ChargingScheme& scheme) {
    SpannerCertificate c;
    c.spanner = spanner;
    c.epsilon = epsilon;

    std::vector<char> in_spanner(g.edge_count(), 0);
    for (EdgeId e : spanner) {
        if (e < 0 || e >= g.edge_count()) throw std::invalid_argument("certify: unknown spanner edge");
        in_spanner[e] = 1;
    }
    for (EdgeId e : t.edges)
        if (!in_spanner[e]) throw std::invalid_argument("certify: spanner does not contain the tree");

    c.spanner_weight = subgraph_weight(g, spanner);
    c.tree_weight = subgraph_weight(g, t.edges);
    c.mst_weight = subgraph_weight(g, minimum_spanning_tree(g).edges);

    int n = g.vertex_count();
    auto dg = all_pairs_distances(g);
    auto ds = all_pairs_distances(g, &in_spanner);
    c.max_stretch = Rational(1);
    c.stretch_ok = true;
    for (VertexId u = 0; u < n; u++)
        for (VertexId v = u + 1; v < n; v++) {
            if (!dg.at(u, v)) continue;
            if (!ds.at(u, v)) {
                c.stretch_ok = false;
                c.witness_u = u;
                c.witness_v = v;
                c.reason = "pair disconnected in spanner";
                continue;
            }
            if (dg.at(u, v)->is_zero()) {
                if (!ds.at(u, v)->is_zero()) {
                    c.stretch_ok = false;
                    c.witness_u = u;
                    c.witness_v = v;
                    c.reason = "zero distance stretched";
                }
                continue;
            }
            Rational ratio = *ds.at(u, v) / *dg.at(u, v);
            if (c.max_stretch < ratio) {
                c.max_stretch = ratio;
                c.witness_u = u;
                c.witness_v = v;
            }
        }
    if (c.stretch_ok) c.stretch_ok = c.max_stretch <= Rational(1) + epsilon;

    auto sr = verify_scheme(g, scheme);
    auto ar = verify_acyclic(g, scheme);
    c.scheme_valid = sr.valid;
    c.scheme_acyclic = ar.acyclic;
    c.scheme_value = sr.value;
    if (!sr.valid) c.reason = "charging scheme invalid";
    else if (!ar.acyclic) c.reason = "charging scheme not acyclic";

    c.bound_ok = c.spanner_weight <= (Rational(1) + c.scheme_value / epsilon) * c.tree_weight;
    c.dual_ok = epsilon * (c.spanner_weight - c.tree_weight) <= c.scheme_value * c.tree_weight;
    c.certified = c.stretch_ok && c.scheme_valid && c.scheme_acyclic && c.bound_ok && c.dual_ok;
    if (c.certified) c.reason.clear();
    return c;
}

namespace {

template <typename F>
auto stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const std::exception& ex) {
        throw std::runtime_error(std::string(name) + ": " + ex.what());
    }
}

}  // namespace

PreparedInstance prepare_instance(const WeightedGraph& g, const CaterpillarDecomposition& d) {
    PreparedInstance p;
    stage("validate", [&] {
        if (!is_connected(g)) throw std::invalid_argument("graph not connected");
        auto rep = validate(g, d);
        if (!rep.ok()) throw std::invalid_argument("invalid decomposition: " + rep.to_string());
        return 0;
    });
    p.nice = stage("nicify", [&] { return nicify(d); });
    p.reduced = stage("degree_reduce", [&] { return degree_reduce(g, p.nice); });
    p.layout = stage("interval_layout", [&] { return interval_layout(p.reduced.decomposition); });
    p.completed = stage("complete", [&] {
        return complete(p.reduced.graph, p.layout, p.reduced.decomposition);
    });
    p.tree = stage("lightest_monotone_tree", [&] {
        return lightest_monotone_tree(p.completed.graph, p.reduced.decomposition, p.layout);
    });
    p.scheme = stage("charging_scheme", [&] {
        auto kpath = build_kpath_scheme(p.completed.graph, p.tree, p.layout);
        auto flap = build_flap_scheme(p.completed.graph, p.tree, p.reduced.decomposition, p.layout);
        return merge_schemes(kpath, flap);
    });
    p.scheme_report = verify_scheme(p.completed.graph, p.scheme);
    p.acyclic_report = verify_acyclic(p.completed.graph, p.scheme);
    return p;
}

PipelineResult run_pipeline(const WeightedGraph& g, const PreparedInstance& prep,
                            const Rational& epsilon) {
    PipelineResult r;
    r.completed_vertices = prep.completed.graph.vertex_count();
    r.completed_edges = prep.completed.graph.edge_count();

    auto spanner = stage("greedy_spanner", [&] {
        return greedy_spanner(prep.completed.graph, prep.tree.tree, epsilon);
    });
    r.cert = stage("certify", [&] {
        return certify(prep.completed.graph, prep.tree.tree, spanner, epsilon, prep.scheme);
    });
    auto in_reduced = stage("lift_completion", [&] { return lift_spanner(spanner, prep.completed.trace); });
    r.lifted = stage("lift_degree", [&] { return lift_spanner(in_reduced, prep.reduced.trace); });

    r.lifted_weight = subgraph_weight(g, r.lifted);
    r.original_mst = subgraph_weight(g, minimum_spanning_tree(g).edges);
    r.lightness = r.original_mst.is_zero() ? Rational(0) : r.lifted_weight / r.original_mst;

    // stretch of the lifted spanner, on the input graph
    std::vector<char> alive(g.edge_count(), 0);
    for (EdgeId e : r.lifted) alive[e] = 1;
    auto dg = all_pairs_distances(g);
    auto ds = all_pairs_distances(g, &alive);
    r.lifted_stretch = Rational(1);
    r.lifted_stretch_ok = true;
    int n = g.vertex_count();
    for (VertexId u = 0; u < n && r.lifted_stretch_ok; u++)
        for (VertexId v = u + 1; v < n; v++) {
            if (!dg.at(u, v)) continue;
            if (!ds.at(u, v)) {
                r.lifted_stretch_ok = false;
                break;
            }
            if (dg.at(u, v)->is_zero()) {
                if (!ds.at(u, v)->is_zero()) {
                    r.lifted_stretch_ok = false;
                    break;
                }
                continue;
            }
            Rational ratio = *ds.at(u, v) / *dg.at(u, v);
            if (r.lifted_stretch < ratio) r.lifted_stretch = ratio;
        }
    if (r.lifted_stretch_ok) r.lifted_stretch_ok = r.lifted_stretch <= Rational(1) + epsilon;
    return r;
}

PipelineResult pipeline(const WeightedGraph& g, const CaterpillarDecomposition& d,
                        const Rational& epsilon) {
    if (!(Rational(0) < epsilon)) throw std::invalid_argument("pipeline: epsilon must be positive");
    return run_pipeline(g, prepare_instance(g, d), epsilon);
}

}  // namespace catspan
