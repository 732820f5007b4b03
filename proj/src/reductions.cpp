#include "catspan/reductions.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace catspan {

namespace {

struct Runs {
    std::vector<int> first, last;
};

Runs spine_runs(const CaterpillarDecomposition& d, int n) {
    Runs r;
    r.first.assign(n, -1);
    r.last.assign(n, -1);
    for (int b = 0; b < int(d.bags.size()); b++)
        for (VertexId v : d.bags[b]) {
            if (r.first[v] < 0) r.first[v] = b;
            r.last[v] = b;
        }
    return r;
}

}  // namespace

DegreeReduceResult degree_reduce(const WeightedGraph& g, const CaterpillarDecomposition& d) {
    if (!is_nice(d)) throw std::invalid_argument("degree_reduce: decomposition not nice");
    int n = g.vertex_count();
    int k = std::max(1, d.width);
    int nbags = int(d.bags.size());

    // generations[v] = (first original bag where this copy is current, copy id)
    std::vector<std::vector<std::pair<int, VertexId>>> generations(n);
    for (VertexId v = 0; v < n; v++) generations[v] = {{0, v}};
    auto gen_at = [&](VertexId v, int bag) {
        const auto& gs = generations[v];
        VertexId cur = gs[0].second;
        for (const auto& [from, id] : gs) {
            if (from > bag) break;
            cur = id;
        }
        return cur;
    };

    DegreeReduceResult out;
    out.trace.vertex_to_original.resize(n);
    for (VertexId v = 0; v < n; v++) out.trace.vertex_to_original[v] = v;
    int next_vertex = n;

    std::vector<int> bag_map(nbags, -1);
    std::vector<std::pair<VertexId, VertexId>> s_pairs;  // (old copy, new copy)
    auto& bags = out.decomposition.bags;
    for (int b = 0; b < nbags; b++) {
        std::vector<VertexId> mapped;
        for (VertexId v : d.bags[b]) mapped.push_back(gen_at(v, b));
        std::sort(mapped.begin(), mapped.end());
        bags.push_back(mapped);
        bag_map[b] = int(bags.size()) - 1;
        if ((b + 1) % k == 0 && b + 1 < nbags) {
            std::vector<VertexId> work = mapped;
            for (VertexId v : d.bags[b]) {  // sorted by original id: consistent block order
                VertexId old_copy = gen_at(v, b);
                VertexId new_copy = next_vertex++;
                out.trace.vertex_to_original.push_back(v);
                s_pairs.push_back({old_copy, new_copy});
                generations[v].push_back({b + 1, new_copy});
                work.insert(std::lower_bound(work.begin(), work.end(), new_copy), new_copy);
                bags.push_back(work);
                work.erase(std::find(work.begin(), work.end(), old_copy));
                bags.push_back(work);
            }
        }
    }

    // graph: original edges first (same ids), then the zero-weight S edges
    auto runs = spine_runs(d, n);
    out.graph = WeightedGraph(next_vertex);
    for (EdgeId e = 0; e < g.edge_count(); e++) {
        VertexId u = g.edge(e).u, v = g.edge(e).v;
        VertexId nu, nv;
        if (runs.first[u] >= 0 && runs.first[v] >= 0 &&
            std::max(runs.first[u], runs.first[v]) <= std::min(runs.last[u], runs.last[v])) {
            int b0 = std::max(runs.first[u], runs.first[v]);
            nu = gen_at(u, b0);
            nv = gen_at(v, b0);
        } else {
            // flap edge: live at the owning flap's anchor bag
            int anchor = -1;
            for (const Flap& f : d.flaps) {
                auto in_f = [&](VertexId x) {
                    return std::binary_search(f.p.begin(), f.p.end(), x) ||
                           std::binary_search(f.q.begin(), f.q.end(), x);
                };
                if (in_f(u) && in_f(v)) {
                    anchor = f.anchor;
                    break;
                }
            }
            if (anchor < 0) throw std::invalid_argument("degree_reduce: edge covered by no bag or flap");
            nu = gen_at(u, anchor);
            nv = gen_at(v, anchor);
        }
        EdgeId ne = out.graph.add_edge(nu, nv, g.edge(e).weight);
        assert(ne == e);
        (void)ne;
        out.trace.edge_to_original.push_back(e);
    }
    // The flap attaches to the copies current at its anchor bag, so the
    // P-clique must exist at that generation; the original clique edges may
    // have been wired between older copies. Re-adding them at the anchor
    // generation keeps distances intact (the zero-edge chain already realizes
    // the same length).
    out.decomposition.flaps = d.flaps;
    for (Flap& f : out.decomposition.flaps) {
        for (size_t i = 0; i < f.p.size(); i++)
            for (size_t j = i + 1; j < f.p.size(); j++) {
                VertexId a = gen_at(f.p[i], f.anchor), b = gen_at(f.p[j], f.anchor);
                if (out.graph.find_edge(a, b)) continue;
                auto orig = g.find_edge(f.p[i], f.p[j]);
                if (!orig) throw std::invalid_argument("degree_reduce: flap P is not a clique");
                out.graph.add_edge(a, b, g.edge(*orig).weight);
                out.trace.edge_to_original.push_back(*orig);
            }
        for (VertexId& p : f.p) p = gen_at(p, f.anchor);
        std::sort(f.p.begin(), f.p.end());
        f.anchor = bag_map[f.anchor];
    }

    for (auto [a, b] : s_pairs) {
        out.trace.contracted_zero_edges.push_back(out.graph.add_edge(a, b, Rational(0)));
        out.trace.edge_to_original.push_back(-1);
    }
    out.trace.transformed_edge_count = out.graph.edge_count();
    int maxbag = 0;
    for (const auto& b : bags) maxbag = std::max(maxbag, int(b.size()));
    out.decomposition.width = std::max(d.width, maxbag - 1);

    // the whole point of the transform: bounded bag count per vertex
    std::vector<int> bag_count(next_vertex, 0);
    for (const auto& b : bags)
        for (VertexId v : b) bag_count[v]++;
    for (VertexId v = 0; v < next_vertex; v++)
        if (bag_count[v] > 3 * k + 3)
            throw std::logic_error("degree_reduce: vertex in more than 3k+3 bags");

    return out;
}

CompleteResult complete(const WeightedGraph& g, const IntervalLayout& layout,
                        const CaterpillarDecomposition& d) {
    if (!is_connected(g)) throw std::invalid_argument("graph not connected");
    int n = g.vertex_count();
    if (layout.size() != n) throw std::invalid_argument("complete: layout size mismatch");

    CompleteResult out;
    out.graph = g;

    // missing pairs, grouped by larger endpoint so one backward Dijkstra per
    // target serves all of its partners
    std::vector<std::vector<VertexId>> want(n);
    for (VertexId u = 0; u < n; u++) {
        if (!layout.is_spine(u)) continue;
        for (VertexId v = u + 1; v < n; v++) {
            if (!layout.is_spine(v)) continue;
            if (layout.intersects(u, v) && !g.find_edge(u, v)) want[v].push_back(u);
        }
    }
    for (const Flap& f : d.flaps) {
        std::vector<VertexId> all = f.p;
        all.insert(all.end(), f.q.begin(), f.q.end());
        std::sort(all.begin(), all.end());
        for (size_t i = 0; i < all.size(); i++)
            for (size_t j = i + 1; j < all.size(); j++)
                if (!g.find_edge(all[i], all[j])) want[all[j]].push_back(all[i]);
    }

    for (VertexId v = 0; v < n; v++) {
        if (want[v].empty()) continue;
        std::sort(want[v].begin(), want[v].end());
        want[v].erase(std::unique(want[v].begin(), want[v].end()), want[v].end());
        auto to_v = sssp_dist_hops(g, v);
        for (VertexId u : want[v]) {
            if (!to_v[u]) throw std::runtime_error("complete: endpoints disconnected");
            EdgeId ne = out.graph.add_edge(u, v, to_v[u]->dist);
            out.trace.completion_paths[ne] = reconstruct_path(g, u, v, to_v);
        }
    }
    out.trace.transformed_edge_count = out.graph.edge_count();
    return out;
}

std::vector<EdgeId> lift_spanner(const std::vector<EdgeId>& spanner_edges,
                                 const ReductionTrace& trace) {
    std::set<EdgeId> acc;
    for (EdgeId e : spanner_edges) {
        if (e < 0 || (trace.transformed_edge_count > 0 && e >= trace.transformed_edge_count))
            throw std::invalid_argument("lift_spanner: edge id not in transformed graph");
        auto it = trace.completion_paths.find(e);
        if (it != trace.completion_paths.end())
            acc.insert(it->second.begin(), it->second.end());
        else
            acc.insert(e);
    }
    if (!trace.edge_to_original.empty()) {
        std::set<EdgeId> mapped;
        for (EdgeId e : acc) {
            if (e < 0 || e >= int(trace.edge_to_original.size()))
                throw std::invalid_argument("lift_spanner: edge id not in transformed graph");
            EdgeId o = trace.edge_to_original[e];
            if (o >= 0) mapped.insert(o);  // S edges vanish with the contraction
        }
        acc = std::move(mapped);
    }
    return std::vector<EdgeId>(acc.begin(), acc.end());
}

}  // namespace catspan
