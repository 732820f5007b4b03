#include "catspan/monotone_tree.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace catspan {

MonotonicityReport is_monotone(const WeightedGraph& g, const TreeEdges& t,
                               const IntervalLayout& layout) {
    RootedTree rt = root_tree(g, t);
    MonotonicityReport rep;
    for (VertexId v : rt.order) {
        VertexId p = rt.parent[v];
        if (p < 0) continue;
        if (!layout.left_before(p, v)) {
            rep.monotone = false;
            rep.bad_child = v;
            rep.bad_parent = p;
            return rep;
        }
    }
    rep.monotone = true;
    return rep;
}

namespace {

struct TreeBuilder {
    std::vector<VertexId> parent;
    std::vector<EdgeId> parent_edge;
    std::vector<char> placed;

    explicit TreeBuilder(int n) : parent(n, -1), parent_edge(n, -1), placed(n, 0) {}

    void place_root(VertexId r) { placed[r] = 1; }

    void attach(VertexId v, VertexId p, EdgeId e) {
        parent[v] = p;
        parent_edge[v] = e;
        placed[v] = 1;
    }

    // cheapest edge from v into `candidates` (already placed); tie on the
    // smaller neighbor id
    void attach_cheapest(const WeightedGraph& g, VertexId v, const std::vector<VertexId>& candidates) {
        EdgeId best = -1;
        VertexId best_p = -1;
        for (VertexId p : candidates) {
            if (p == v || !placed[p]) continue;
            auto e = g.find_edge(v, p);
            if (!e) continue;
            if (best < 0 || g.edge(*e).weight < g.edge(best).weight ||
                (g.edge(*e).weight == g.edge(best).weight && p < best_p)) {
                best = *e;
                best_p = p;
            }
        }
        if (best < 0) throw std::invalid_argument("monotone tree: no placed neighbor for vertex " + std::to_string(v));
        attach(v, best_p, best);
    }

    MonotoneTree finish(int n) {
        MonotoneTree t;
        t.parent = parent;
        t.parent_edge = parent_edge;
        VertexId root = -1;
        for (VertexId v = 0; v < n; v++) {
            if (!placed[v]) throw std::invalid_argument("monotone tree: vertex not reached: " + std::to_string(v));
            if (parent[v] < 0)
                root = v;
            else
                t.tree.edges.push_back(parent_edge[v]);
        }
        std::sort(t.tree.edges.begin(), t.tree.edges.end());
        t.tree.root = root;
        return t;
    }
};

// flap Q vertices of each flap anchored at `bag`, attached in layout order
void attach_flaps_at(const WeightedGraph& g, const CaterpillarDecomposition& d, int bag,
                     TreeBuilder& tb) {
    for (const Flap& f : d.flaps) {
        if (f.anchor != bag) continue;
        std::vector<VertexId> candidates = f.p;
        for (VertexId q : f.q) {
            tb.attach_cheapest(g, q, candidates);
            candidates.push_back(q);
        }
    }
}

}  // namespace

MonotoneTree lightest_monotone_tree(const WeightedGraph& g, const CaterpillarDecomposition& d,
                                    const IntervalLayout& layout) {
    if (!is_nice(d)) throw std::invalid_argument("lightest_monotone_tree: decomposition not nice");
    if (d.bags.empty() || d.bags[0].empty())
        throw std::invalid_argument("lightest_monotone_tree: empty introduction order");
    int n = g.vertex_count();
    TreeBuilder tb(n);

    // first bag: vertices in id order (== left order within one bag)
    const auto& first = d.bags[0];
    tb.place_root(first[0]);
    std::vector<VertexId> sofar{first[0]};
    for (size_t i = 1; i < first.size(); i++) {
        tb.attach_cheapest(g, first[i], sofar);
        sofar.push_back(first[i]);
    }
    attach_flaps_at(g, d, 0, tb);

    for (int b = 1; b < int(d.bags.size()); b++) {
        // nice: at most one inserted vertex per step
        std::vector<VertexId> fresh;
        std::set_difference(d.bags[b].begin(), d.bags[b].end(), d.bags[b - 1].begin(),
                            d.bags[b - 1].end(), std::back_inserter(fresh));
        for (VertexId v : fresh) tb.attach_cheapest(g, v, d.bags[b]);
        attach_flaps_at(g, d, b, tb);
    }
    auto t = tb.finish(n);
    (void)layout;
    return t;
}

namespace {

// minimum-weight path from `from` (leftmost of S) whose left() strictly
// increases along the path, restricted to vertices in S
struct MonotonePath {
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;
};

MonotonePath monotone_shortest_path(const WeightedGraph& g, const IntervalLayout& lay,
                                    const std::vector<char>& in_s, VertexId from, VertexId to) {
    int n = g.vertex_count();
    std::vector<std::optional<Rational>> dist(n);
    using Item = std::pair<Rational, VertexId>;
    auto cmp = [](const Item& a, const Item& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    dist[from] = Rational(0);
    pq.push({Rational(0), from});
    std::vector<char> done(n, 0);
    while (!pq.empty()) {
        auto [dcur, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = 1;
        for (EdgeId e : g.incident(u)) {
            VertexId v = g.other_end(e, u);
            if (!in_s[v] || !lay.left_before(u, v)) continue;
            Rational nd = dcur + g.edge(e).weight;
            if (!dist[v] || nd < *dist[v]) {
                dist[v] = nd;
                pq.push({nd, v});
            }
        }
    }
    if (!dist[to]) throw std::runtime_error("monotone path: target unreachable left-to-right");

    MonotonePath p;
    p.vertices.push_back(to);
    VertexId cur = to;
    while (cur != from) {
        EdgeId best = -1;
        VertexId best_prev = -1;
        std::vector<EdgeId> inc(g.incident(cur).begin(), g.incident(cur).end());
        std::sort(inc.begin(), inc.end());
        for (EdgeId e : inc) {
            VertexId prev = g.other_end(e, cur);
            if (!in_s[prev] || !lay.left_before(prev, cur)) continue;
            if (dist[prev] && *dist[prev] + g.edge(e).weight == *dist[cur]) {
                best = e;
                best_prev = prev;
                break;
            }
        }
        if (best < 0) throw std::logic_error("monotone path: reconstruction failed");
        p.edges.push_back(best);
        p.vertices.push_back(best_prev);
        cur = best_prev;
    }
    std::reverse(p.vertices.begin(), p.vertices.end());
    std::reverse(p.edges.begin(), p.edges.end());
    return p;
}

// subgraph of g induced on S (marked in in_s), with vertex maps
struct Induced {
    WeightedGraph graph;
    std::vector<VertexId> to_global;
    std::vector<EdgeId> edge_to_global;
};

Induced induce(const WeightedGraph& g, const std::vector<VertexId>& s) {
    Induced ind;
    ind.graph = WeightedGraph(int(s.size()));
    ind.to_global = s;
    std::vector<int> local(g.vertex_count(), -1);
    for (int i = 0; i < int(s.size()); i++) local[s[i]] = i;
    for (EdgeId e = 0; e < g.edge_count(); e++) {
        VertexId u = g.edge(e).u, v = g.edge(e).v;
        if (local[u] >= 0 && local[v] >= 0) {
            ind.graph.add_edge(local[u], local[v], g.edge(e).weight);
            ind.edge_to_global.push_back(e);
        }
    }
    return ind;
}

void recursive_build(const WeightedGraph& g, const IntervalLayout& lay,
                     const std::vector<VertexId>& s, TreeBuilder& tb) {
    if (s.size() <= 1) return;
    std::vector<char> in_s(g.vertex_count(), 0);
    for (VertexId v : s) in_s[v] = 1;
    VertexId leftmost = s[0], rightmost = s[0];
    for (VertexId v : s) {
        if (lay.left_before(v, leftmost)) leftmost = v;
        if (lay.left_before(rightmost, v)) rightmost = v;
    }
    auto p1 = monotone_shortest_path(g, lay, in_s, leftmost, rightmost);
    for (size_t i = 1; i < p1.vertices.size(); i++)
        tb.attach(p1.vertices[i], p1.vertices[i - 1], p1.edges[i - 1]);

    // components of MST(g[S]) minus the path vertices
    Induced ind = induce(g, s);
    auto mst = minimum_spanning_tree(ind.graph);
    std::vector<char> on_path(g.vertex_count(), 0);
    for (VertexId v : p1.vertices) on_path[v] = 1;

    std::vector<int> comp(s.size(), -1);
    int ncomp = 0;
    for (size_t i = 0; i < s.size(); i++) {
        if (on_path[s[i]] || comp[i] >= 0) continue;
        // BFS over mst edges avoiding path vertices
        comp[i] = ncomp;
        std::vector<int> stack{int(i)};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (EdgeId me : mst.edges) {
                int a = ind.graph.edge(me).u, b = ind.graph.edge(me).v;
                int other = -1;
                if (a == u) other = b;
                if (b == u) other = a;
                if (other < 0 || on_path[s[other]] || comp[other] >= 0) continue;
                comp[other] = ncomp;
                stack.push_back(other);
            }
        }
        ncomp++;
    }
    for (int c = 0; c < ncomp; c++) {
        std::vector<VertexId> members;
        for (size_t i = 0; i < s.size(); i++)
            if (comp[i] == c) members.push_back(s[i]);
        VertexId head = members[0];
        for (VertexId v : members)
            if (lay.left_before(v, head)) head = v;
        // cheapest completion edge from the component head into a path vertex
        // to its left; it exists because the head's interval point is covered
        // by the path's interval chain
        EdgeId best = -1;
        VertexId best_p = -1;
        for (VertexId p : p1.vertices) {
            if (!lay.left_before(p, head)) continue;
            auto e = g.find_edge(head, p);
            if (!e) continue;
            if (best < 0 || g.edge(*e).weight < g.edge(best).weight ||
                (g.edge(*e).weight == g.edge(best).weight && p < best_p)) {
                best = *e;
                best_p = p;
            }
        }
        if (best < 0) throw std::runtime_error("recursive tree: component head has no leftward path edge");
        tb.attach(head, best_p, best);
        recursive_build(g, lay, members, tb);
    }
}

}  // namespace

MonotoneTree recursive_monotone_tree(const WeightedGraph& g, const CaterpillarDecomposition& d,
                                     const IntervalLayout& layout) {
    if (!is_nice(d)) throw std::invalid_argument("recursive_monotone_tree: decomposition not nice");
    if (d.bags.empty() || d.bags[0].empty())
        throw std::invalid_argument("recursive_monotone_tree: empty introduction order");
    int n = g.vertex_count();
    TreeBuilder tb(n);

    std::vector<VertexId> spine;
    for (VertexId v = 0; v < n; v++)
        if (layout.is_spine(v)) spine.push_back(v);
    VertexId root = spine[0];
    for (VertexId v : spine)
        if (layout.left_before(v, root)) root = v;
    tb.place_root(root);
    recursive_build(g, layout, spine, tb);

    for (int b = 0; b < int(d.bags.size()); b++) attach_flaps_at(g, d, b, tb);
    return tb.finish(n);
}

}  // namespace catspan
