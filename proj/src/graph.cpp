#include "catspan/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace catspan {

EdgeId WeightedGraph::add_edge(VertexId u, VertexId v, const Rational& w) {
    if (u == v) throw std::invalid_argument("add_edge: self-loop");
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count())
        throw std::invalid_argument("add_edge: vertex out of range");
    if (w.is_negative()) throw std::invalid_argument("add_edge: negative weight");
    if (find_edge(u, v)) throw std::invalid_argument("add_edge: parallel edge");
    EdgeId id = EdgeId(edges_.size());
    edges_.push_back(Edge{u, v, w});
    adj_[u].push_back(id);
    adj_[v].push_back(id);
    return id;
}

std::optional<EdgeId> WeightedGraph::find_edge(VertexId u, VertexId v) const {
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    for (EdgeId e : a) {
        const Edge& ed = edges_[e];
        if ((ed.u == u && ed.v == v) || (ed.u == v && ed.v == u)) return e;
    }
    return std::nullopt;
}

std::vector<std::optional<Rational>> sssp_distances(const WeightedGraph& g, VertexId src,
                                                    const std::vector<char>* alive,
                                                    const Rational* cutoff) {
    int n = g.vertex_count();
    std::vector<std::optional<Rational>> dist(n);
    using Item = std::pair<Rational, VertexId>;
    auto cmp = [](const Item& a, const Item& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    dist[src] = Rational(0);
    pq.push({Rational(0), src});
    std::vector<char> done(n, 0);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = 1;
        if (cutoff && d > *cutoff) break;
        for (EdgeId e : g.incident(u)) {
            if (alive && !(*alive)[e]) continue;
            VertexId v = g.other_end(e, u);
            Rational nd = d + g.edge(e).weight;
            if (cutoff && nd > *cutoff) continue;
            if (!dist[v] || nd < *dist[v]) {
                dist[v] = nd;
                pq.push({nd, v});
            }
        }
    }
    if (cutoff) {
        // labels beyond the cutoff may be unsettled; drop them
        for (auto& d : dist)
            if (d && *d > *cutoff) d.reset();
    }
    return dist;
}

std::vector<std::optional<DistHops>> sssp_dist_hops(const WeightedGraph& g, VertexId src,
                                                    const std::vector<char>* alive) {
    int n = g.vertex_count();
    std::vector<std::optional<DistHops>> out(n);
    using Key = std::tuple<Rational, int, VertexId>;
    auto cmp = [](const Key& a, const Key& b) { return b < a; };
    std::priority_queue<Key, std::vector<Key>, decltype(cmp)> pq(cmp);
    out[src] = DistHops{Rational(0), 0};
    pq.push({Rational(0), 0, src});
    std::vector<char> done(n, 0);
    while (!pq.empty()) {
        auto [d, h, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = 1;
        for (EdgeId e : g.incident(u)) {
            if (alive && !(*alive)[e]) continue;
            VertexId v = g.other_end(e, u);
            Rational nd = d + g.edge(e).weight;
            int nh = h + 1;
            if (!out[v] || nd < out[v]->dist || (nd == out[v]->dist && nh < out[v]->hops)) {
                out[v] = DistHops{nd, nh};
                pq.push({nd, nh, v});
            }
        }
    }
    return out;
}

std::vector<EdgeId> reconstruct_path(const WeightedGraph& g, VertexId u, VertexId v,
                                     const std::vector<std::optional<DistHops>>& to_v) {
    // Every step keeps the total distance tight and decreases the remaining
    // hop count by one, so the walk is simple and always terminates; among
    // eligible steps the smallest edge id wins.
    std::vector<EdgeId> path;
    VertexId cur = u;
    while (cur != v) {
        EdgeId best = -1;
        VertexId best_next = -1;
        std::vector<EdgeId> inc(g.incident(cur).begin(), g.incident(cur).end());
        std::sort(inc.begin(), inc.end());
        for (EdgeId e : inc) {
            VertexId nxt = g.other_end(e, cur);
            if (!to_v[nxt]) continue;
            if (to_v[cur]->dist == g.edge(e).weight + to_v[nxt]->dist &&
                to_v[cur]->hops == to_v[nxt]->hops + 1) {
                best = e;
                best_next = nxt;
                break;
            }
        }
        if (best < 0) throw std::logic_error("reconstruct_path: no shortest-path step");
        path.push_back(best);
        cur = best_next;
    }
    return path;
}

std::optional<PathResult> shortest_path(const WeightedGraph& g, VertexId u, VertexId v) {
    if (u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count())
        throw std::invalid_argument("shortest_path: vertex out of range");
    if (u == v) return PathResult{Rational(0), {}};
    auto to_v = sssp_dist_hops(g, v);
    if (!to_v[u]) return std::nullopt;
    return PathResult{to_v[u]->dist, reconstruct_path(g, u, v, to_v)};
}

DistanceTable all_pairs_distances(const WeightedGraph& g, const std::vector<char>* alive) {
    int n = g.vertex_count();
    DistanceTable t(n);
    for (VertexId s = 0; s < n; s++) {
        auto d = sssp_distances(g, s, alive);
        for (VertexId v = 0; v < n; v++) t.at(s, v) = d[v];
    }
    return t;
}

namespace {

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[b] = a;
        return true;
    }
};

}  // namespace

TreeEdges minimum_spanning_tree(const WeightedGraph& g) {
    int n = g.vertex_count();
    std::vector<EdgeId> order(g.edge_count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
        if (g.edge(a).weight != g.edge(b).weight) return g.edge(a).weight < g.edge(b).weight;
        return a < b;
    });
    Dsu dsu(n);
    TreeEdges t;
    for (EdgeId e : order)
        if (dsu.unite(g.edge(e).u, g.edge(e).v)) t.edges.push_back(e);
    if (int(t.edges.size()) != n - 1) throw std::runtime_error("graph not connected");
    std::sort(t.edges.begin(), t.edges.end());
    t.root = 0;
    return t;
}

Rational subgraph_weight(const WeightedGraph& g, std::span<const EdgeId> edges) {
    Rational w(0);
    for (EdgeId e : edges) {
        if (e < 0 || e >= g.edge_count()) throw std::invalid_argument("subgraph_weight: bad edge id");
        w += g.edge(e).weight;
    }
    return w;
}

bool is_connected(const WeightedGraph& g) {
    int n = g.vertex_count();
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
        VertexId u = stack.back();
        stack.pop_back();
        for (EdgeId e : g.incident(u)) {
            VertexId v = g.other_end(e, u);
            if (!seen[v]) {
                seen[v] = 1;
                cnt++;
                stack.push_back(v);
            }
        }
    }
    return cnt == n;
}

std::vector<int> components_without(const WeightedGraph& g, const std::vector<char>& blocked) {
    int n = g.vertex_count();
    std::vector<int> comp(n, -1);
    int next = 0;
    for (VertexId s = 0; s < n; s++) {
        if (blocked[s] || comp[s] >= 0) continue;
        comp[s] = next;
        std::vector<VertexId> stack{s};
        while (!stack.empty()) {
            VertexId u = stack.back();
            stack.pop_back();
            for (EdgeId e : g.incident(u)) {
                VertexId v = g.other_end(e, u);
                if (blocked[v] || comp[v] >= 0) continue;
                comp[v] = next;
                stack.push_back(v);
            }
        }
        next++;
    }
    return comp;
}

RootedTree root_tree(const WeightedGraph& g, const TreeEdges& tree) {
    int n = g.vertex_count();
    std::vector<std::vector<std::pair<VertexId, EdgeId>>> nbr(n);
    for (EdgeId e : tree.edges) {
        nbr[g.edge(e).u].push_back({g.edge(e).v, e});
        nbr[g.edge(e).v].push_back({g.edge(e).u, e});
    }
    for (auto& v : nbr) std::sort(v.begin(), v.end());
    RootedTree r;
    r.parent.assign(n, -1);
    r.parent_edge.assign(n, -1);
    std::vector<char> seen(n, 0);
    std::vector<VertexId> stack{tree.root};
    seen[tree.root] = 1;
    while (!stack.empty()) {
        VertexId u = stack.back();
        stack.pop_back();
        r.order.push_back(u);
        for (auto [v, e] : nbr[u]) {
            if (seen[v]) continue;
            seen[v] = 1;
            r.parent[v] = u;
            r.parent_edge[v] = e;
            stack.push_back(v);
        }
    }
    if (int(r.order.size()) != n) throw std::invalid_argument("root_tree: edges do not span");
    return r;
}

}  // namespace catspan
