#include "catspan/charging.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace catspan {

namespace {

std::vector<char> tree_mask(const WeightedGraph& g, const TreeEdges& t) {
    std::vector<char> m(g.edge_count(), 0);
    for (EdgeId e : t.edges) m[e] = 1;
    return m;
}

// vertex walk of an edge path; empty result if the ids do not chain up
std::vector<VertexId> path_vertices(const WeightedGraph& g, const std::vector<EdgeId>& path) {
    std::vector<VertexId> vs;
    if (path.empty()) return vs;
    if (path.size() == 1) {
        vs = {g.edge(path[0]).u, g.edge(path[0]).v};
        return vs;
    }
    const Edge& e0 = g.edge(path[0]);
    const Edge& e1 = g.edge(path[1]);
    VertexId second = (e0.u == e1.u || e0.u == e1.v) ? e0.u : e0.v;
    VertexId first = e0.u == second ? e0.v : e0.u;
    vs.push_back(first);
    VertexId cur = second;
    vs.push_back(cur);
    for (size_t i = 1; i < path.size(); i++) {
        const Edge& e = g.edge(path[i]);
        if (e.u != cur && e.v != cur) return {};
        cur = e.u == cur ? e.v : e.u;
        vs.push_back(cur);
    }
    return vs;
}

// shape check for one move; appends violations, returns true when sound
bool check_move(const WeightedGraph& g, const std::vector<char>* alive, const DetourMove& m,
                size_t idx, std::vector<SchemeViolation>* out) {
    auto bad = [&](const std::string& w) {
        if (out) out->push_back({"detour shape", "move " + std::to_string(idx) + ": " + w});
        return false;
    };
    auto edge_ok = [&](EdgeId e) {
        return e >= 0 && e < g.edge_count() && (!alive || (*alive)[e]);
    };
    if (!edge_ok(m.edge)) return bad("unknown edge " + std::to_string(m.edge));
    if (m.amount.is_negative()) return bad("negative amount");
    if (m.path.empty()) return bad("empty path");
    for (EdgeId e : m.path) {
        if (!edge_ok(e)) return bad("unknown path edge " + std::to_string(e));
        if (e == m.edge) return bad("edge occurs in its own detour path");
    }
    auto vs = path_vertices(g, m.path);
    if (vs.empty()) return bad("path edges do not chain");
    std::set<VertexId> seen(vs.begin(), vs.end());
    if (seen.size() != vs.size()) return bad("path is not simple");
    VertexId eu = g.edge(m.edge).u, ev = g.edge(m.edge).v;
    if (!((vs.front() == eu && vs.back() == ev) || (vs.front() == ev && vs.back() == eu)))
        return bad("path does not connect the edge's endpoints");
    return true;
}

}  // namespace

SchemeReport verify_scheme(const WeightedGraph& g, const ChargingScheme& s,
                           const std::vector<char>* alive) {
    SchemeReport rep;
    auto is_tree = tree_mask(g, s.tree);
    std::vector<Rational> out_c(g.edge_count()), in_c(g.edge_count());
    bool shapes_ok = true;
    for (size_t i = 0; i < s.moves.size(); i++) {
        const DetourMove& m = s.moves[i];
        if (!check_move(g, alive, m, i, &rep.violations)) {
            shapes_ok = false;
            continue;
        }
        out_c[m.edge] += m.amount;
        for (EdgeId e : m.path) in_c[e] += m.amount;
    }
    bool conds_ok = true;
    rep.value = Rational(0);
    for (EdgeId e = 0; e < g.edge_count(); e++) {
        if (alive && !(*alive)[e]) continue;
        Rational net = in_c[e] - out_c[e];
        if (is_tree[e]) {
            if (rep.value < net) rep.value = net;
        } else {
            if (out_c[e] < Rational(1)) {
                conds_ok = false;
                rep.violations.push_back(
                    {"condition 1", "edge " + std::to_string(e) + " has Out = " + out_c[e].str() + " < 1"});
            }
            if (Rational(0) < net) {
                conds_ok = false;
                rep.violations.push_back(
                    {"condition 2", "edge " + std::to_string(e) + " has Net = " + net.str() + " > 0"});
            }
        }
    }
    rep.valid = shapes_ok && conds_ok;
    return rep;
}

AcyclicReport verify_acyclic(const WeightedGraph& g, const ChargingScheme& s,
                             const std::vector<char>* alive) {
    AcyclicReport rep;
    auto is_tree = tree_mask(g, s.tree);
    int m = g.edge_count();
    std::vector<std::set<EdgeId>> arcs(m);
    bool cond4 = true;
    for (size_t i = 0; i < s.moves.size(); i++) {
        const DetourMove& mv = s.moves[i];
        if (mv.amount.is_zero() || mv.amount.is_negative()) continue;
        if (mv.edge < 0 || mv.edge >= m) continue;  // shape issues belong to verify_scheme
        if (is_tree[mv.edge]) {
            cond4 = false;
            rep.violations.push_back(
                {"condition 4", "tree edge " + std::to_string(mv.edge) + " charges (move " + std::to_string(i) + ")"});
        }
        for (EdgeId e : mv.path)
            if (e >= 0 && e < m) arcs[mv.edge].insert(e);
    }

    std::vector<int> indeg(m, 0);
    for (EdgeId a = 0; a < m; a++)
        for (EdgeId b : arcs[a]) indeg[b]++;
    std::set<EdgeId> ready;
    for (EdgeId e = 0; e < m; e++) {
        if (alive && !(*alive)[e]) continue;
        if (indeg[e] == 0) ready.insert(e);
    }
    int total = 0;
    for (EdgeId e = 0; e < m; e++)
        if (!alive || (*alive)[e]) total++;
    while (!ready.empty()) {
        EdgeId e = *ready.begin();
        ready.erase(ready.begin());
        rep.order.push_back(e);
        for (EdgeId b : arcs[e])
            if (--indeg[b] == 0 && (!alive || (*alive)[b])) ready.insert(b);
    }
    bool cond5 = int(rep.order.size()) == total;
    if (!cond5) {
        // leftover nodes contain a cycle; prune trailing nodes with no arc
        // into the leftover set, then walk until a repeat
        std::set<EdgeId> leftover;
        for (EdgeId e = 0; e < m; e++)
            if ((!alive || (*alive)[e]) && indeg[e] > 0) leftover.insert(e);
        bool pruned = true;
        while (pruned) {
            pruned = false;
            for (auto it = leftover.begin(); it != leftover.end();) {
                bool has_out = false;
                for (EdgeId b : arcs[*it])
                    if (leftover.count(b)) has_out = true;
                if (!has_out) {
                    it = leftover.erase(it);
                    pruned = true;
                } else {
                    ++it;
                }
            }
        }
        if (!leftover.empty()) {
            std::vector<EdgeId> walk;
            std::set<EdgeId> seen;
            EdgeId cur = *leftover.begin();
            while (!seen.count(cur)) {
                seen.insert(cur);
                walk.push_back(cur);
                for (EdgeId b : arcs[cur])
                    if (leftover.count(b)) {
                        cur = b;
                        break;
                    }
            }
            auto it = std::find(walk.begin(), walk.end(), cur);
            rep.cycle.assign(it, walk.end());
        }
        rep.violations.push_back({"condition 5", "charge relation contains a cycle"});
    }
    rep.acyclic = cond4 && cond5;
    return rep;
}

DetourMove shortcut(const WeightedGraph& g, const DetourMove& m1, const DetourMove& m2) {
    auto pos = std::find(m1.path.begin(), m1.path.end(), m2.edge);
    if (pos == m1.path.end()) throw std::invalid_argument("shortcut: m2.edge not on m1.path");
    if (std::find(m2.path.begin(), m2.path.end(), m1.edge) != m2.path.end())
        throw std::invalid_argument("shortcut: m1.edge on m2.path");

    auto vs1 = path_vertices(g, m1.path);
    auto vs2 = path_vertices(g, m2.path);
    if (vs1.empty() || vs2.empty()) throw std::invalid_argument("shortcut: inputs are not paths");

    // splice m2.path in place of m2.edge, tracking walk vertices explicitly
    // (the spliced walk may repeat edges, so they cannot be re-derived)
    size_t rep_idx = size_t(pos - m1.path.begin());
    std::vector<VertexId> wv{vs1[0]};
    std::vector<EdgeId> we;
    for (size_t idx = 0; idx < m1.path.size(); idx++) {
        VertexId at = wv.back();
        if (idx == rep_idx) {
            std::vector<EdgeId> seg = m2.path;
            std::vector<VertexId> segv = vs2;
            if (segv.front() != at) {
                std::reverse(seg.begin(), seg.end());
                std::reverse(segv.begin(), segv.end());
            }
            if (segv.front() != at) throw std::logic_error("shortcut: replacement does not attach");
            for (size_t i = 0; i < seg.size(); i++) {
                we.push_back(seg[i]);
                wv.push_back(segv[i + 1]);
            }
        } else {
            we.push_back(m1.path[idx]);
            wv.push_back(g.other_end(m1.path[idx], at));
        }
    }

    // reduce the walk to a simple path: drop loops as vertices repeat
    std::vector<VertexId> keep_v{wv[0]};
    std::vector<EdgeId> keep_e;
    std::map<VertexId, size_t> at_pos;
    at_pos[wv[0]] = 0;
    for (size_t i = 1; i < wv.size(); i++) {
        VertexId v = wv[i];
        auto it = at_pos.find(v);
        if (it != at_pos.end()) {
            size_t back_to = it->second;
            while (keep_v.size() > back_to + 1) {
                at_pos.erase(keep_v.back());
                keep_v.pop_back();
                keep_e.pop_back();
            }
        } else {
            keep_v.push_back(v);
            keep_e.push_back(we[i - 1]);
            at_pos[v] = keep_v.size() - 1;
        }
    }
    DetourMove out;
    out.edge = m1.edge;
    out.path = keep_e;
    out.amount = Rational(0);
    return out;
}

ChargingScheme eliminate_edge(const WeightedGraph& g, const ChargingScheme& s, EdgeId e,
                              const std::vector<char>* alive) {
    if (e < 0 || e >= g.edge_count()) throw std::invalid_argument("eliminate_edge: unknown edge");
    auto is_tree = tree_mask(g, s.tree);
    if (is_tree[e]) throw std::invalid_argument("eliminate_edge: edge is in the tree");
    auto pre = verify_scheme(g, s, alive);
    if (!pre.valid) throw std::invalid_argument("eliminate_edge: scheme not valid");
    auto ac = verify_acyclic(g, s, alive);
    if (!ac.acyclic) throw std::invalid_argument("eliminate_edge: scheme not acyclic");

    ChargingScheme out;
    out.tree = s.tree;
    out.moves = s.moves;

    auto find_charger = [&]() -> int {
        for (size_t i = 0; i < out.moves.size(); i++) {
            if (out.moves[i].amount.is_zero()) continue;
            if (std::find(out.moves[i].path.begin(), out.moves[i].path.end(), e) != out.moves[i].path.end())
                return int(i);
        }
        return -1;
    };
    auto find_outmove = [&]() -> int {
        for (size_t i = 0; i < out.moves.size(); i++)
            if (out.moves[i].edge == e && !out.moves[i].amount.is_zero()) return int(i);
        return -1;
    };

    int charger;
    while ((charger = find_charger()) >= 0) {
        int om = find_outmove();
        if (om < 0) throw std::logic_error("eliminate_edge: charged edge has no out-move");
        DetourMove& m1 = out.moves[charger];
        DetourMove& m2 = out.moves[om];
        Rational alpha = m1.amount < m2.amount ? m1.amount : m2.amount;
        DetourMove sc = shortcut(g, m1, m2);
        sc.amount = alpha;
        m1.amount -= alpha;
        m2.amount -= alpha;
        out.moves.push_back(std::move(sc));
    }

    std::vector<DetourMove> kept;
    for (auto& m : out.moves) {
        if (m.edge == e) continue;  // residual charges out of e vanish with it
        if (m.amount.is_zero()) continue;
        kept.push_back(std::move(m));
    }
    out.moves = std::move(kept);
    return out;
}

namespace {

// orientation data of a non-tree edge {j,k}: left(j) < left(k), i = parent(k)
struct TriangleInfo {
    VertexId j = -1, k = -1, i = -1;
    EdgeId partner = -1;  // edge {i,j}
    EdgeId tree_ik = -1;  // edge {i,k}, always in the tree
};

TriangleInfo triangle_info(const WeightedGraph& g, const MonotoneTree& t,
                           const IntervalLayout& lay, EdgeId e) {
    TriangleInfo ti;
    VertexId a = g.edge(e).u, b = g.edge(e).v;
    ti.j = lay.left_before(a, b) ? a : b;
    ti.k = ti.j == a ? b : a;
    ti.i = t.parent[ti.k];
    if (ti.i < 0) throw std::logic_error("triangle_info: larger-left endpoint is the root");
    auto pe = g.find_edge(ti.i, ti.j);
    if (!pe)
        throw std::runtime_error("graph not completed: missing triangle edge {" + std::to_string(ti.i) +
                                 "," + std::to_string(ti.j) + "}");
    ti.partner = *pe;
    ti.tree_ik = t.parent_edge[ti.k];
    return ti;
}

// triangle move for tour arc a -> b within a T2-style forest
DetourMove arc_move(const std::vector<TriangleInfo>& info, EdgeId a, EdgeId b,
                    const std::vector<EdgeId>& parent) {
    DetourMove m;
    m.amount = Rational(1);
    if (parent[a] == b) {
        // child a = {j,k} charges j - i - k
        const TriangleInfo& ti = info[a];
        m.edge = a;
        m.path = {ti.partner, ti.tree_ik};
    } else if (parent[b] == a) {
        // parent a = {i,j} charges i - k - j around child b = {j,k}
        const TriangleInfo& ti = info[b];
        m.edge = a;
        m.path = {ti.tree_ik, b};
    } else {
        throw std::logic_error("arc_move: nodes not adjacent in forest");
    }
    return m;
}

// Euler tour of one component from `root`, arcs out of the root deleted;
// returns the node sequences of the resulting paths, each ending at root.
std::vector<std::vector<EdgeId>> tour_paths(EdgeId root,
                                            const std::vector<std::vector<EdgeId>>& children) {
    std::vector<std::pair<EdgeId, EdgeId>> arcs;
    // iterative DFS emitting down/up arcs
    struct Frame {
        EdgeId node;
        size_t next_child = 0;
    };
    std::vector<Frame> stack{{root}};
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next_child < children[f.node].size()) {
            EdgeId c = children[f.node][f.next_child++];
            arcs.push_back({f.node, c});
            stack.push_back({c});
        } else {
            EdgeId done = f.node;
            stack.pop_back();
            if (!stack.empty()) arcs.push_back({done, stack.back().node});
        }
    }
    std::vector<std::vector<EdgeId>> paths;
    std::vector<EdgeId> cur;
    for (auto [from, to] : arcs) {
        if (from == root) {
            cur = {from == root ? to : from};
            continue;
        }
        if (cur.empty() || cur.back() != from) cur.push_back(from);
        cur.push_back(to);
        if (to == root) {
            paths.push_back(cur);
            cur.clear();
        }
    }
    return paths;
}

// Replay one tour path, eliminating repeat appearances by composing moves.
void replay_path(const WeightedGraph& g, const std::vector<TriangleInfo>& info,
                 const std::vector<EdgeId>& parent, const std::vector<EdgeId>& nodes,
                 std::vector<DetourMove>& out) {
    if (nodes.size() < 2) return;
    std::set<EdgeId> seen{nodes[0]};
    DetourMove incoming = arc_move(info, nodes[0], nodes[1], parent);
    for (size_t t = 1; t + 1 < nodes.size(); t++) {
        DetourMove mt = arc_move(info, nodes[t], nodes[t + 1], parent);
        if (seen.count(nodes[t]) &&
            std::find(incoming.path.begin(), incoming.path.end(), nodes[t]) != incoming.path.end()) {
            DetourMove sc = shortcut(g, incoming, mt);
            sc.amount = Rational(1);
            incoming = std::move(sc);
        } else {
            seen.insert(nodes[t]);
            out.push_back(std::move(incoming));
            incoming = std::move(mt);
        }
    }
    out.push_back(std::move(incoming));
}

std::vector<EdgeId> tree_path_between(const WeightedGraph& g, const MonotoneTree& t, VertexId a,
                                      VertexId b) {
    (void)g;
    std::set<VertexId> a_ancestors{a};
    for (VertexId v = a; t.parent[v] >= 0; v = t.parent[v]) a_ancestors.insert(t.parent[v]);
    VertexId lca = b;
    while (!a_ancestors.count(lca)) lca = t.parent[lca];
    std::vector<EdgeId> path;
    for (VertexId v = a; v != lca; v = t.parent[v]) path.push_back(t.parent_edge[v]);
    std::vector<EdgeId> tail;
    for (VertexId v = b; v != lca; v = t.parent[v]) tail.push_back(t.parent_edge[v]);
    std::reverse(tail.begin(), tail.end());
    path.insert(path.end(), tail.begin(), tail.end());
    return path;
}

}  // namespace

T2Forest build_t2_forest(const WeightedGraph& g, const MonotoneTree& t,
                         const IntervalLayout& lay) {
    int m = g.edge_count();
    T2Forest f;
    f.parent.assign(m, -1);
    f.children.assign(m, {});
    f.interval.resize(m);
    auto is_tree = tree_mask(g, t.tree);
    for (EdgeId e = 0; e < m; e++) {
        VertexId u = g.edge(e).u, v = g.edge(e).v;
        const Rational& l = lay.left_before(u, v) ? lay.left(v) : lay.left(u);
        const Rational& r = lay.right(u) < lay.right(v) ? lay.right(u) : lay.right(v);
        if (r < l) throw std::runtime_error("graph not completed: edge endpoints' intervals disjoint");
        f.interval[e] = {l, r};
    }
    for (EdgeId e = 0; e < m; e++) {
        if (is_tree[e]) {
            f.roots.push_back(e);
            continue;
        }
        TriangleInfo ti = triangle_info(g, t, lay, e);
        f.parent[e] = ti.partner;
        f.children[ti.partner].push_back(e);
    }
    for (auto& ch : f.children)
        std::sort(ch.begin(), ch.end(),
                  [&](EdgeId a, EdgeId b) { return f.interval[a].first < f.interval[b].first; });
    return f;
}

ChargingScheme build_kpath_scheme(const WeightedGraph& g, const MonotoneTree& t,
                                  const IntervalLayout& lay) {
    {
        auto mono = is_monotone(g, t.tree, lay);
        if (!mono.monotone) throw std::invalid_argument("build_kpath_scheme: tree not monotone");
    }
    ChargingScheme s;
    s.tree = t.tree;
    int m = g.edge_count();
    auto is_tree = tree_mask(g, t.tree);

    auto spine_edge = [&](EdgeId e) {
        return lay.is_spine(g.edge(e).u) && lay.is_spine(g.edge(e).v);
    };

    std::vector<TriangleInfo> info(m);
    std::vector<EdgeId> parent(m, -1);
    std::vector<std::vector<EdgeId>> children(m);
    std::vector<std::pair<Rational, EdgeId>> order_key(m, {Rational(0), -1});
    for (EdgeId e = 0; e < m; e++) {
        if (!spine_edge(e) || is_tree[e]) continue;
        info[e] = triangle_info(g, t, lay, e);
        parent[e] = info[e].partner;  // spine again: both ends in spine bags
        children[info[e].partner].push_back(e);
        order_key[e] = {lay.left_before(g.edge(e).u, g.edge(e).v) ? lay.left(g.edge(e).v)
                                                                  : lay.left(g.edge(e).u),
                        e};
    }
    for (auto& ch : children)
        std::sort(ch.begin(), ch.end(),
                  [&](EdgeId a, EdgeId b) { return order_key[a] < order_key[b]; });

    for (EdgeId r = 0; r < m; r++) {
        if (!is_tree[r] || children[r].empty()) continue;
        for (const auto& path : tour_paths(r, children))
            replay_path(g, info, parent, path, s.moves);
    }
    return s;
}

ChargingScheme build_flap_scheme(const WeightedGraph& g, const MonotoneTree& t,
                                 const CaterpillarDecomposition& d, const IntervalLayout& lay) {
    {
        auto mono = is_monotone(g, t.tree, lay);
        if (!mono.monotone) throw std::invalid_argument("build_flap_scheme: tree not monotone");
    }
    ChargingScheme s;
    s.tree = t.tree;
    int m = g.edge_count();
    auto is_tree = tree_mask(g, t.tree);

    for (size_t fi = 0; fi < d.flaps.size(); fi++) {
        const Flap& fl = d.flaps[fi];
        std::vector<VertexId> clique = fl.p;
        clique.insert(clique.end(), fl.q.begin(), fl.q.end());
        std::sort(clique.begin(), clique.end());
        std::set<VertexId> qset(fl.q.begin(), fl.q.end());

        // non-tree edges of the clique with a Q endpoint
        std::vector<EdgeId> flap_edges;
        for (size_t i = 0; i < clique.size(); i++)
            for (size_t j = i + 1; j < clique.size(); j++) {
                if (!qset.count(clique[i]) && !qset.count(clique[j])) continue;
                auto e = g.find_edge(clique[i], clique[j]);
                if (!e) throw std::invalid_argument("build_flap_scheme: flap clique incomplete");
                if (!is_tree[*e]) flap_edges.push_back(*e);
            }
        if (flap_edges.empty()) continue;
        std::sort(flap_edges.begin(), flap_edges.end());

        std::set<EdgeId> in_flap(flap_edges.begin(), flap_edges.end());
        std::vector<TriangleInfo> info(m);
        std::vector<EdgeId> parent(m, -1);
        std::vector<std::vector<EdgeId>> children(m);
        std::vector<EdgeId> tree_roots, exit_roots;
        for (EdgeId e : flap_edges) {
            info[e] = triangle_info(g, t, lay, e);
            EdgeId pe = info[e].partner;
            if (in_flap.count(pe)) {
                parent[e] = pe;
                children[pe].push_back(e);
            } else if (is_tree[pe]) {
                parent[e] = pe;  // virtual root below a tree edge
                children[pe].push_back(e);
                tree_roots.push_back(pe);
            } else {
                exit_roots.push_back(e);  // partner is a non-tree spine edge
            }
        }
        auto by_left = [&](EdgeId a, EdgeId b) {
            auto key = [&](EdgeId e) {
                VertexId u = g.edge(e).u, v = g.edge(e).v;
                return std::make_pair(lay.left_before(u, v) ? lay.left(v) : lay.left(u), e);
            };
            return key(a) < key(b);
        };
        for (auto& ch : children) std::sort(ch.begin(), ch.end(), by_left);
        std::sort(tree_roots.begin(), tree_roots.end());
        tree_roots.erase(std::unique(tree_roots.begin(), tree_roots.end()), tree_roots.end());

        for (EdgeId r : tree_roots)
            for (const auto& path : tour_paths(r, children))
                replay_path(g, info, parent, path, s.moves);

        for (EdgeId r : exit_roots) {
            Rational in_count(0);
            for (const auto& path : tour_paths(r, children)) {
                replay_path(g, info, parent, path, s.moves);
                in_count += Rational(1);
            }
            // escape: charge the tree path between the root edge's endpoints,
            // covering this component's inflow plus the root's own unit
            DetourMove esc;
            esc.edge = r;
            esc.path = tree_path_between(g, t, g.edge(r).u, g.edge(r).v);
            esc.amount = in_count + Rational(1);
            if (esc.path.empty()) throw std::logic_error("build_flap_scheme: empty escape path");
            s.moves.push_back(std::move(esc));
        }
    }
    return s;
}

ChargingScheme merge_schemes(const ChargingScheme& a, const ChargingScheme& b) {
    if (a.tree.edges != b.tree.edges) throw std::invalid_argument("merge_schemes: different trees");
    ChargingScheme out = a;
    out.moves.insert(out.moves.end(), b.moves.begin(), b.moves.end());
    return out;
}

}  // namespace catspan
