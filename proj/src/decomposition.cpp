#include "catspan/decomposition.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace catspan {

std::string ValidationReport::to_string() const {
    if (issues.empty()) return "valid";
    std::string s;
    for (const auto& i : issues) {
        s += i.condition;
        s += ": ";
        s += i.witness;
        s += "\n";
    }
    return s;
}

namespace {

bool contains(const std::vector<VertexId>& sorted, VertexId v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

// first/last spine bag per vertex; -1 when absent from the spine
struct BagRuns {
    std::vector<int> first, last;
    std::vector<bool> contiguous;
};

BagRuns bag_runs(const CaterpillarDecomposition& d, int n) {
    BagRuns r;
    r.first.assign(n, -1);
    r.last.assign(n, -1);
    r.contiguous.assign(n, true);
    for (int b = 0; b < int(d.bags.size()); b++) {
        for (VertexId v : d.bags[b]) {
            if (v < 0 || v >= n) continue;
            if (r.first[v] < 0) {
                r.first[v] = b;
            } else if (r.last[v] != b - 1) {
                r.contiguous[v] = false;
            }
            r.last[v] = b;
        }
    }
    return r;
}

}  // namespace

ValidationReport validate(const WeightedGraph& g, const CaterpillarDecomposition& d) {
    ValidationReport rep;
    int n = g.vertex_count();
    auto issue = [&](const std::string& c, const std::string& w) {
        rep.issues.push_back({c, w});
    };

    for (int b = 0; b < int(d.bags.size()); b++) {
        for (VertexId v : d.bags[b])
            if (v < 0 || v >= n) issue("bag contents", "bag " + std::to_string(b) + " has unknown vertex " + std::to_string(v));
        if (int(d.bags[b].size()) > d.width + 1)
            issue("spine width", "bag " + std::to_string(b) + " has size " + std::to_string(d.bags[b].size()) +
                                     " > width+1 = " + std::to_string(d.width + 1));
    }

    auto runs = bag_runs(d, n);
    for (VertexId v = 0; v < n; v++)
        if (!runs.contiguous[v])
            issue("interval condition", "bags containing vertex " + std::to_string(v) + " are not contiguous");

    // flap structural checks + which vertices live in flaps
    std::vector<int> flap_of(n, -1);
    for (int f = 0; f < int(d.flaps.size()); f++) {
        const Flap& fl = d.flaps[f];
        std::string tag = "flap " + std::to_string(f);
        if (fl.p.empty() || fl.q.empty()) issue("flap sizes", tag + " needs p >= 1 and q >= 1");
        if (fl.anchor < 0 || fl.anchor >= int(d.bags.size())) {
            issue("flap anchor", tag + " anchor out of range");
            continue;
        }
        if (int(fl.p.size() + fl.q.size()) - 1 > d.width)
            issue("flap sizes", tag + " has p+q-1 = " + std::to_string(fl.p.size() + fl.q.size() - 1) +
                                    " > width " + std::to_string(d.width));
        for (VertexId v : fl.p)
            if (!contains(d.bags[fl.anchor], v))
                issue("flap anchor", tag + " P-vertex " + std::to_string(v) + " not in anchor bag");
        for (VertexId v : fl.q) {
            if (v < 0 || v >= n) {
                issue("flap contents", tag + " unknown vertex " + std::to_string(v));
                continue;
            }
            if (runs.first[v] >= 0)
                issue("flap containment", tag + " Q-vertex " + std::to_string(v) + " appears in a spine bag");
            if (flap_of[v] >= 0)
                issue("flap containment", tag + " Q-vertex " + std::to_string(v) + " already in flap " + std::to_string(flap_of[v]));
            flap_of[v] = f;
        }
        // clique check over P u Q
        std::vector<VertexId> all = fl.p;
        all.insert(all.end(), fl.q.begin(), fl.q.end());
        for (size_t i = 0; i < all.size(); i++)
            for (size_t j = i + 1; j < all.size(); j++)
                if (all[i] < n && all[j] < n && !g.find_edge(all[i], all[j]))
                    issue("flap clique", tag + " missing edge {" + std::to_string(all[i]) + "," + std::to_string(all[j]) + "}");
        // separation probe: with P removed, Q must reach only P u Q
        if (n > 0) {
            std::vector<char> blocked(n, 0);
            for (VertexId v : fl.p)
                if (v < n) blocked[v] = 1;
            auto comp = components_without(g, blocked);
            std::set<VertexId> inside(all.begin(), all.end());
            for (VertexId q : fl.q) {
                if (q >= n || comp[q] < 0) continue;
                for (VertexId v = 0; v < n; v++) {
                    if (comp[v] == comp[q] && !inside.count(v)) {
                        issue("flap separation", tag + " Q reaches outside vertex " + std::to_string(v) + " with P removed");
                        break;
                    }
                }
            }
        }
    }

    // coverage of vertices
    for (VertexId v = 0; v < n; v++)
        if (runs.first[v] < 0 && flap_of[v] < 0)
            issue("vertex coverage", "vertex " + std::to_string(v) + " in no bag and no flap");

    // edge coverage: a common spine bag, or both ends inside one flap clique
    for (EdgeId e = 0; e < g.edge_count(); e++) {
        VertexId u = g.edge(e).u, v = g.edge(e).v;
        bool covered = false;
        if (runs.first[u] >= 0 && runs.first[v] >= 0 &&
            std::max(runs.first[u], runs.first[v]) <= std::min(runs.last[u], runs.last[v]))
            covered = true;
        if (!covered) {
            for (const Flap& fl : d.flaps) {
                auto in_flap = [&](VertexId x) { return contains(fl.p, x) || contains(fl.q, x); };
                if (in_flap(u) && in_flap(v)) {
                    covered = true;
                    break;
                }
            }
        }
        if (!covered)
            issue("edge coverage", "edge {" + std::to_string(u) + "," + std::to_string(v) + "} in no bag");
    }

    return rep;
}

bool is_nice(const CaterpillarDecomposition& d) {
    for (size_t i = 0; i + 1 < d.bags.size(); i++) {
        const auto& a = d.bags[i];
        const auto& b = d.bags[i + 1];
        std::vector<VertexId> diff;
        std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
        if (diff.size() != 1) return false;
    }
    return !d.bags.empty();
}

CaterpillarDecomposition nicify(const CaterpillarDecomposition& d) {
    if (d.bags.empty()) throw std::invalid_argument("nicify: no bags");
    int n = 0;
    for (const auto& b : d.bags)
        for (VertexId v : b) n = std::max(n, v + 1);
    {
        auto runs = bag_runs(d, n);
        for (VertexId v = 0; v < n; v++)
            if (!runs.contiguous[v]) throw std::invalid_argument("nicify: vertex runs not contiguous");
    }
    if (is_nice(d)) {
        bool anchors_ok = true;
        for (const Flap& f : d.flaps)
            for (VertexId v : f.p)
                if (!contains(d.bags[f.anchor], v)) anchors_ok = false;
        if (anchors_ok) return d;
    }

    CaterpillarDecomposition out;
    out.width = d.width;
    for (size_t i = 0; i < d.bags.size(); i++) {
        const auto& cur = d.bags[i];
        if (cur.empty()) continue;
        if (out.bags.empty()) {
            out.bags.push_back(cur);
        } else if (out.bags.back() != cur) {
            // remove missing vertices one at a time, then add new ones; an
            // empty intermediate can appear only for disconnected inputs
            const auto prev = out.bags.back();
            std::vector<VertexId> to_remove, to_add;
            std::set_difference(prev.begin(), prev.end(), cur.begin(), cur.end(), std::back_inserter(to_remove));
            std::set_difference(cur.begin(), cur.end(), prev.begin(), prev.end(), std::back_inserter(to_add));
            std::vector<VertexId> work = prev;
            for (VertexId v : to_remove) {
                work.erase(std::find(work.begin(), work.end(), v));
                out.bags.push_back(work);
            }
            for (VertexId v : to_add) {
                work.insert(std::lower_bound(work.begin(), work.end(), v), v);
                out.bags.push_back(work);
            }
        }
    }
    // merge adjacent duplicates (possible when an input bag equals a
    // constructed intermediate)
    std::vector<std::vector<VertexId>> cleaned;
    for (auto& b : out.bags)
        if (cleaned.empty() || cleaned.back() != b) cleaned.push_back(std::move(b));
    out.bags = std::move(cleaned);

    // every nonempty original bag survives verbatim; re-locate for anchors
    std::vector<int> bag_map(d.bags.size(), -1);
    for (size_t i = 0; i < d.bags.size(); i++) {
        if (d.bags[i].empty()) continue;
        auto it = std::find(out.bags.begin(), out.bags.end(), d.bags[i]);
        bag_map[i] = int(it - out.bags.begin());
    }

    out.flaps = d.flaps;
    for (Flap& f : out.flaps) {
        int a = bag_map[f.anchor];
        if (a < 0 || a >= int(out.bags.size()))
            throw std::invalid_argument("nicify: flap anchor lost");
        bool ok = true;
        for (VertexId v : f.p)
            if (!contains(out.bags[a], v)) ok = false;
        if (!ok) {
            // search for any bag containing all of P
            a = -1;
            for (int b = 0; b < int(out.bags.size()); b++) {
                bool all = true;
                for (VertexId v : f.p)
                    if (!contains(out.bags[b], v)) all = false;
                if (all) {
                    a = b;
                    break;
                }
            }
            if (a < 0) throw std::invalid_argument("nicify: no bag contains flap P-clique");
        }
        f.anchor = a;
    }
    return out;
}

IntervalLayout interval_layout(const CaterpillarDecomposition& d) {
    if (!is_nice(d)) throw std::invalid_argument("interval_layout: decomposition not nice");
    int n = 0;
    for (const auto& b : d.bags)
        for (VertexId v : b) n = std::max(n, v + 1);
    for (const Flap& f : d.flaps) {
        for (VertexId v : f.p) n = std::max(n, v + 1);
        for (VertexId v : f.q) n = std::max(n, v + 1);
    }

    IntervalLayout lay;
    lay.left_.assign(n, Rational(0));
    lay.right_.assign(n, Rational(0));
    lay.flap_of_.assign(n, -1);

    auto runs = bag_runs(d, n);
    Rational delta(1, 2 * std::int64_t(n + 1));
    for (VertexId v = 0; v < n; v++) {
        if (runs.first[v] < 0) continue;  // flap vertex, handled below
        lay.left_[v] = Rational(runs.first[v]) + Rational(v + 1) * delta;
        lay.right_[v] = Rational(runs.last[v] + 1) - Rational(v + 1) * delta;
    }

    // flap Q intervals: per anchor, flaps packed into (anchor + 1/2,
    // anchor + 1/2 + delta); within one flap the q intervals are nested so
    // the clique's intervals pairwise intersect.
    std::map<int, std::vector<int>> flaps_at;
    for (int f = 0; f < int(d.flaps.size()); f++) flaps_at[d.flaps[f].anchor].push_back(f);
    for (auto& [anchor, fs] : flaps_at) {
        Rational base = Rational(anchor) + Rational(1, 2);
        std::int64_t t = std::int64_t(fs.size());
        Rational win = delta / Rational(2 * t + 2);
        for (std::int64_t i = 0; i < t; i++) {
            const Flap& fl = d.flaps[fs[i]];
            Rational wstart = base + Rational(2 * i + 1) * win;
            Rational wend = base + Rational(2 * i + 2) * win;
            std::int64_t qn = std::int64_t(fl.q.size());
            Rational lam = (wend - wstart) / Rational(2 * (qn + 1));
            for (std::int64_t r = 0; r < qn; r++) {
                VertexId v = fl.q[r];
                lay.left_[v] = wstart + Rational(r + 1) * lam;
                lay.right_[v] = wend - Rational(r + 1) * lam;
                lay.flap_of_[v] = fs[i];
            }
        }
    }
    return lay;
}

std::vector<VertexId> IntervalLayout::by_left() const {
    std::vector<VertexId> order(left_.size());
    for (int i = 0; i < int(order.size()); i++) order[i] = i;
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return left_[a] < left_[b]; });
    return order;
}

VertexId IntervalLayout::leftmost() const {
    VertexId best = 0;
    for (VertexId v = 1; v < size(); v++)
        if (left_[v] < left_[best]) best = v;
    return best;
}

VertexId IntervalLayout::rightmost() const {
    VertexId best = 0;
    for (VertexId v = 1; v < size(); v++)
        if (left_[best] < left_[v]) best = v;
    return best;
}

std::pair<int, int> widths(const CaterpillarDecomposition& d) {
    int spine = 0;
    for (const auto& b : d.bags) spine = std::max(spine, int(b.size()) - 1);
    int cat = spine;
    for (const Flap& f : d.flaps) cat = std::max(cat, int(f.p.size() + f.q.size()) - 1);
    return {spine, cat};
}

}  // namespace catspan
