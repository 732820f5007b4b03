#include "catspan/io.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace catspan {

namespace {

constexpr const char* kGraphHeader = "catspan-graph 1";
constexpr const char* kSpannerHeader = "catspan-spanner 1";

std::string rat(const Rational& r) { return std::to_string(r.num()) + "/" + std::to_string(r.den()); }

struct Runs {
    std::vector<int> first, last;
};

Runs runs_of(const CaterpillarDecomposition& d, int n) {
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

std::string serialize_instance(const Instance& inst) {
    const WeightedGraph& g = inst.graph;
    const CaterpillarDecomposition& d = inst.decomposition;
    int n = g.vertex_count();
    std::ostringstream os;
    os << kGraphHeader << "\n";
    os << "n " << n << " k " << d.width << "\n";

    std::vector<int> flap_of(n, -1);
    for (int f = 0; f < int(d.flaps.size()); f++)
        for (VertexId v : d.flaps[f].q) flap_of[v] = f;
    auto runs = runs_of(d, n);
    os << "vertices " << n << "\n";
    for (VertexId v = 0; v < n; v++) {
        if (flap_of[v] >= 0)
            os << v << " flap " << flap_of[v] << "\n";
        else
            os << v << " spine " << runs.first[v] << " " << runs.last[v] << "\n";
    }

    os << "edges " << g.edge_count() << "\n";
    for (EdgeId e = 0; e < g.edge_count(); e++)
        os << g.edge(e).u << " " << g.edge(e).v << " " << rat(g.edge(e).weight) << "\n";

    os << "bags " << d.bags.size() << "\n";
    for (const auto& b : d.bags) {
        os << b.size();
        for (VertexId v : b) os << " " << v;
        os << "\n";
    }

    os << "flaps " << d.flaps.size() << "\n";
    for (const Flap& f : d.flaps) {
        os << f.anchor << " p " << f.p.size();
        for (VertexId v : f.p) os << " " << v;
        os << " q " << f.q.size();
        for (VertexId v : f.q) os << " " << v;
        os << "\n";
    }
    return os.str();
}

namespace {

std::string next_line(std::istringstream& is, const char* what) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error(std::string("graph file: missing ") + what);
    return line;
}

}  // namespace

Instance parse_instance(const std::string& text) {
    std::istringstream is(text);
    if (next_line(is, "header") != kGraphHeader)
        throw std::runtime_error("graph file: bad header (want '" + std::string(kGraphHeader) + "')");

    auto expect_tag = [&](std::istringstream& ls, const char* tag) {
        std::string t;
        ls >> t;
        if (t != tag) throw std::runtime_error(std::string("graph file: expected '") + tag + "', got '" + t + "'");
    };

    int n = 0, k = 0;
    {
        std::istringstream ls(next_line(is, "size line"));
        expect_tag(ls, "n");
        ls >> n;
        expect_tag(ls, "k");
        ls >> k;
        if (ls.fail() || n < 0) throw std::runtime_error("graph file: bad size line");
    }

    struct VertexRow {
        bool flap = false;
        int a = -1, b = -1;
    };
    std::vector<VertexRow> vrows(n);
    {
        std::istringstream ls(next_line(is, "vertices header"));
        expect_tag(ls, "vertices");
        int cnt;
        ls >> cnt;
        if (cnt != n) throw std::runtime_error("graph file: vertex count mismatch");
    }
    for (int i = 0; i < n; i++) {
        std::istringstream ls(next_line(is, "vertex row"));
        int id;
        std::string kind;
        ls >> id >> kind;
        if (ls.fail() || id != i) throw std::runtime_error("graph file: bad vertex row order");
        if (kind == "spine") {
            ls >> vrows[i].a >> vrows[i].b;
        } else if (kind == "flap") {
            vrows[i].flap = true;
            ls >> vrows[i].a;
        } else {
            throw std::runtime_error("graph file: unknown vertex kind '" + kind + "'");
        }
        if (ls.fail()) throw std::runtime_error("graph file: bad vertex row");
    }

    Instance inst;
    inst.graph = WeightedGraph(n);
    inst.decomposition.width = k;
    int m = 0;
    {
        std::istringstream ls(next_line(is, "edges header"));
        expect_tag(ls, "edges");
        ls >> m;
        if (ls.fail() || m < 0) throw std::runtime_error("graph file: bad edge count");
    }
    for (int i = 0; i < m; i++) {
        std::istringstream ls(next_line(is, "edge row"));
        int u, v;
        std::string w;
        ls >> u >> v >> w;
        if (ls.fail()) throw std::runtime_error("graph file: bad edge row " + std::to_string(i));
        inst.graph.add_edge(u, v, parse_rational(w));
    }

    int nbags = 0;
    {
        std::istringstream ls(next_line(is, "bags header"));
        expect_tag(ls, "bags");
        ls >> nbags;
        if (ls.fail() || nbags < 0) throw std::runtime_error("graph file: bad bag count");
    }
    for (int b = 0; b < nbags; b++) {
        std::istringstream ls(next_line(is, "bag row"));
        int sz;
        ls >> sz;
        std::vector<VertexId> bag(sz);
        for (int i = 0; i < sz; i++) ls >> bag[i];
        if (ls.fail()) throw std::runtime_error("graph file: bad bag row " + std::to_string(b));
        inst.decomposition.bags.push_back(bag);
    }

    int nflaps = 0;
    {
        std::istringstream ls(next_line(is, "flaps header"));
        expect_tag(ls, "flaps");
        ls >> nflaps;
        if (ls.fail() || nflaps < 0) throw std::runtime_error("graph file: bad flap count");
    }
    for (int f = 0; f < nflaps; f++) {
        std::istringstream ls(next_line(is, "flap row"));
        Flap fl;
        ls >> fl.anchor;
        expect_tag(ls, "p");
        int psz;
        ls >> psz;
        fl.p.resize(psz);
        for (int i = 0; i < psz; i++) ls >> fl.p[i];
        expect_tag(ls, "q");
        int qsz;
        ls >> qsz;
        fl.q.resize(qsz);
        for (int i = 0; i < qsz; i++) ls >> fl.q[i];
        if (ls.fail()) throw std::runtime_error("graph file: bad flap row " + std::to_string(f));
        inst.decomposition.flaps.push_back(fl);
    }

    // vertex table must agree with the bag/flap tables
    auto runs = runs_of(inst.decomposition, n);
    std::vector<int> flap_of(n, -1);
    for (int f = 0; f < int(inst.decomposition.flaps.size()); f++)
        for (VertexId v : inst.decomposition.flaps[f].q) flap_of[v] = f;
    for (int v = 0; v < n; v++) {
        bool ok = vrows[v].flap ? (flap_of[v] == vrows[v].a)
                                : (runs.first[v] == vrows[v].a && runs.last[v] == vrows[v].b);
        if (!ok)
            throw std::runtime_error("graph file: vertex table disagrees with bags/flaps at vertex " +
                                     std::to_string(v));
    }
    return inst;
}

std::string serialize_spanner(const std::vector<EdgeId>& edges) {
    std::ostringstream os;
    os << kSpannerHeader << "\n";
    os << "edges " << edges.size() << "\n";
    for (EdgeId e : edges) os << e << "\n";
    return os.str();
}

std::vector<EdgeId> parse_spanner(const std::string& text) {
    std::istringstream is(text);
    if (next_line(is, "header") != kSpannerHeader) throw std::runtime_error("spanner file: bad header");
    std::istringstream ls(next_line(is, "edges header"));
    std::string tag;
    int cnt;
    ls >> tag >> cnt;
    if (tag != "edges" || ls.fail() || cnt < 0) throw std::runtime_error("spanner file: bad edge count");
    std::vector<EdgeId> out(cnt);
    for (int i = 0; i < cnt; i++) {
        std::istringstream el(next_line(is, "edge id"));
        el >> out[i];
        if (el.fail()) throw std::runtime_error("spanner file: bad edge id row");
    }
    return out;
}

std::string certificate_json(const PipelineResult& r) {
    nlohmann::json j;
    j["format-version"] = 1;
    j["epsilon"] = rat(r.cert.epsilon);
    j["completed"]["vertices"] = r.completed_vertices;
    j["completed"]["edges"] = r.completed_edges;
    j["completed"]["max-stretch"] = rat(r.cert.max_stretch);
    j["completed"]["stretch-witness"] = {r.cert.witness_u, r.cert.witness_v};
    j["completed"]["spanner-weight"] = rat(r.cert.spanner_weight);
    j["completed"]["tree-weight"] = rat(r.cert.tree_weight);
    j["completed"]["mst-weight"] = rat(r.cert.mst_weight);
    j["completed"]["spanner-size"] = r.cert.spanner.size();
    j["scheme"]["value"] = rat(r.cert.scheme_value);
    j["scheme"]["valid"] = r.cert.scheme_valid;
    j["scheme"]["acyclic"] = r.cert.scheme_acyclic;
    j["checks"]["stretch-ok"] = r.cert.stretch_ok;
    j["checks"]["weight-bound-ok"] = r.cert.bound_ok;
    j["checks"]["dual-bound-ok"] = r.cert.dual_ok;
    j["checks"]["certified"] = r.cert.certified;
    if (!r.cert.reason.empty()) j["checks"]["reason"] = r.cert.reason;
    j["lifted"]["edges"] = r.lifted.size();
    j["lifted"]["weight"] = rat(r.lifted_weight);
    j["lifted"]["mst-weight"] = rat(r.original_mst);
    j["lifted"]["lightness"] = rat(r.lightness);
    j["lifted"]["max-stretch"] = rat(r.lifted_stretch);
    j["lifted"]["stretch-ok"] = r.lifted_stretch_ok;
    return j.dump(2) + "\n";
}

std::string scheme_json(const WeightedGraph& g, const ChargingScheme& s, const SchemeReport& rep,
                        const AcyclicReport& arep) {
    nlohmann::json j;
    j["format-version"] = 1;
    j["tree"]["root"] = s.tree.root;
    j["tree"]["edges"] = s.tree.edges;
    nlohmann::json moves = nlohmann::json::array();
    for (const auto& m : s.moves) {
        nlohmann::json mv;
        mv["edge"] = m.edge;
        mv["path"] = m.path;
        mv["amount"] = rat(m.amount);
        moves.push_back(mv);
    }
    j["moves"] = moves;
    j["edge-count"] = g.edge_count();
    j["value"] = rat(rep.value);
    j["valid"] = rep.valid;
    j["acyclic"] = arep.acyclic;
    nlohmann::json viol = nlohmann::json::array();
    for (const auto& v : rep.violations) viol.push_back(v.condition + ": " + v.witness);
    for (const auto& v : arep.violations) viol.push_back(v.condition + ": " + v.witness);
    j["violations"] = viol;
    return j.dump(2) + "\n";
}

SweepConfig parse_sweep_config(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SweepConfig cfg;
    if (j.contains("ks")) cfg.ks = j["ks"].get<std::vector<int>>();
    if (j.contains("epsilons")) cfg.epsilons = j["epsilons"].get<std::vector<std::string>>();
    if (j.contains("count")) cfg.count = j["count"].get<int>();
    if (j.contains("n_min")) cfg.n_min = j["n_min"].get<int>();
    if (j.contains("n_max")) cfg.n_max = j["n_max"].get<int>();
    if (j.contains("base_seed")) cfg.base_seed = j["base_seed"].get<std::uint64_t>();
    if (j.contains("weights")) cfg.weights = j["weights"].get<std::string>();
    if (j.contains("max_weight")) cfg.max_weight = j["max_weight"].get<std::int64_t>();
    if (j.contains("flaps")) cfg.flaps = j["flaps"].get<bool>();
    return cfg;
}

InstanceSpec corpus_spec(const SweepConfig& cfg, int k, int index) {
    InstanceSpec spec;
    spec.k = k;
    int span = cfg.n_max - cfg.n_min;
    spec.n = cfg.n_min + (cfg.count <= 1 ? 0 : span * index / (cfg.count - 1));
    spec.seed = cfg.base_seed * 1000003ULL + std::uint64_t(k) * 10007ULL + std::uint64_t(index);
    if (cfg.weights == "unit")
        spec.weights = WeightModel::Unit;
    else if (cfg.weights == "exp")
        spec.weights = WeightModel::ExpLike;
    else
        spec.weights = WeightModel::UniformInt;
    spec.max_weight = cfg.max_weight;
    if (cfg.flaps) {
        spec.flaps.push_back({k, 1, 2});
        if (k >= 2) spec.flaps.push_back({(k + 2) / 2, k + 1 - (k + 2) / 2, 1});
    }
    return spec;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "# catspan-sweep 1\n";
    os << "seed,n,k,eps,w_mst,w_tree,w_spanner,v,stretch,bound_ok\n";
    for (const auto& r : rows)
        os << r.seed << "," << r.n << "," << r.k << "," << r.eps << "," << rat(r.w_mst) << ","
           << rat(r.w_tree) << "," << rat(r.w_spanner) << "," << rat(r.value) << ","
           << rat(r.stretch) << "," << (r.bound_ok ? 1 : 0) << "\n";
    return os.str();
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    struct Job {
        int k;
        int index;
    };
    std::vector<Job> jobs;
    for (int k : cfg.ks)
        for (int i = 0; i < cfg.count; i++) jobs.push_back({k, i});

    std::vector<std::vector<SweepRow>> results(jobs.size());
    int threads = 1;
    if (const char* env = std::getenv("CATSPAN_THREADS")) {
        threads = std::max(1, std::atoi(env));
        threads = std::min<int>(threads, std::max(1u, std::thread::hardware_concurrency()));
    }

    auto work = [&](size_t j) {
        InstanceSpec spec = corpus_spec(cfg, jobs[j].k, jobs[j].index);
        Instance inst = gen_kcaterpillar(spec);
        PreparedInstance prep = prepare_instance(inst.graph, inst.decomposition);
        for (const std::string& es : cfg.epsilons) {
            Rational eps = parse_rational(es);
            PipelineResult r = run_pipeline(inst.graph, prep, eps);
            SweepRow row;
            row.seed = spec.seed;
            row.n = spec.n;
            row.k = spec.k;
            row.eps = es;
            row.w_mst = r.cert.mst_weight;
            row.w_tree = r.cert.tree_weight;
            row.w_spanner = r.cert.spanner_weight;
            row.value = r.cert.scheme_value;
            row.stretch = r.cert.max_stretch;
            row.bound_ok = r.cert.bound_ok && r.cert.stretch_ok && r.lifted_stretch_ok;
            results[j].push_back(row);
        }
    };

    if (threads <= 1) {
        for (size_t j = 0; j < jobs.size(); j++) work(j);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        for (int t = 0; t < threads; t++)
            pool.emplace_back([&] {
                for (size_t j = next.fetch_add(1); j < jobs.size(); j = next.fetch_add(1)) work(j);
            });
        for (auto& th : pool) th.join();
    }

    std::vector<SweepRow> rows;
    for (auto& rs : results) rows.insert(rows.end(), rs.begin(), rs.end());
    return rows;
}

}  // namespace catspan
