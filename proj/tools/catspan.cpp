// catspan command line: generate instances, build and certify spanners,
// dump/check charging schemes, run corpus sweeps.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "catspan/io.hpp"

using namespace catspan;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << data;
}

std::vector<FlapProfile> parse_flap_args(const std::vector<std::string>& args) {
    std::vector<FlapProfile> out;
    for (const auto& a : args) {
        FlapProfile f;
        if (sscanf(a.c_str(), "%d:%d:%d", &f.p, &f.q, &f.count) != 3)
            throw std::runtime_error("bad --flaps value '" + a + "' (want p:q:count)");
        out.push_back(f);
    }
    return out;
}

WeightModel parse_weights(const std::string& w) {
    if (w == "uniform") return WeightModel::UniformInt;
    if (w == "unit") return WeightModel::Unit;
    if (w == "exp") return WeightModel::ExpLike;
    throw std::runtime_error("bad --weights value '" + w + "' (uniform|unit|exp)");
}

int fail(const std::string& what) {
    nlohmann::json j;
    j["error"] = what;
    std::cerr << j.dump() << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"light spanners for bounded catwidth graphs, with verifiable charging certificates"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a seeded k-path or k-caterpillar instance");
    int gen_n = 30, gen_k = 2;
    std::vector<std::string> gen_flaps;
    std::string gen_weights = "uniform", gen_out;
    std::int64_t gen_maxw = 1000;
    std::uint64_t gen_seed = 1;
    gen->add_option("--n", gen_n, "total vertex count")->required();
    gen->add_option("--k", gen_k, "width parameter")->required();
    gen->add_option("--flaps", gen_flaps, "flap profile p:q:count (repeatable)");
    gen->add_option("--weights", gen_weights, "uniform|unit|exp");
    gen->add_option("--max-weight", gen_maxw, "uniform weight ceiling");
    gen->add_option("--seed", gen_seed, "64-bit seed");
    gen->add_option("--out", gen_out, "output graph file")->required();

    // spanner
    auto* sp = app.add_subcommand("spanner", "run the full pipeline and write the lifted spanner");
    std::string sp_in, sp_eps = "0.5", sp_out, sp_report;
    sp->add_option("--in", sp_in, "input graph file")->required();
    sp->add_option("--epsilon", sp_eps, "stretch slack (rational or decimal)")->required();
    sp->add_option("--out", sp_out, "output spanner file")->required();
    sp->add_option("--report", sp_report, "certificate JSON path");

    // verify
    auto* ver = app.add_subcommand("verify", "check a spanner's stretch against a graph");
    std::string ver_graph, ver_spanner, ver_eps = "0.5";
    ver->add_option("--graph", ver_graph)->required();
    ver->add_option("--spanner", ver_spanner)->required();
    ver->add_option("--epsilon", ver_eps)->required();

    // scheme
    auto* sch = app.add_subcommand("scheme", "build the charging scheme and run both verifiers");
    std::string sch_in, sch_dump;
    bool sch_check = false;
    sch->add_option("--in", sch_in)->required();
    sch->add_option("--dump", sch_dump, "write moves JSON here");
    sch->add_flag("--check", sch_check, "exit nonzero unless valid and acyclic");

    // sweep
    auto* sw = app.add_subcommand("sweep", "run a seeded corpus and emit CSV");
    std::string sw_config, sw_out;
    sw->add_option("--config", sw_config, "sweep config JSON")->required();
    sw->add_option("--out", sw_out, "output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            InstanceSpec spec;
            spec.n = gen_n;
            spec.k = gen_k;
            spec.flaps = parse_flap_args(gen_flaps);
            spec.weights = parse_weights(gen_weights);
            spec.max_weight = gen_maxw;
            spec.seed = gen_seed;
            Instance inst = spec.flaps.empty() ? gen_kpath(spec) : gen_kcaterpillar(spec);
            spit(gen_out, serialize_instance(inst));
            std::cout << "wrote " << gen_out << " (n=" << inst.graph.vertex_count()
                      << " m=" << inst.graph.edge_count() << " bags=" << inst.decomposition.bags.size()
                      << " flaps=" << inst.decomposition.flaps.size() << ")\n";
            return 0;
        }
        if (sp->parsed()) {
            Instance inst = parse_instance(slurp(sp_in));
            Rational eps = parse_rational(sp_eps);
            PipelineResult r = pipeline(inst.graph, inst.decomposition, eps);
            spit(sp_out, serialize_spanner(r.lifted));
            if (!sp_report.empty()) spit(sp_report, certificate_json(r));
            std::cout << "spanner edges " << r.lifted.size() << " weight " << r.lifted_weight.str()
                      << " lightness " << r.lightness.str() << " stretch " << r.lifted_stretch.str()
                      << " certified " << (r.cert.certified && r.lifted_stretch_ok ? "yes" : "no")
                      << "\n";
            return r.cert.certified && r.lifted_stretch_ok ? 0 : 1;
        }
        if (ver->parsed()) {
            Instance inst = parse_instance(slurp(ver_graph));
            auto edges = parse_spanner(slurp(ver_spanner));
            Rational eps = parse_rational(ver_eps);
            std::vector<char> alive(inst.graph.edge_count(), 0);
            for (EdgeId e : edges) {
                if (e < 0 || e >= inst.graph.edge_count()) throw std::runtime_error("spanner edge id out of range");
                alive[e] = 1;
            }
            auto dg = all_pairs_distances(inst.graph);
            auto ds = all_pairs_distances(inst.graph, &alive);
            Rational worst(1);
            VertexId wu = -1, wv = -1;
            bool connected_ok = true;
            int n = inst.graph.vertex_count();
            for (VertexId u = 0; u < n; u++)
                for (VertexId v = u + 1; v < n; v++) {
                    if (!dg.at(u, v)) continue;
                    if (!ds.at(u, v)) {
                        connected_ok = false;
                        wu = u;
                        wv = v;
                        continue;
                    }
                    if (dg.at(u, v)->is_zero()) continue;
                    Rational ratio = *ds.at(u, v) / *dg.at(u, v);
                    if (worst < ratio) {
                        worst = ratio;
                        wu = u;
                        wv = v;
                    }
                }
            bool ok = connected_ok && worst <= Rational(1) + eps;
            std::cout << "max-stretch " << worst.str();
            if (wu >= 0) std::cout << " witness " << wu << " " << wv;
            std::cout << (connected_ok ? "" : " (disconnected pair)") << "\n";
            return ok ? 0 : 1;
        }
        if (sch->parsed()) {
            Instance inst = parse_instance(slurp(sch_in));
            PreparedInstance prep = prepare_instance(inst.graph, inst.decomposition);
            if (!sch_dump.empty())
                spit(sch_dump, scheme_json(prep.completed.graph, prep.scheme, prep.scheme_report,
                                           prep.acyclic_report));
            std::cout << "moves " << prep.scheme.moves.size() << " value "
                      << prep.scheme_report.value.str() << " valid "
                      << (prep.scheme_report.valid ? "yes" : "no") << " acyclic "
                      << (prep.acyclic_report.acyclic ? "yes" : "no") << "\n";
            if (sch_check && !(prep.scheme_report.valid && prep.acyclic_report.acyclic)) return 1;
            return 0;
        }
        if (sw->parsed()) {
            SweepConfig cfg = parse_sweep_config(slurp(sw_config));
            auto rows = run_sweep(cfg);
            spit(sw_out, sweep_csv(rows));
            int bad = 0;
            for (const auto& r : rows)
                if (!r.bound_ok) bad++;
            std::cout << "rows " << rows.size() << " failures " << bad << "\n";
            return bad == 0 ? 0 : 1;
        }
    } catch (const std::exception& ex) {
        return fail(ex.what());
    }
    return fail("no subcommand");
}
