#pragma once

#include <string>
#include <vector>

#include "catspan/charging.hpp"
#include "catspan/generators.hpp"
#include "catspan/spanner.hpp"

namespace catspan {

// Line-oriented graph file: header, vertex interval table, edge table,
// bag table, flap table. Weights are serialized as num/den so files
// round-trip exactly.
std::string serialize_instance(const Instance& inst);
Instance parse_instance(const std::string& text);

std::string serialize_spanner(const std::vector<EdgeId>& edges);
std::vector<EdgeId> parse_spanner(const std::string& text);

// JSON documents (certificates, scheme dumps) as strings; keys are sorted so
// output bytes are deterministic.
std::string certificate_json(const PipelineResult& r);
std::string scheme_json(const WeightedGraph& g, const ChargingScheme& s, const SchemeReport& rep,
                        const AcyclicReport& arep);

struct SweepConfig {
    std::vector<int> ks{1, 2, 3, 4};
    std::vector<std::string> epsilons{"0.1", "0.5", "1.0"};
    int count = 50;
    int n_min = 20;
    int n_max = 200;
    std::uint64_t base_seed = 1;
    std::string weights = "uniform";
    std::int64_t max_weight = 1000;
    bool flaps = true;
};

SweepConfig parse_sweep_config(const std::string& text);

// The instance a sweep row is generated from; shared with the acceptance
// suite so both exercise the same corpus.
InstanceSpec corpus_spec(const SweepConfig& cfg, int k, int index);

struct SweepRow {
    std::uint64_t seed = 0;
    int n = 0;
    int k = 0;
    std::string eps;
    Rational w_mst, w_tree, w_spanner, value, stretch;
    bool bound_ok = false;
};

std::string sweep_csv(const std::vector<SweepRow>& rows);

// Runs the whole sweep; thread count capped by CATSPAN_THREADS (default 1).
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

}  // namespace catspan
