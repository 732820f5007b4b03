#pragma once

#include <cstdint>
#include <vector>

#include "catspan/decomposition.hpp"
#include "catspan/graph.hpp"

namespace catspan {

enum class WeightModel { UniformInt, Unit, ExpLike };

struct FlapProfile {
    int p = 1;
    int q = 1;
    int count = 0;
};

struct InstanceSpec {
    int n = 0;  // total vertex count, flap vertices included
    int k = 1;
    std::vector<FlapProfile> flaps;
    WeightModel weights = WeightModel::UniformInt;
    std::int64_t max_weight = 1000;
    std::uint64_t seed = 0;
};

struct Instance {
    WeightedGraph graph;
    CaterpillarDecomposition decomposition;
};

// Seeded k-path: a (k+1)-clique start, then each new vertex attaches to a
// k-clique window of the previous bag. Deterministic per seed.
Instance gen_kpath(const InstanceSpec& spec);

// gen_kpath spine plus (p,q)-flaps per the profile; each flap picks a
// p-subset of a random spine bag and attaches q new vertices forming the
// full clique.
Instance gen_kcaterpillar(const InstanceSpec& spec);

}  // namespace catspan
