#include "catspan/generators.hpp"

#include <algorithm>
#include <stdexcept>

#include "catspan/rng.hpp"

namespace catspan {

namespace {

Rational draw_weight(SplitMix64& rng, const InstanceSpec& spec) {
    switch (spec.weights) {
        case WeightModel::Unit:
            return Rational(1);
        case WeightModel::ExpLike: {
            std::int64_t w = 1;
            std::uint64_t e = rng.next_below(11);
            for (std::uint64_t i = 0; i < e; i++) w *= 2;
            return Rational(w);
        }
        case WeightModel::UniformInt:
        default:
            return Rational(1 + std::int64_t(rng.next_below(std::uint64_t(spec.max_weight))));
    }
}

// choose `m` distinct elements of `pool` by repeated draws on the shrinking
// remainder; order of choice is the draw order, result sorted
std::vector<VertexId> choose(SplitMix64& rng, std::vector<VertexId> pool, int m) {
    std::vector<VertexId> out;
    for (int i = 0; i < m; i++) {
        size_t j = size_t(rng.next_below(pool.size()));
        out.push_back(pool[j]);
        pool.erase(pool.begin() + ptrdiff_t(j));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Instance gen_spine(const InstanceSpec& spec, int n_spine, SplitMix64& rng) {
    int k = spec.k;
    if (k < 1) throw std::invalid_argument("gen: k must be >= 1");
    if (n_spine < k + 1) throw std::invalid_argument("gen: need n >= k+1 spine vertices");

    Instance inst;
    inst.graph = WeightedGraph(n_spine);
    inst.decomposition.width = k;

    std::vector<VertexId> bag;
    for (VertexId v = 0; v <= k; v++) bag.push_back(v);
    for (size_t i = 0; i < bag.size(); i++)
        for (size_t j = i + 1; j < bag.size(); j++)
            inst.graph.add_edge(bag[i], bag[j], draw_weight(rng, spec));
    inst.decomposition.bags.push_back(bag);

    for (VertexId v = k + 1; v < n_spine; v++) {
        size_t drop = size_t(rng.next_below(bag.size()));
        bag.erase(bag.begin() + ptrdiff_t(drop));
        for (VertexId u : bag) inst.graph.add_edge(u, v, draw_weight(rng, spec));
        bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
        inst.decomposition.bags.push_back(bag);
    }
    return inst;
}

}  // namespace

Instance gen_kpath(const InstanceSpec& spec) {
    if (!spec.flaps.empty()) {
        for (const auto& f : spec.flaps)
            if (f.count > 0) throw std::invalid_argument("gen_kpath: flap profile must be empty");
    }
    SplitMix64 rng(spec.seed);
    return gen_spine(spec, spec.n, rng);
}

Instance gen_kcaterpillar(const InstanceSpec& spec) {
    int total_q = 0;
    for (const auto& f : spec.flaps) {
        if (f.count < 0) throw std::invalid_argument("gen_kcaterpillar: negative flap count");
        if (f.count == 0) continue;
        if (f.p < 1 || f.q < 1 || f.p + f.q != spec.k + 1)
            throw std::invalid_argument("gen_kcaterpillar: flap profile needs p,q >= 1 and p+q = k+1");
        total_q += f.q * f.count;
    }
    SplitMix64 rng(spec.seed);
    Instance inst = gen_spine(spec, spec.n - total_q, rng);

    for (const auto& prof : spec.flaps) {
        for (int c = 0; c < prof.count; c++) {
            Flap fl;
            fl.anchor = int(rng.next_below(inst.decomposition.bags.size()));
            fl.p = choose(rng, inst.decomposition.bags[fl.anchor], prof.p);
            for (int i = 0; i < prof.q; i++) fl.q.push_back(inst.graph.add_vertex());
            for (VertexId p : fl.p)
                for (VertexId q : fl.q) inst.graph.add_edge(p, q, draw_weight(rng, spec));
            for (size_t i = 0; i < fl.q.size(); i++)
                for (size_t j = i + 1; j < fl.q.size(); j++)
                    inst.graph.add_edge(fl.q[i], fl.q[j], draw_weight(rng, spec));
            inst.decomposition.flaps.push_back(fl);
        }
    }
    return inst;
}

}  // namespace catspan
