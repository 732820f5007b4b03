#pragma once

#include <string>
#include <vector>

#include "catspan/graph.hpp"

namespace catspan {

// A (p,q)-flap: P and Q partition a clique of size p+q, all of P lies in the
// anchor spine bag, and P separates Q from the rest of the graph.
struct Flap {
    std::vector<VertexId> p;  // sorted
    std::vector<VertexId> q;  // sorted
    int anchor = 0;           // spine bag index

    bool operator==(const Flap&) const = default;
};

// Path decomposition spine (ordered bags) plus attached flaps. `width` is the
// declared caterpillar parameter k: spine bags have size <= width+1 except
// that degree reduction may raise the spine by one, and flaps satisfy
// p+q-1 <= width.
struct CaterpillarDecomposition {
    std::vector<std::vector<VertexId>> bags;  // each sorted
    std::vector<Flap> flaps;
    int width = 0;

    bool operator==(const CaterpillarDecomposition&) const = default;
};

struct ValidationIssue {
    std::string condition;
    std::string witness;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string to_string() const;
};

ValidationReport validate(const WeightedGraph& g, const CaterpillarDecomposition& d);

// Refine the spine so consecutive bags differ by exactly one vertex (one
// insertion or one removal). Duplicate adjacent bags are merged, empty
// leading/trailing bags dropped, flap anchors remapped. Idempotent.
CaterpillarDecomposition nicify(const CaterpillarDecomposition& d);

bool is_nice(const CaterpillarDecomposition& d);

// Interval realization of a nice decomposition. Spine vertex v covers its
// bag run [first, last]; endpoints are perturbed by per-vertex rational
// offsets so all endpoints are pairwise distinct. Flap Q-vertices get short
// nested intervals packed strictly inside their anchor bag's span, after all
// spine left endpoints of that bag.
class IntervalLayout {
public:
    int size() const { return int(left_.size()); }
    const Rational& left(VertexId v) const { return left_[v]; }
    const Rational& right(VertexId v) const { return right_[v]; }
    bool intersects(VertexId u, VertexId v) const {
        return !(right_[u] < left_[v]) && !(right_[v] < left_[u]);
    }
    bool left_before(VertexId u, VertexId v) const { return left_[u] < left_[v]; }

    // -1 for spine vertices, otherwise the index of the owning flap.
    int flap_of(VertexId v) const { return flap_of_[v]; }
    bool is_spine(VertexId v) const { return flap_of_[v] < 0; }

    // All vertices sorted by increasing left endpoint.
    std::vector<VertexId> by_left() const;

    VertexId leftmost() const;
    VertexId rightmost() const;

    friend IntervalLayout interval_layout(const CaterpillarDecomposition& d);

private:
    std::vector<Rational> left_, right_;
    std::vector<int> flap_of_;
};

IntervalLayout interval_layout(const CaterpillarDecomposition& d);

// (max spine bag size - 1, max of that and p+q-1 over flaps)
std::pair<int, int> widths(const CaterpillarDecomposition& d);

}  // namespace catspan
