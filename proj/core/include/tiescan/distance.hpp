#pragma once

#include <vector>

#include "tiescan/sequence.hpp"
#include "tiescan/types.hpp"

namespace tiescan {

// Dense symmetric K x K distance matrix with zero diagonal.
struct DistanceMatrix {
    int K = 0;
    std::vector<double> values; // row-major K*K

    double at(int u, int v) const { return values[static_cast<std::size_t>(u) * K + v]; }
    void set(int u, int v, double d) {
        values[static_cast<std::size_t>(u) * K + v] = d;
        values[static_cast<std::size_t>(v) * K + u] = d;
    }

    static DistanceMatrix zeros(int K);

    // Restriction to a subset of categories, preserving subset order.
    DistanceMatrix restrict(const std::vector<int>& categories) const;

    void validate() const;
};

// Distances between category representatives. All representatives must
// share the same shape. normalized_frobenius rejects all-zero
// observations ("zero-norm observation").
DistanceMatrix pairwise_distances(const ObservationSequence& representatives, Metric metric);

double distance_between(const Observation& a, const Observation& b, Metric metric);

// Rounds every entry to the nearest multiple of eps, merging near-ties.
// eps <= 0 is a no-op.
DistanceMatrix quantize(const DistanceMatrix& d, double eps);

} // namespace tiescan
