#pragma once

#include <span>
#include <utility>
#include <vector>

#include "tiescan/base_graph.hpp"
#include "tiescan/sequence.hpp"
#include "tiescan/types.hpp"

namespace tiescan {

// Category-level pair weights. Observation pairs inside category k carry
// weight within[k] each (averaging: 2/m_k, union: 1); pairs across a
// graph edge (u,v) carry weight cross[e] each (averaging: 1/(m_u m_v),
// union: 1). All pair sums downstream are computed from these in closed
// form, never by materializing observation pairs.
struct PairWeightScheme {
    Mode mode = Mode::averaging;
    int K = 0;
    long long n = 0;
    std::vector<int> counts;
    std::vector<double> within;
    std::vector<Edge> edges;
    std::vector<double> cross; // parallel to edges
    // adjacency[k] = (neighbor, cross weight) pairs, sorted by neighbor
    std::vector<std::vector<std::pair<int, double>>> adjacency;

    // Sum of all pair weights. Averaging: (n - K) + |C0|. Union: size of
    // the union graph.
    double total_weight() const;
};

PairWeightScheme scheme_from(const BaseGraph& g, const std::vector<int>& counts, Mode mode);

// Weighted pair sum restricted to one group with the given per-category
// membership counts. This is the from-scratch evaluator used by tests and
// by the exhaustive enumerators.
double group_pair_weight(const PairWeightScheme& scheme, std::span<const int> group_counts);

} // namespace tiescan
