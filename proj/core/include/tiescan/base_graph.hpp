#pragma once

#include <string>
#include <vector>

#include "tiescan/distance.hpp"

namespace tiescan {

struct Edge {
    int u = 0;
    int v = 0; // u < v

    bool operator==(const Edge&) const = default;
    bool operator<(const Edge& o) const { return u != o.u ? u < o.u : v < o.v; }
};

// Similarity graph on the K distinct values, with the structural
// aggregates needed downstream:
//   degree[u]          number of incident edges
//   neighbors[u]       sorted adjacency (excludes u itself)
//   edges_within_two[u] number of edges with at least one endpoint in
//                       {u} union neighbors[u]
struct BaseGraph {
    int K = 0;
    std::vector<Edge> edges; // sorted, deduplicated, no self-loops
    std::vector<int> degree;
    std::vector<std::vector<int>> neighbors;
    std::vector<long long> edges_within_two;

    int edge_count() const { return static_cast<int>(edges.size()); }

    // Normalizes, validates and computes the aggregates.
    static BaseGraph from_edges(int K, std::vector<Edge> edges);
};

// Minimum spanning tree by Kruskal with deterministic (weight, u, v)
// tie-breaking.
BaseGraph mst(const DistanceMatrix& dist);

// Union of all minimum spanning trees: edge (u,v) of weight w belongs to
// some MST iff u and v are in different components of the graph formed by
// edges of weight strictly below w.
BaseGraph union_of_msts(const DistanceMatrix& dist);

// Every node linked to all of its nearest neighbors (ties included),
// deduplicated.
BaseGraph nearest_neighbor_link(const DistanceMatrix& dist);

BaseGraph graph_from_kind(const DistanceMatrix& dist, GraphKind kind,
                          const std::vector<Edge>& user_edges = {});

// One row per asymptotic regularity condition on the graph/multiplicity
// structure. The ratio compares the computed quantity to its natural
// growth rate (n or n^{3/2}); the flag is a heuristic warning only.
struct ConditionEntry {
    std::string label;
    double quantity = 0.0;
    double normalizer = 0.0;
    double ratio = 0.0;
    bool warn = false;
};

struct ConditionReport {
    std::vector<ConditionEntry> entries;
};

ConditionReport condition_diagnostics(const BaseGraph& g, const std::vector<int>& counts,
                                      long long n, double warn_threshold = 10.0);

} // namespace tiescan
