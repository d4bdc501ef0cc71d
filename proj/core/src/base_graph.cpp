#include "tiescan/base_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tiescan/errors.hpp"

namespace tiescan {

namespace {

struct UnionFind {
    std::vector<int> parent, rank_;

    explicit UnionFind(int n) : parent(n), rank_(n, 0) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent[b] = a;
        if (rank_[a] == rank_[b]) rank_[a]++;
        return true;
    }
};

struct WeightedEdge {
    double w;
    int u, v;
};

std::vector<WeightedEdge> sorted_edges(const DistanceMatrix& dist) {
    std::vector<WeightedEdge> edges;
    edges.reserve(static_cast<std::size_t>(dist.K) * (dist.K - 1) / 2);
    for (int u = 0; u < dist.K; ++u)
        for (int v = u + 1; v < dist.K; ++v) edges.push_back({dist.at(u, v), u, v});
    std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        if (a.w != b.w) return a.w < b.w;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
    return edges;
}

void require_at_least_two(const DistanceMatrix& dist) {
    if (dist.K < 2) throw InputError("graph construction needs at least 2 distinct values");
}

} // namespace

BaseGraph BaseGraph::from_edges(int K, std::vector<Edge> edges) {
    for (auto& e : edges) {
        if (e.u == e.v) throw InputError("self-loop in graph");
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u < 0 || e.v >= K) throw InputError("edge endpoint out of range");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    BaseGraph g;
    g.K = K;
    g.edges = std::move(edges);
    g.degree.assign(K, 0);
    g.neighbors.assign(K, {});
    for (const auto& e : g.edges) {
        g.degree[e.u]++;
        g.degree[e.v]++;
        g.neighbors[e.u].push_back(e.v);
        g.neighbors[e.v].push_back(e.u);
    }
    for (auto& nb : g.neighbors) std::sort(nb.begin(), nb.end());

    // edges_within_two[u]: one pass over edges, stamping the nodes whose
    // 2-neighborhood each edge touches.
    g.edges_within_two.assign(K, 0);
    std::vector<int> stamp(K, -1);
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        const Edge& e = g.edges[ei];
        auto touch = [&](int node) {
            if (stamp[node] != ei) {
                stamp[node] = ei;
                g.edges_within_two[node]++;
            }
        };
        touch(e.u);
        touch(e.v);
        for (int w : g.neighbors[e.u]) touch(w);
        for (int w : g.neighbors[e.v]) touch(w);
    }
    return g;
}

BaseGraph mst(const DistanceMatrix& dist) {
    require_at_least_two(dist);
    UnionFind uf(dist.K);
    std::vector<Edge> picked;
    picked.reserve(dist.K - 1);
    for (const auto& e : sorted_edges(dist)) {
        if (uf.unite(e.u, e.v)) {
            picked.push_back({e.u, e.v});
            if (static_cast<int>(picked.size()) == dist.K - 1) break;
        }
    }
    return BaseGraph::from_edges(dist.K, std::move(picked));
}

BaseGraph union_of_msts(const DistanceMatrix& dist) {
    require_at_least_two(dist);
    auto edges = sorted_edges(dist);
    UnionFind uf(dist.K);
    std::vector<Edge> picked;
    std::size_t i = 0;
    while (i < edges.size()) {
        // Process one weight class against the strictly-smaller forest.
        std::size_t j = i;
        while (j < edges.size() && edges[j].w == edges[i].w) ++j;
        for (std::size_t k = i; k < j; ++k)
            if (uf.find(edges[k].u) != uf.find(edges[k].v))
                picked.push_back({edges[k].u, edges[k].v});
        for (std::size_t k = i; k < j; ++k) uf.unite(edges[k].u, edges[k].v);
        i = j;
    }
    return BaseGraph::from_edges(dist.K, std::move(picked));
}

BaseGraph nearest_neighbor_link(const DistanceMatrix& dist) {
    require_at_least_two(dist);
    std::vector<Edge> picked;
    for (int u = 0; u < dist.K; ++u) {
        double best = std::numeric_limits<double>::infinity();
        for (int v = 0; v < dist.K; ++v)
            if (v != u) best = std::min(best, dist.at(u, v));
        for (int v = 0; v < dist.K; ++v)
            if (v != u && dist.at(u, v) == best)
                picked.push_back({std::min(u, v), std::max(u, v)});
    }
    return BaseGraph::from_edges(dist.K, std::move(picked));
}

BaseGraph graph_from_kind(const DistanceMatrix& dist, GraphKind kind,
                          const std::vector<Edge>& user_edges) {
    switch (kind) {
    case GraphKind::mst: return mst(dist);
    case GraphKind::union_msts: return union_of_msts(dist);
    case GraphKind::nearest_neighbor: return nearest_neighbor_link(dist);
    case GraphKind::user_edges:
        if (user_edges.empty()) throw ConfigError("user-edges graph requires an edge list");
        return BaseGraph::from_edges(dist.K, user_edges);
    }
    throw ConfigError("unknown graph kind");
}

ConditionReport condition_diagnostics(const BaseGraph& g, const std::vector<int>& counts,
                                      long long n, double warn_threshold) {
    if (static_cast<int>(counts.size()) != g.K)
        throw InputError("counts length does not match graph size");
    const int K = g.K;
    const double nn = static_cast<double>(n);
    const double n32 = std::pow(nn, 1.5);

    // Per-node helpers. m: multiplicities, mv[u] = sum of m over u and its
    // neighbors, mn[u] = sum over neighbors only.
    std::vector<double> m(K), mn(K, 0.0), mv(K);
    for (int k = 0; k < K; ++k) m[k] = counts[k];
    for (int u = 0; u < K; ++u) {
        for (int v : g.neighbors[u]) mn[u] += m[v];
        mv[u] = m[u] + mn[u];
    }

    double c0 = g.edge_count();
    double inv_sum = 0.0;
    for (const auto& e : g.edges) inv_sum += 1.0 / (m[e.u] * m[e.v]);

    double cond2 = 0.0;
    for (int u = 0; u < K; ++u)
        cond2 += m[u] * (m[u] + g.degree[u]) * (mv[u] + static_cast<double>(g.edges_within_two[u]));

    double cond3 = 0.0;
    {
        std::vector<int> stamp(K, -1);
        for (int ei = 0; ei < g.edge_count(); ++ei) {
            const Edge& e = g.edges[ei];
            double mw = 0.0;
            auto touch = [&](int node) {
                if (stamp[node] != ei) {
                    stamp[node] = ei;
                    mw += m[node];
                }
            };
            touch(e.u);
            touch(e.v);
            for (int w : g.neighbors[e.u]) touch(w);
            for (int w : g.neighbors[e.v]) touch(w);
            double left = m[e.u] + m[e.v] + g.degree[e.u] + g.degree[e.v];
            double right = mw + static_cast<double>(g.edges_within_two[e.u]) +
                           static_cast<double>(g.edges_within_two[e.v]);
            cond3 += left * right;
        }
    }

    double cond4 = 0.0;
    for (int u = 0; u < K; ++u) {
        double d = g.degree[u] - 2.0;
        cond4 += d * d / (4.0 * m[u]);
    }
    cond4 -= (c0 - K) * (c0 - K) / nn;

    // Union-graph quantities: |Gbar| and the union-weighted degrees.
    double gbar = 0.0;
    for (int k = 0; k < K; ++k) gbar += m[k] * (m[k] - 1) / 2.0;
    for (const auto& e : g.edges) gbar += m[e.u] * m[e.v];

    double cond6 = 0.0;
    for (int u = 0; u < K; ++u) {
        double inner = 0.0;
        inner += m[u] * (m[u] + mn[u]); // v = u term of the second factor
        for (int v : g.neighbors[u]) inner += m[v] * (m[v] + mn[v]);
        cond6 += m[u] * m[u] * m[u] * mv[u] * inner;
    }

    double cond7 = 0.0;
    {
        std::vector<double> node_inner(K);
        for (int w = 0; w < K; ++w) node_inner[w] = m[w] * (g.degree[w] * m[w] + mn[w]);
        std::vector<int> stamp(K, -1);
        for (int ei = 0; ei < g.edge_count(); ++ei) {
            const Edge& e = g.edges[ei];
            double inner = 0.0;
            auto touch = [&](int node) {
                if (stamp[node] != ei) {
                    stamp[node] = ei;
                    inner += node_inner[node];
                }
            };
            touch(e.u);
            touch(e.v);
            for (int w : g.neighbors[e.u]) touch(w);
            for (int w : g.neighbors[e.v]) touch(w);
            cond7 += m[e.u] * m[e.v] * (m[e.u] * mv[e.u] + m[e.v] * mv[e.v]) * inner;
        }
    }

    double cond8 = 0.0;
    for (int k = 0; k < K; ++k) {
        double dbar = (m[k] - 1) + mn[k]; // union-weighted degree of an observation in k
        cond8 += m[k] * dbar * dbar;
    }
    cond8 -= 4.0 * gbar * gbar / nn;

    auto entry = [&](std::string label, double q, double norm) {
        ConditionEntry e;
        e.label = std::move(label);
        e.quantity = q;
        e.normalizer = norm;
        e.ratio = q / norm;
        e.warn = std::abs(e.ratio) > warn_threshold;
        return e;
    };

    ConditionReport report;
    report.entries.push_back(entry("1a: |C0|", c0, nn));
    report.entries.push_back(entry("1b: sum 1/(mu mv)", inv_sum, nn));
    report.entries.push_back(entry("2: node neighborhood mass", cond2, n32));
    report.entries.push_back(entry("3: edge neighborhood mass", cond3, n32));
    report.entries.push_back(entry("4: degree spread (averaging)", cond4, nn));
    report.entries.push_back(entry("5: |Gbar|", gbar, nn));
    report.entries.push_back(entry("6: union node neighborhood mass", cond6, n32));
    report.entries.push_back(entry("7: union edge neighborhood mass", cond7, n32));
    report.entries.push_back(entry("8: degree spread (union)", cond8, nn));
    return report;
}

} // namespace tiescan
