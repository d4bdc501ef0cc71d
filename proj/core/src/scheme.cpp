#include "tiescan/scheme.hpp"

#include <algorithm>

#include "tiescan/errors.hpp"

namespace tiescan {

double PairWeightScheme::total_weight() const {
    double w = 0.0;
    for (int k = 0; k < K; ++k) {
        double mk = counts[k];
        w += within[k] * mk * (mk - 1) / 2.0;
    }
    for (std::size_t e = 0; e < edges.size(); ++e)
        w += cross[e] * double(counts[edges[e].u]) * double(counts[edges[e].v]);
    return w;
}

PairWeightScheme scheme_from(const BaseGraph& g, const std::vector<int>& counts, Mode mode) {
    if (static_cast<int>(counts.size()) != g.K)
        throw InputError("counts length does not match graph size");
    PairWeightScheme s;
    s.mode = mode;
    s.K = g.K;
    s.counts = counts;
    s.n = 0;
    for (int c : counts) {
        if (c < 1) throw InputError("category with zero multiplicity");
        s.n += c;
    }
    s.within.resize(g.K);
    for (int k = 0; k < g.K; ++k)
        s.within[k] = mode == Mode::averaging ? 2.0 / counts[k] : 1.0;
    s.edges = g.edges;
    s.cross.resize(s.edges.size());
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
        const Edge& ed = s.edges[e];
        s.cross[e] = mode == Mode::averaging
                         ? 1.0 / (double(counts[ed.u]) * double(counts[ed.v]))
                         : 1.0;
    }
    s.adjacency.assign(g.K, {});
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
        const Edge& ed = s.edges[e];
        s.adjacency[ed.u].emplace_back(ed.v, s.cross[e]);
        s.adjacency[ed.v].emplace_back(ed.u, s.cross[e]);
    }
    for (auto& adj : s.adjacency) std::sort(adj.begin(), adj.end());
    return s;
}

double group_pair_weight(const PairWeightScheme& scheme, std::span<const int> group_counts) {
    double r = 0.0;
    for (int k = 0; k < scheme.K; ++k) {
        double gk = group_counts[k];
        r += scheme.within[k] * gk * (gk - 1) / 2.0;
    }
    for (std::size_t e = 0; e < scheme.edges.size(); ++e)
        r += scheme.cross[e] * double(group_counts[scheme.edges[e].u]) *
             double(group_counts[scheme.edges[e].v]);
    return r;
}

} // namespace tiescan
