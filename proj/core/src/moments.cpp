#include "tiescan/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tiescan/errors.hpp"
#include "tiescan/rng.hpp"

namespace tiescan {

namespace {

double choose2(double m) { return m * (m - 1) / 2.0; }

// Falling factorial x (x-1) ... (x-r+1).
double ff(double x, int r) {
    double p = 1.0;
    for (int i = 0; i < r; ++i) p *= x - i;
    return p;
}

// E[g_{i1} ... g_{ir}] over a uniform t-subset of n positions.
double subset_factor(long long n, long long t, int r) {
    if (r > n) return 0.0;
    return ff(double(t), r) / ff(double(n), r);
}

// E[g over r distinct positions, (1-g) over s other distinct positions].
double joint_factor(long long n, long long t, int r, int s) {
    if (r + s > n) return 0.0;
    return ff(double(t), r) * ff(double(n - t), s) / ff(double(n), r + s);
}

void check_split(long long n, long long t) {
    if (t < 1 || t > n - 1) throw InputError("split out of range");
}

// Pattern sums over ordered tuples of weighted pairs, all derived from
// the primitive aggregates. Names follow the tuple structure:
//   pair_*   ordered pairs of pairs, by overlap
//   q2..q6   ordered triples, by union size
//   x2/vshare/ydisj  joint-moment pattern sums (g-side x h-side)
struct PatternSums {
    double pair_same, pair_share, pair_disjoint;
    double q2, q3, q4, q5, q6;
    double x2, vshare, ydisj;
};

PatternSums pattern_sums(const SchemeAggregates& a) {
    PatternSums p{};
    p.pair_same = a.w2;
    p.pair_share = a.sd2 - 2 * a.w2;
    p.pair_disjoint = a.w1 * a.w1 + a.w2 - a.sd2;

    p.q2 = a.w3;
    p.q3 = 3 * (a.sad - 2 * a.w3) + 6 * a.tri;
    p.q4 = 3 * (a.w2 * a.w1 + a.w3 - a.sad) + (a.sd3 - 3 * a.sad + 4 * a.w3) + 6 * a.path;
    p.vshare = 0.5 * a.w1 * a.sd2 - a.w1 * a.w2 - 0.5 * a.sd3 + 1.5 * a.sad - a.sde + a.g -
               2 * a.w3 + 3 * a.tri;
    p.q5 = 6 * p.vshare;
    p.q6 = a.w1 * a.w1 * a.w1 - p.q2 - p.q3 - p.q4 - p.q5;

    p.x2 = a.w2 * a.w1 - a.g + a.w3;
    p.ydisj = 0.5 * a.w1 * p.pair_disjoint - a.w1 * a.sd2 + a.sd3 + a.sde - a.g +
              a.w2 * a.w1 + a.w3 - a.sad + a.path;
    return p;
}

// Raw joint moments E[R1^i R2^j] for i + j <= 3.
struct RawMoments {
    double e1, e2;
    double r1sq, r2sq, r1r2;
    double r1cube, r2cube, r1sq_r2, r1_r2sq;
};

RawMoments raw_moments(const SchemeAggregates& a, const PatternSums& p, long long n,
                       long long t, bool third) {
    RawMoments m{};
    m.e1 = a.w1 * subset_factor(n, t, 2);
    m.e2 = a.w1 * subset_factor(n, n - t, 2);
    m.r1sq = p.pair_same * subset_factor(n, t, 2) + p.pair_share * subset_factor(n, t, 3) +
             p.pair_disjoint * subset_factor(n, t, 4);
    m.r2sq = p.pair_same * subset_factor(n, n - t, 2) +
             p.pair_share * subset_factor(n, n - t, 3) +
             p.pair_disjoint * subset_factor(n, n - t, 4);
    m.r1r2 = p.pair_disjoint * joint_factor(n, t, 2, 2);
    if (!third) return m;

    auto triple = [&](long long tt) {
        return p.q2 * subset_factor(n, tt, 2) + p.q3 * subset_factor(n, tt, 3) +
               p.q4 * subset_factor(n, tt, 4) + p.q5 * subset_factor(n, tt, 5) +
               p.q6 * subset_factor(n, tt, 6);
    };
    m.r1cube = triple(t);
    m.r2cube = triple(n - t);
    m.r1sq_r2 = p.x2 * joint_factor(n, t, 2, 2) + 2 * p.vshare * joint_factor(n, t, 3, 2) +
                2 * p.ydisj * joint_factor(n, t, 4, 2);
    // Swap the roles of the two groups for the R2-heavy moment.
    m.r1_r2sq = p.x2 * joint_factor(n, n - t, 2, 2) +
                2 * p.vshare * joint_factor(n, n - t, 3, 2) +
                2 * p.ydisj * joint_factor(n, n - t, 4, 2);
    return m;
}

struct CentralMoments {
    double var1, var2, cov;
    double mu3_1, mu3_2, mu21, mu12; // third central, incl. cross terms
};

CentralMoments centralize(const RawMoments& m, bool third) {
    CentralMoments c{};
    c.var1 = std::max(0.0, m.r1sq - m.e1 * m.e1);
    c.var2 = std::max(0.0, m.r2sq - m.e2 * m.e2);
    c.cov = m.r1r2 - m.e1 * m.e2;
    if (!third) return c;
    c.mu3_1 = m.r1cube - 3 * m.e1 * m.r1sq + 2 * m.e1 * m.e1 * m.e1;
    c.mu3_2 = m.r2cube - 3 * m.e2 * m.r2sq + 2 * m.e2 * m.e2 * m.e2;
    c.mu21 = m.r1sq_r2 - 2 * m.e1 * m.r1r2 - m.e2 * m.r1sq + 2 * m.e1 * m.e1 * m.e2;
    c.mu12 = m.r1_r2sq - 2 * m.e2 * m.r1r2 - m.e1 * m.r2sq + 2 * m.e2 * m.e2 * m.e1;
    return c;
}

// Degeneracy test scale: variances live on the scale of the second raw
// moments; anything this far below is numerical zero.
double degeneracy_floor(const RawMoments& m) {
    return 1e-11 * (1.0 + std::abs(m.r1sq) + std::abs(m.r2sq));
}

} // namespace

SchemeAggregates aggregate(const PairWeightScheme& s) {
    const int K = s.K;
    std::vector<double> m(K), deg(K, 0.0), asq(K, 0.0);
    for (int k = 0; k < K; ++k) m[k] = s.counts[k];

    // Weighted degree and squared-weight sums per category member.
    for (int k = 0; k < K; ++k) {
        double a = s.within[k];
        deg[k] = a * (m[k] - 1);
        asq[k] = a * a * (m[k] - 1);
    }
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
        int u = s.edges[e].u, v = s.edges[e].v;
        double b = s.cross[e];
        deg[u] += b * m[v];
        deg[v] += b * m[u];
        asq[u] += b * b * m[v];
        asq[v] += b * b * m[u];
    }

    SchemeAggregates out{};
    for (int k = 0; k < K; ++k) {
        double a = s.within[k], c2 = choose2(m[k]);
        out.w1 += a * c2;
        out.w2 += a * a * c2;
        out.w3 += a * a * a * c2;
        out.sd2 += m[k] * deg[k] * deg[k];
        out.sd3 += m[k] * deg[k] * deg[k] * deg[k];
        out.sad += m[k] * asq[k] * deg[k];
        out.sde += 2.0 * a * c2 * deg[k] * deg[k];
        out.g += 2.0 * a * a * c2 * deg[k];
        out.tri += a * a * a * m[k] * (m[k] - 1) * (m[k] - 2) / 6.0;
        out.path += a * c2 * (deg[k] - a) * (deg[k] - a);
    }
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
        int u = s.edges[e].u, v = s.edges[e].v;
        double b = s.cross[e], muv = m[u] * m[v];
        out.w1 += b * muv;
        out.w2 += b * b * muv;
        out.w3 += b * b * b * muv;
        out.sde += 2.0 * b * muv * deg[u] * deg[v];
        out.g += b * b * muv * (deg[u] + deg[v]);
        out.tri += b * b * (s.within[u] * choose2(m[u]) * m[v] + s.within[v] * choose2(m[v]) * m[u]);
        out.path += b * muv * (deg[u] - b) * (deg[v] - b);
    }

    // Cross-weight triangles of the base graph, each counted once (u<v<w).
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
        int u = s.edges[e].u, v = s.edges[e].v;
        double buv = s.cross[e];
        const auto& au = s.adjacency[u];
        const auto& av = s.adjacency[v];
        std::size_t i = 0, j = 0;
        while (i < au.size() && j < av.size()) {
            if (au[i].first < av[j].first) ++i;
            else if (au[i].first > av[j].first) ++j;
            else {
                int w = au[i].first;
                if (w > v) out.tri += buv * au[i].second * av[j].second * m[u] * m[v] * m[w];
                ++i;
                ++j;
            }
        }
    }
    out.path -= 3.0 * out.tri;
    return out;
}

BasicMoments mean_var(const SchemeAggregates& a, long long n, long long t) {
    check_split(n, t);
    PatternSums p = pattern_sums(a);
    RawMoments m = raw_moments(a, p, n, t, false);
    CentralMoments c = centralize(m, false);
    return {m.e1, m.e2, c.var1, c.var2, c.cov};
}

BasicMoments mean_var(const PairWeightScheme& scheme, long long t) {
    return mean_var(aggregate(scheme), scheme.n, t);
}

namespace {

CombinedMoments combine(const RawMoments& m, const CentralMoments& c, long long n, long long t) {
    double w = double(t - 1) / double(n - 2);
    CombinedMoments out{};
    out.e_rw = (1 - w) * m.e1 + w * m.e2;
    out.var_rw = (1 - w) * (1 - w) * c.var1 + w * w * c.var2 + 2 * w * (1 - w) * c.cov;
    out.e_rd = m.e1 - m.e2;
    out.var_rd = c.var1 + c.var2 - 2 * c.cov;
    out.cov_rw_rd = (1 - w) * c.var1 - w * c.var2 + (2 * w - 1) * c.cov;
    out.var_rw = std::max(0.0, out.var_rw);
    out.var_rd = std::max(0.0, out.var_rd);
    return out;
}

} // namespace

CombinedMoments moments_rw_rd(const SchemeAggregates& a, long long n, long long t) {
    if (n < 3) throw InputError("need n >= 3 for the weighted combination");
    check_split(n, t);
    PatternSums p = pattern_sums(a);
    RawMoments m = raw_moments(a, p, n, t, false);
    CentralMoments c = centralize(m, false);
    CombinedMoments out = combine(m, c, n, t);
    double floor = degeneracy_floor(m);
    if (out.var_rw <= floor || out.var_rd <= floor)
        throw DegenerateStatisticError("degenerate statistic: zero variance at t=" +
                                       std::to_string(t));
    return out;
}

CombinedMoments moments_rw_rd(const PairWeightScheme& scheme, long long t) {
    return moments_rw_rd(aggregate(scheme), scheme.n, t);
}

SkewnessPair skewness(const SchemeAggregates& a, long long n, long long t) {
    if (n < 3) throw InputError("need n >= 3 for the weighted combination");
    check_split(n, t);
    PatternSums p = pattern_sums(a);
    RawMoments m = raw_moments(a, p, n, t, true);
    CentralMoments c = centralize(m, true);
    CombinedMoments cm = combine(m, c, n, t);
    double floor = degeneracy_floor(m);
    if (cm.var_rw <= floor || cm.var_rd <= floor)
        throw DegenerateStatisticError("degenerate statistic: zero variance at t=" +
                                       std::to_string(t));
    double w = double(t - 1) / double(n - 2);
    double mu3_rw = (1 - w) * (1 - w) * (1 - w) * c.mu3_1 + 3 * (1 - w) * (1 - w) * w * c.mu21 +
                    3 * (1 - w) * w * w * c.mu12 + w * w * w * c.mu3_2;
    double mu3_rd = c.mu3_1 - 3 * c.mu21 + 3 * c.mu12 - c.mu3_2;
    SkewnessPair out;
    out.gamma_w = mu3_rw / std::pow(cm.var_rw, 1.5);
    out.gamma_d = mu3_rd / std::pow(cm.var_rd, 1.5);
    return out;
}

SkewnessPair skewness(const PairWeightScheme& scheme, long long t) {
    return skewness(aggregate(scheme), scheme.n, t);
}

SkewnessPair skewness_monte_carlo(const PairWeightScheme& scheme, long long t,
                                  long permutations, std::uint64_t seed) {
    check_split(scheme.n, t);
    if (permutations < 2) throw ConfigError("need at least 2 permutations");
    const int n = static_cast<int>(scheme.n);
    // Only the label multiset matters under the permutation null, so work
    // on a canonical sequence with the scheme's multiplicities.
    std::vector<int> labels;
    labels.reserve(n);
    for (int k = 0; k < scheme.K; ++k) labels.insert(labels.end(), scheme.counts[k], k);

    Rng rng(seed);
    std::vector<int> n1(scheme.K), n2(scheme.K);
    const double w = double(t - 1) / double(n - 2);
    std::vector<double> rw(permutations), rd(permutations);
    for (long r = 0; r < permutations; ++r) {
        // Partial Fisher-Yates: the first t entries form the group-1 draw.
        for (int i = 0; i < t; ++i) {
            int j = i + static_cast<int>(rng.uniform_int(n - i));
            std::swap(labels[i], labels[j]);
        }
        std::fill(n1.begin(), n1.end(), 0);
        for (int i = 0; i < t; ++i) n1[labels[i]]++;
        for (int k = 0; k < scheme.K; ++k) n2[k] = scheme.counts[k] - n1[k];
        double r1 = group_pair_weight(scheme, n1);
        double r2 = group_pair_weight(scheme, n2);
        rw[r] = (1 - w) * r1 + w * r2;
        rd[r] = r1 - r2;
    }
    auto standardized_third = [](const std::vector<double>& x) {
        long double mean = 0;
        for (double v : x) mean += v;
        mean /= x.size();
        long double v2 = 0, v3 = 0;
        for (double v : x) {
            long double d = v - mean;
            v2 += d * d;
            v3 += d * d * d;
        }
        v2 /= x.size();
        v3 /= x.size();
        return double(v3 / std::pow(double(v2), 1.5));
    };
    return {standardized_third(rw), standardized_third(rd)};
}

MomentProfile moment_profile(const PairWeightScheme& scheme, int n0, int n1, bool with_skewness) {
    if (n0 < 1 || n1 > scheme.n - 1 || n0 > n1) throw ConfigError("invalid moment window");
    SchemeAggregates a = aggregate(scheme);
    MomentProfile prof;
    prof.n0 = n0;
    prof.n1 = n1;
    prof.n = scheme.n;
    prof.has_skewness = with_skewness;
    const int count = n1 - n0 + 1;
    prof.e_rw.resize(count);
    prof.sd_rw.resize(count);
    prof.e_rd.resize(count);
    prof.sd_rd.resize(count);
    if (with_skewness) {
        prof.gamma_w.resize(count);
        prof.gamma_d.resize(count);
    }
    PatternSums p = pattern_sums(a);
    for (int t = n0; t <= n1; ++t) {
        RawMoments m = raw_moments(a, p, scheme.n, t, with_skewness);
        CentralMoments c = centralize(m, with_skewness);
        CombinedMoments cm = combine(m, c, scheme.n, t);
        double floor = degeneracy_floor(m);
        if (cm.var_rw <= floor || cm.var_rd <= floor)
            throw DegenerateStatisticError("degenerate statistic: zero variance at t=" +
                                           std::to_string(t));
        int i = t - n0;
        prof.e_rw[i] = cm.e_rw;
        prof.sd_rw[i] = std::sqrt(cm.var_rw);
        prof.e_rd[i] = cm.e_rd;
        prof.sd_rd[i] = std::sqrt(cm.var_rd);
        if (with_skewness) {
            double w = double(t - 1) / double(scheme.n - 2);
            double mu3_rw = (1 - w) * (1 - w) * (1 - w) * c.mu3_1 +
                            3 * (1 - w) * (1 - w) * w * c.mu21 + 3 * (1 - w) * w * w * c.mu12 +
                            w * w * w * c.mu3_2;
            double mu3_rd = c.mu3_1 - 3 * c.mu21 + 3 * c.mu12 - c.mu3_2;
            prof.gamma_w[i] = mu3_rw / std::pow(cm.var_rw, 1.5);
            prof.gamma_d[i] = mu3_rd / std::pow(cm.var_rd, 1.5);
        }
    }
    return prof;
}

BasicMoments ExactPairDistribution::basic_moments() const {
    long double e1 = 0, e2 = 0;
    for (const auto& [r1, r2] : values) {
        e1 += r1;
        e2 += r2;
    }
    e1 /= values.size();
    e2 /= values.size();
    long double v1 = 0, v2 = 0, cv = 0;
    for (const auto& [r1, r2] : values) {
        long double d1 = r1 - e1, d2 = r2 - e2;
        v1 += d1 * d1;
        v2 += d2 * d2;
        cv += d1 * d2;
    }
    BasicMoments out;
    out.e_r1 = double(e1);
    out.e_r2 = double(e2);
    out.var_r1 = double(v1 / values.size());
    out.var_r2 = double(v2 / values.size());
    out.cov_r12 = double(cv / values.size());
    return out;
}

std::array<double, 4> ExactPairDistribution::third_central_moments() const {
    long double e1 = 0, e2 = 0;
    for (const auto& [r1, r2] : values) {
        e1 += r1;
        e2 += r2;
    }
    e1 /= values.size();
    e2 /= values.size();
    long double m30 = 0, m03 = 0, m21 = 0, m12 = 0;
    for (const auto& [r1, r2] : values) {
        long double d1 = r1 - e1, d2 = r2 - e2;
        m30 += d1 * d1 * d1;
        m03 += d2 * d2 * d2;
        m21 += d1 * d1 * d2;
        m12 += d1 * d2 * d2;
    }
    const long double c = static_cast<long double>(values.size());
    return {double(m30 / c), double(m03 / c), double(m21 / c), double(m12 / c)};
}

CombinedMoments ExactPairDistribution::combined_moments(long long n, long long t) const {
    const double w = double(t - 1) / double(n - 2);
    long double ew = 0, ed = 0;
    for (const auto& [r1, r2] : values) {
        ew += (1 - w) * r1 + w * r2;
        ed += r1 - r2;
    }
    ew /= values.size();
    ed /= values.size();
    long double vw = 0, vd = 0, cwd = 0;
    for (const auto& [r1, r2] : values) {
        long double dw = (1 - w) * r1 + w * r2 - ew;
        long double dd = (r1 - r2) - ed;
        vw += dw * dw;
        vd += dd * dd;
        cwd += dw * dd;
    }
    CombinedMoments out;
    out.e_rw = double(ew);
    out.var_rw = double(vw / values.size());
    out.e_rd = double(ed);
    out.var_rd = double(vd / values.size());
    out.cov_rw_rd = double(cwd / values.size());
    return out;
}

SkewnessPair ExactPairDistribution::skewness(long long n, long long t) const {
    const double w = double(t - 1) / double(n - 2);
    long double ew = 0, ed = 0;
    for (const auto& [r1, r2] : values) {
        ew += (1 - w) * r1 + w * r2;
        ed += r1 - r2;
    }
    ew /= values.size();
    ed /= values.size();
    long double vw = 0, vd = 0, tw = 0, td = 0;
    for (const auto& [r1, r2] : values) {
        long double dw = (1 - w) * r1 + w * r2 - ew;
        long double dd = (r1 - r2) - ed;
        vw += dw * dw;
        vd += dd * dd;
        tw += dw * dw * dw;
        td += dd * dd * dd;
    }
    vw /= values.size();
    vd /= values.size();
    tw /= values.size();
    td /= values.size();
    SkewnessPair out;
    out.gamma_w = double(tw / std::pow(double(vw), 1.5));
    out.gamma_d = double(td / std::pow(double(vd), 1.5));
    return out;
}

ExactPairDistribution exhaustive_oracle(const CategorizedSequence& seq,
                                        const PairWeightScheme& scheme, int t) {
    const int n = seq.n();
    if (n > 12) throw InputError("exhaustive oracle limited to n <= 12");
    if (t < 1 || t > n - 1) throw InputError("split out of range");

    ExactPairDistribution dist;
    std::vector<int> pick(t);
    std::iota(pick.begin(), pick.end(), 0);
    std::vector<int> n1(seq.K()), n2(seq.K());
    for (;;) {
        std::fill(n1.begin(), n1.end(), 0);
        for (int i : pick) n1[seq.labels[i]]++;
        for (int k = 0; k < seq.K(); ++k) n2[k] = seq.counts[k] - n1[k];
        dist.values.emplace_back(group_pair_weight(scheme, n1), group_pair_weight(scheme, n2));
        // Next combination in lexicographic order.
        int i = t - 1;
        while (i >= 0 && pick[i] == n - t + i) --i;
        if (i < 0) break;
        pick[i]++;
        for (int j = i + 1; j < t; ++j) pick[j] = pick[j - 1] + 1;
    }
    return dist;
}

} // namespace tiescan
