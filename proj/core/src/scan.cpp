#include "tiescan/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tiescan/errors.hpp"

namespace tiescan {

std::pair<int, int> default_window(int n) {
    int n0 = static_cast<int>(std::ceil(0.05 * n));
    return clamp_window(n, n0, n - n0);
}

std::pair<int, int> clamp_window(int n, int n0, int n1) {
    if (n < 4) throw InputError("need at least 4 observations");
    n0 = std::max(n0, 2);
    n1 = std::min(n1, n - 2);
    if (n0 > n1) throw ConfigError("window too narrow");
    return {n0, n1};
}

BasicQuantityProfile basic_quantity_profile(const CategorizedSequence& seq,
                                            const PairWeightScheme& scheme) {
    const int n = seq.n();
    if (n < 4) throw InputError("need at least 4 observations");
    BasicQuantityProfile out;
    out.r1.resize(n - 1);
    out.r2.resize(n - 1);
    std::vector<int> n1(scheme.K, 0);
    std::vector<int> n2(scheme.counts.begin(), scheme.counts.end());
    double r1 = 0.0;
    double r2 = scheme.total_weight();
    for (int i = 0; i < n - 1; ++i) {
        const int c = seq.labels[i];
        // Promote one observation of category c into group 1.
        double gain = scheme.within[c] * n1[c];
        double loss = scheme.within[c] * (n2[c] - 1);
        for (const auto& [v, b] : scheme.adjacency[c]) {
            gain += b * n1[v];
            loss += b * n2[v];
        }
        r1 += gain;
        r2 -= loss;
        n1[c]++;
        n2[c]--;
        out.r1[i] = r1;
        out.r2[i] = r2;
    }
    return out;
}

double statistic_value(Statistic stat, double zw, double zd) {
    switch (stat) {
    case Statistic::weighted: return zw;
    case Statistic::difference: return std::abs(zd);
    case Statistic::generalized: return zw * zw + zd * zd;
    case Statistic::max_type: return std::max(zw, std::abs(zd));
    }
    return 0.0;
}

ScanProfile standardize(const BasicQuantityProfile& profile, const MomentProfile& moments) {
    ScanProfile out;
    out.n0 = moments.n0;
    out.n1 = moments.n1;
    const int count = out.n1 - out.n0 + 1;
    out.r1.resize(count);
    out.r2.resize(count);
    out.zw.resize(count);
    out.zd.resize(count);
    out.s.resize(count);
    out.m.resize(count);
    for (int t = out.n0; t <= out.n1; ++t) {
        const int i = t - out.n0;
        const double r1 = profile.r1[t - 1];
        const double r2 = profile.r2[t - 1];
        const double w = moments.weight_at(t);
        const double rw = (1 - w) * r1 + w * r2;
        out.r1[i] = r1;
        out.r2[i] = r2;
        out.zw[i] = (rw - moments.e_rw[i]) / moments.sd_rw[i];
        out.zd[i] = (r1 - r2 - moments.e_rd[i]) / moments.sd_rd[i];
        out.s[i] = out.zw[i] * out.zw[i] + out.zd[i] * out.zd[i];
        out.m[i] = std::max(out.zw[i], std::abs(out.zd[i]));
    }
    return out;
}

ChangePointEstimate single_change_scan(const ScanProfile& profile, Statistic stat) {
    ChangePointEstimate est;
    est.statistic = stat;
    est.max_value = -std::numeric_limits<double>::infinity();
    for (int t = profile.n0; t <= profile.n1; ++t) {
        const int i = t - profile.n0;
        double v = statistic_value(stat, profile.zw[i], profile.zd[i]);
        if (v > est.max_value) {
            est.max_value = v;
            est.tau = t;
        }
    }
    return est;
}

IntervalMoments interval_moments(const PairWeightScheme& scheme, int min_len, int max_len,
                                 bool with_skewness) {
    IntervalMoments m;
    m.by_length = moment_profile(scheme, min_len, max_len, with_skewness);
    return m;
}

namespace {

double interval_stat_from(const MomentProfile& moments, long long n, int len, double r1,
                          double r2, Statistic stat) {
    const int i = len - moments.n0;
    const double w = double(len - 1) / double(n - 2);
    const double rw = (1 - w) * r1 + w * r2;
    const double zw = (rw - moments.e_rw[i]) / moments.sd_rw[i];
    const double zd = (r1 - r2 - moments.e_rd[i]) / moments.sd_rd[i];
    return statistic_value(stat, zw, zd);
}

} // namespace

double interval_statistic_at(const CategorizedSequence& seq, const PairWeightScheme& scheme,
                             const IntervalMoments& moments, int t1, int t2, Statistic stat) {
    const int len = t2 - t1;
    if (len < moments.by_length.n0 || len > moments.by_length.n1)
        throw ConfigError("interval length outside the moment window");
    auto [n1, n2] = contingency_at(seq, GroupSplit::interval(t1, t2));
    const double r1 = group_pair_weight(scheme, n1);
    const double r2 = group_pair_weight(scheme, n2);
    return interval_stat_from(moments.by_length, scheme.n, len, r1, r2, stat);
}

ChangePointEstimate changed_interval_scan(const CategorizedSequence& seq,
                                          const PairWeightScheme& scheme,
                                          const IntervalMoments& moments, Statistic stat) {
    ChangePointEstimate est;
    est.statistic = stat;
    est.is_interval = true;
    const int n = seq.n();
    const int min_len = moments.by_length.n0, max_len = moments.by_length.n1;
    std::vector<int> n1(scheme.K, 0), n2(scheme.counts.begin(), scheme.counts.end());
    double best = -std::numeric_limits<double>::infinity();
    for (int t1 = 2; t1 <= n - 1; ++t1) {
        double r1 = 0.0, r2 = scheme.total_weight();
        const int pmax = std::min(t1 + max_len - 1, n - 1);
        for (int p = t1; p <= pmax; ++p) {
            const int c = seq.labels[p - 1];
            double gain = scheme.within[c] * n1[c];
            double loss = scheme.within[c] * (n2[c] - 1);
            for (const auto& [v, b] : scheme.adjacency[c]) {
                gain += b * n1[v];
                loss += b * n2[v];
            }
            r1 += gain;
            r2 -= loss;
            n1[c]++;
            n2[c]--;
            const int len = p - t1 + 1;
            if (len >= min_len) {
                double v = interval_stat_from(moments.by_length, scheme.n, len, r1, r2, stat);
                if (v > best) {
                    best = v;
                    est.tau1 = t1;
                    est.tau2 = p + 1;
                }
            }
        }
        for (int p = t1; p <= pmax; ++p) {
            const int c = seq.labels[p - 1];
            n1[c]--;
            n2[c]++;
        }
    }
    est.max_value = best;
    return est;
}

ScanEvaluator::ScanEvaluator(const PairWeightScheme& scheme, const MomentProfile& moments,
                             Statistic stat)
    : scheme_(scheme), moments_(moments), stat_(stat), n1_(scheme.K), n2_(scheme.K),
      total_(scheme.total_weight()) {}

double ScanEvaluator::max_over_window(std::span<const int> labels) {
    std::fill(n1_.begin(), n1_.end(), 0);
    std::copy(scheme_.counts.begin(), scheme_.counts.end(), n2_.begin());
    double r1 = 0.0;
    double r2 = total_;
    double best = -std::numeric_limits<double>::infinity();
    for (int t = 1; t <= moments_.n1; ++t) {
        const int c = labels[t - 1];
        double gain = scheme_.within[c] * n1_[c];
        double loss = scheme_.within[c] * (n2_[c] - 1);
        for (const auto& [v, b] : scheme_.adjacency[c]) {
            gain += b * n1_[v];
            loss += b * n2_[v];
        }
        r1 += gain;
        r2 -= loss;
        n1_[c]++;
        n2_[c]--;
        if (t >= moments_.n0) {
            const int i = t - moments_.n0;
            const double w = moments_.weight_at(t);
            const double rw = (1 - w) * r1 + w * r2;
            const double zw = (rw - moments_.e_rw[i]) / moments_.sd_rw[i];
            const double zd = (r1 - r2 - moments_.e_rd[i]) / moments_.sd_rd[i];
            best = std::max(best, statistic_value(stat_, zw, zd));
        }
    }
    return best;
}

IntervalScanEvaluator::IntervalScanEvaluator(const PairWeightScheme& scheme,
                                             const IntervalMoments& moments, Statistic stat)
    : scheme_(scheme), moments_(moments), stat_(stat), n1_(scheme.K), n2_(scheme.K),
      total_(scheme.total_weight()) {}

double IntervalScanEvaluator::max_over_intervals(std::span<const int> labels) {
    const int n = static_cast<int>(scheme_.n);
    const int min_len = moments_.by_length.n0, max_len = moments_.by_length.n1;
    std::fill(n1_.begin(), n1_.end(), 0);
    std::copy(scheme_.counts.begin(), scheme_.counts.end(), n2_.begin());
    const double total = total_;
    double best = -std::numeric_limits<double>::infinity();
    for (int t1 = 2; t1 <= n - 1; ++t1) {
        double r1 = 0.0, r2 = total;
        const int pmax = std::min(t1 + max_len - 1, n - 1);
        for (int p = t1; p <= pmax; ++p) {
            const int c = labels[p - 1];
            double gain = scheme_.within[c] * n1_[c];
            double loss = scheme_.within[c] * (n2_[c] - 1);
            for (const auto& [v, b] : scheme_.adjacency[c]) {
                gain += b * n1_[v];
                loss += b * n2_[v];
            }
            r1 += gain;
            r2 -= loss;
            n1_[c]++;
            n2_[c]--;
            const int len = p - t1 + 1;
            if (len >= min_len)
                best = std::max(best, interval_stat_from(moments_.by_length, scheme_.n, len, r1,
                                                         r2, stat_));
        }
        for (int p = t1; p <= pmax; ++p) {
            const int c = labels[p - 1];
            n1_[c]--;
            n2_[c]++;
        }
    }
    return best;
}

} // namespace tiescan
