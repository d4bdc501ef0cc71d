#pragma once

#include <span>
#include <vector>

#include "tiescan/moments.hpp"
#include "tiescan/scheme.hpp"
#include "tiescan/sequence.hpp"
#include "tiescan/types.hpp"

namespace tiescan {

// Default scan window: n0 = ceil(0.05 n), clamped so both group sizes
// stay >= 2 on every split in the window.
std::pair<int, int> default_window(int n);
std::pair<int, int> clamp_window(int n, int n0, int n1);

// r1[t-1], r2[t-1] for t = 1..n-1, computed incrementally in
// O(n * max degree).
struct BasicQuantityProfile {
    std::vector<double> r1, r2;
};

BasicQuantityProfile basic_quantity_profile(const CategorizedSequence& seq,
                                            const PairWeightScheme& scheme);

// Scalar statistic from the standardized pair.
double statistic_value(Statistic stat, double zw, double zd);

struct ScanProfile {
    int n0 = 0, n1 = 0;
    std::vector<double> r1, r2, zw, zd, s, m; // indexed t - n0
};

ScanProfile standardize(const BasicQuantityProfile& profile, const MomentProfile& moments);

struct ChangePointEstimate {
    Statistic statistic = Statistic::generalized;
    Mode mode = Mode::averaging;
    double max_value = 0.0;
    bool is_interval = false;
    int tau = 0;      // single change
    int tau1 = 0, tau2 = 0; // interval [tau1, tau2)
};

// Max over t in [n0, n1]; ties resolved to the smallest t.
ChangePointEstimate single_change_scan(const ScanProfile& profile, Statistic stat);

// Per-length moments for interval scans. Interval (t1, t2) takes group 1
// = positions [t1, t2), so moments depend only on the length t2 - t1.
struct IntervalMoments {
    MomentProfile by_length; // n0..n1 are length bounds
};

IntervalMoments interval_moments(const PairWeightScheme& scheme, int min_len, int max_len,
                                 bool with_skewness = false);

// Statistic of a single interval split. Mainly a test/diagnostic surface;
// the scan below computes the same values incrementally.
double interval_statistic_at(const CategorizedSequence& seq, const PairWeightScheme& scheme,
                             const IntervalMoments& moments, int t1, int t2, Statistic stat);

// Max over {(t1, t2) : 1 < t1 < t2 <= n, min_len <= t2 - t1 <= max_len},
// ties resolved to the lexicographically smallest (t1, t2).
ChangePointEstimate changed_interval_scan(const CategorizedSequence& seq,
                                          const PairWeightScheme& scheme,
                                          const IntervalMoments& moments, Statistic stat);

// Reusable workspace: max statistic of one label arrangement over the
// window. This is the per-permutation hot path.
class ScanEvaluator {
  public:
    ScanEvaluator(const PairWeightScheme& scheme, const MomentProfile& moments, Statistic stat);

    double max_over_window(std::span<const int> labels);

  private:
    const PairWeightScheme& scheme_;
    const MomentProfile& moments_;
    Statistic stat_;
    std::vector<int> n1_, n2_;
    double total_;
};

// Interval counterpart; rescans all (t1, t2) pairs for one arrangement.
class IntervalScanEvaluator {
  public:
    IntervalScanEvaluator(const PairWeightScheme& scheme, const IntervalMoments& moments,
                          Statistic stat);

    double max_over_intervals(std::span<const int> labels);

  private:
    const PairWeightScheme& scheme_;
    const IntervalMoments& moments_;
    Statistic stat_;
    std::vector<int> n1_, n2_;
    double total_;
};

} // namespace tiescan
