#pragma once

#include <cstdint>
#include <vector>

#include "tiescan/scan.hpp"

namespace tiescan {

struct PermutationPlan {
    long permutations = 1000;
    std::uint64_t seed = 0;
    Statistic statistic = Statistic::generalized;
    int threads = 0;       // 0 = resolve from env / hardware
    bool interval = false; // scan intervals instead of single splits
};

struct PermutationResult {
    double pvalue = 1.0;
    double observed = 0.0;
    long count_ge = 0;              // permuted maxima >= observed
    std::vector<double> samples;    // permuted maxima, indexed by draw
};

// Monte-Carlo permutation p-value with the add-one estimator
// p = (1 + #{max >= observed}) / (1 + R). Labels are permuted; the scheme
// and moments are reused across permutations. Identical seeds give
// identical results for any worker count.
PermutationResult permutation_pvalue(const CategorizedSequence& seq,
                                     const PairWeightScheme& scheme,
                                     const MomentProfile& moments,
                                     const PermutationPlan& plan);

PermutationResult permutation_pvalue_interval(const CategorizedSequence& seq,
                                              const PairWeightScheme& scheme,
                                              const IntervalMoments& moments,
                                              const PermutationPlan& plan);

// Empirical (1 - alpha) quantile of the permuted max sample,
// type-7 interpolation.
double quantile_type7(std::vector<double> sample, double q);
double permutation_critical_value(const PermutationResult& result, double alpha);

// Exact p-value by enumerating every distinct arrangement of the label
// multiset. n is limited to 9.
double exhaustive_pvalue(const CategorizedSequence& seq, const PairWeightScheme& scheme,
                         const MomentProfile& moments, Statistic stat);

} // namespace tiescan
