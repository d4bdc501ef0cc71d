#include "tiescan/permutation.hpp"

#include <algorithm>
#include <cmath>

#include "tiescan/errors.hpp"
#include "tiescan/rng.hpp"

namespace tiescan {

namespace {

template <typename Evaluator>
PermutationResult run_plan(const CategorizedSequence& seq, const PermutationPlan& plan,
                           double observed, Evaluator make_evaluator) {
    if (plan.permutations < 1) throw ConfigError("need at least 1 permutation");
    PermutationResult result;
    result.observed = observed;
    result.samples.resize(plan.permutations);

    const int threads = resolve_threads(plan.threads);
    parallel_chunks(static_cast<std::size_t>(plan.permutations), threads,
                    [&](std::size_t begin, std::size_t end) {
                        auto eval = make_evaluator();
                        std::vector<int> labels = seq.labels;
                        for (std::size_t r = begin; r < end; ++r) {
                            Rng rng = Rng::derive(plan.seed, r);
                            labels = seq.labels;
                            rng.shuffle(labels);
                            result.samples[r] = eval(labels);
                        }
                    });

    long count = 0;
    for (double v : result.samples)
        if (v >= observed) count++;
    result.count_ge = count;
    result.pvalue = double(1 + count) / double(1 + plan.permutations);
    return result;
}

} // namespace

PermutationResult permutation_pvalue(const CategorizedSequence& seq,
                                     const PairWeightScheme& scheme,
                                     const MomentProfile& moments,
                                     const PermutationPlan& plan) {
    ScanEvaluator observed_eval(scheme, moments, plan.statistic);
    const double observed = observed_eval.max_over_window(seq.labels);
    return run_plan(seq, plan, observed, [&] {
        return [eval = ScanEvaluator(scheme, moments, plan.statistic)](
                   const std::vector<int>& labels) mutable {
            return eval.max_over_window(labels);
        };
    });
}

PermutationResult permutation_pvalue_interval(const CategorizedSequence& seq,
                                              const PairWeightScheme& scheme,
                                              const IntervalMoments& moments,
                                              const PermutationPlan& plan) {
    IntervalScanEvaluator observed_eval(scheme, moments, plan.statistic);
    const double observed = observed_eval.max_over_intervals(seq.labels);
    return run_plan(seq, plan, observed, [&] {
        return [eval = IntervalScanEvaluator(scheme, moments, plan.statistic)](
                   const std::vector<int>& labels) mutable {
            return eval.max_over_intervals(labels);
        };
    });
}

double quantile_type7(std::vector<double> sample, double q) {
    if (sample.empty()) throw ConfigError("empty sample");
    if (q < 0.0 || q > 1.0) throw ConfigError("quantile level out of range");
    std::sort(sample.begin(), sample.end());
    const double h = (sample.size() - 1) * q;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sample.size()) return sample.back();
    const double frac = h - double(lo);
    return sample[lo] + frac * (sample[lo + 1] - sample[lo]);
}

double permutation_critical_value(const PermutationResult& result, double alpha) {
    if (result.samples.size() < 100) throw ConfigError("need at least 100 permutations");
    return quantile_type7(result.samples, 1.0 - alpha);
}

double exhaustive_pvalue(const CategorizedSequence& seq, const PairWeightScheme& scheme,
                         const MomentProfile& moments, Statistic stat) {
    const int n = seq.n();
    if (n > 9) throw InputError("exhaustive p-value limited to n <= 9");
    ScanEvaluator eval(scheme, moments, stat);
    const double observed = eval.max_over_window(seq.labels);

    // std::next_permutation over the sorted multiset visits every distinct
    // arrangement exactly once; all are equally likely under the null.
    std::vector<int> labels = seq.labels;
    std::sort(labels.begin(), labels.end());
    long long total = 0, at_least = 0;
    do {
        total++;
        if (eval.max_over_window(labels) >= observed) at_least++;
    } while (std::next_permutation(labels.begin(), labels.end()));
    return double(at_least) / double(total);
}

} // namespace tiescan
