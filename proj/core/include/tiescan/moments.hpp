#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "tiescan/scheme.hpp"

namespace tiescan {

// Graph-level sums of the observation-level weight matrix a_ij implied by
// a PairWeightScheme, computed category-wise in closed form:
//   w1   = sum_{i<j} a_ij              w2, w3 likewise with squares/cubes
//   sd2  = sum_i D_i^2, sd3 = sum_i D_i^3        (D_i weighted degree)
//   sad  = sum_i A_i D_i                         (A_i = sum_j a_ij^2)
//   sde  = 2 sum_{i<j} a_ij D_i D_j
//   g    = sum_{i<j} a_ij^2 (D_i + D_j)
//   tri  = weighted triangle sum
//   path = weighted 3-path sum (distinct endpoints)
struct SchemeAggregates {
    double w1 = 0, w2 = 0, w3 = 0;
    double sd2 = 0, sd3 = 0, sad = 0, sde = 0, g = 0;
    double tri = 0, path = 0;
};

SchemeAggregates aggregate(const PairWeightScheme& scheme);

// Exact permutation moments of the two basic quantities at split size t:
// group 1 is a uniformly random t-subset of the n positions.
struct BasicMoments {
    double e_r1 = 0, e_r2 = 0;
    double var_r1 = 0, var_r2 = 0;
    double cov_r12 = 0;
};

BasicMoments mean_var(const SchemeAggregates& a, long long n, long long t);
BasicMoments mean_var(const PairWeightScheme& scheme, long long t);

// Moments of the weighted combination Rw = (1-w)R1 + wR2 with
// w = (t-1)/(n-2), and of the difference Rd = R1 - R2.
struct CombinedMoments {
    double e_rw = 0, var_rw = 0;
    double e_rd = 0, var_rd = 0;
    double cov_rw_rd = 0; // recorded, not assumed zero at finite n
};

CombinedMoments moments_rw_rd(const SchemeAggregates& a, long long n, long long t);
CombinedMoments moments_rw_rd(const PairWeightScheme& scheme, long long t);

// Exact third standardized moments E[Zw^3], E[Zd^3] at split size t.
struct SkewnessPair {
    double gamma_w = 0;
    double gamma_d = 0;
};

SkewnessPair skewness(const SchemeAggregates& a, long long n, long long t);
SkewnessPair skewness(const PairWeightScheme& scheme, long long t);

// Seeded Monte-Carlo estimate of the same quantities, by sampling random
// t-subsets. Cross-validation tool only; the closed forms are the
// production path.
SkewnessPair skewness_monte_carlo(const PairWeightScheme& scheme, long long t,
                                  long permutations, std::uint64_t seed);

// Per-t moments over a window of split sizes, t in [n0, n1].
struct MomentProfile {
    int n0 = 0, n1 = 0;
    long long n = 0;
    bool has_skewness = false;
    std::vector<double> e_rw, sd_rw; // indexed t - n0
    std::vector<double> e_rd, sd_rd;
    std::vector<double> gamma_w, gamma_d;

    double weight_at(long long t) const { return double(t - 1) / double(n - 2); }
};

// Throws DegenerateStatisticError if Var(Rw) or Var(Rd) vanishes anywhere
// in the window.
MomentProfile moment_profile(const PairWeightScheme& scheme, int n0, int n1,
                             bool with_skewness);

// Exact joint distribution of (R1, R2) at split size t over all
// C(n, t) group-1 position subsets. n is limited to 12.
struct ExactPairDistribution {
    std::vector<std::pair<double, double>> values; // one per subset

    BasicMoments basic_moments() const;
    // Exact third central moments (mu3(R1), mu3(R2), E[c1^2 c2], E[c1 c2^2])
    // with c_i the centered quantities.
    std::array<double, 4> third_central_moments() const;
    CombinedMoments combined_moments(long long n, long long t) const;
    SkewnessPair skewness(long long n, long long t) const;
};

ExactPairDistribution exhaustive_oracle(const CategorizedSequence& seq,
                                        const PairWeightScheme& scheme, int t);

} // namespace tiescan
