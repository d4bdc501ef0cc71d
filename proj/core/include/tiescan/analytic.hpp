#pragma once

#include <span>

#include "tiescan/types.hpp"

namespace tiescan {

// Overshoot correction factor
// nu(s) ~= (2/s) {Phi(s/2) - 1/2} / {(s/2) Phi(s/2) + phi(s/2)},
// with the analytic limit nu(0) = 1.
double nu(double s);

// Crossing-rate factors of the limiting processes, finite-sample forms
// and their large-n limits. x in (0, 1).
double h_weighted(long long n, double x);
double h_difference(long long n, double x);
double h_weighted_limit(double x);
double h_difference_limit(double x);

struct TailQuery {
    Statistic statistic = Statistic::max_type;
    double b = 0.0; // threshold; chi-square-like scale for generalized
    long long n = 0;
    int n0 = 0, n1 = 0;
    int panels = 1024;        // composite Simpson panels over x
    int angular_panels = 96;  // generalized statistic only
    // Skewness profiles indexed t - n0 for t in [n0, n1]; empty = none.
    std::span<const double> gamma_w{};
    std::span<const double> gamma_d{};
};

struct ApproxPValue {
    double value = 1.0; // clamped to [0, 1]
    bool skew_corrected = false;
    int inapplicable_points = 0; // grid points where the correction fell back
};

// Tail probability P(max statistic > b) without skewness correction.
ApproxPValue pvalue_single(const TailQuery& query);

// Skewness-corrected version; requires gamma profiles and rejects the
// generalized statistic (its corrected integrand is not reliably finite).
ApproxPValue pvalue_single_skewcorrected(const TailQuery& query);

// Solves p(b) = alpha by bisection. Search bracket [0.5, 10]
// ([1, 50] for the generalized statistic).
double critical_value(Statistic stat, double alpha, long long n, int n0, int n1,
                      std::span<const double> gamma_w = {},
                      std::span<const double> gamma_d = {},
                      int panels = 1024, int angular_panels = 96);

} // namespace tiescan
