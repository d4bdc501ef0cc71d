#include "tiescan/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tiescan/errors.hpp"

namespace tiescan {

namespace {

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

// Linear interpolation of a per-t profile at a fractional split t.
double interp_profile(std::span<const double> profile, int n0, int n1, double t) {
    if (profile.empty()) return 0.0;
    double clamped = std::clamp(t, double(n0), double(n1));
    int lo = std::min(int(std::floor(clamped)) - n0, int(profile.size()) - 1);
    lo = std::max(lo, 0);
    int hi = std::min(lo + 1, int(profile.size()) - 1);
    double frac = std::clamp(clamped - (n0 + lo), 0.0, 1.0);
    return profile[lo] * (1.0 - frac) + profile[hi] * frac;
}

// Marginal crossing-probability correction factor from the third moment.
// Returns {1, false} where the tilted approximation is undefined.
struct SkewFactor {
    double value = 1.0;
    bool applicable = true;
};

SkewFactor skew_factor(double gamma, double b) {
    if (std::abs(gamma) < 1e-8) return {1.0, true};
    const double disc = 1.0 + 2.0 * gamma * b;
    if (disc <= 0.0) return {1.0, false};
    const double theta = (std::sqrt(disc) - 1.0) / gamma;
    const double v =
        std::exp(0.5 * (b - theta) * (b - theta) + gamma * theta * theta * theta / 6.0) /
        std::pow(disc, 0.25);
    if (!std::isfinite(v)) return {1.0, false};
    return {v, true};
}

struct Integral {
    double value = 0.0;
    int inapplicable = 0;
};

// Composite Simpson over x in [n0/n, n1/n]. The integrand callback gets
// (x, t = n x) and may flag a fallback grid point.
template <typename F>
Integral simpson(long long n, int n0, int n1, int panels, F&& f) {
    if (panels < 2) panels = 2;
    if (panels % 2) panels++;
    const double x0 = double(n0) / double(n);
    const double x1 = double(n1) / double(n);
    const double h = (x1 - x0) / panels;
    Integral out;
    double sum = 0.0;
    for (int i = 0; i <= panels; ++i) {
        const double x = x0 + h * i;
        bool bad = false;
        double v = f(x, double(n) * x, bad);
        if (!std::isfinite(v)) {
            out.inapplicable++;
            continue;
        }
        if (bad) out.inapplicable++;
        const double weight = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += weight * v;
    }
    out.value = sum * h / 3.0;
    return out;
}

void check_query(const TailQuery& q) {
    if (q.b <= 0.0) throw ConfigError("threshold must be positive");
    if (q.n < 4) throw InputError("need at least 4 observations");
    if (q.n0 < 2 || q.n1 > q.n - 2 || q.n0 >= q.n1) throw ConfigError("invalid scan window");
}

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

// One-sided weighted tail; optional skew profile.
Integral weighted_tail(const TailQuery& q, bool skew) {
    const double b = q.b;
    Integral integral = simpson(q.n, q.n0, q.n1, q.panels, [&](double x, double t, bool& bad) {
        const double h = h_weighted(q.n, x);
        double factor = 1.0;
        if (skew) {
            const double gamma = interp_profile(q.gamma_w, q.n0, q.n1, t);
            auto sf = skew_factor(gamma, b);
            factor = sf.value;
            bad = !sf.applicable;
        }
        return factor * h * nu(b * std::sqrt(2.0 * h / double(q.n)));
    });
    integral.value *= b * normal_pdf(b);
    return integral;
}

// Two-sided difference tail; the lower tail flips the sign of the skew.
Integral difference_tail(const TailQuery& q, bool skew) {
    const double b = q.b;
    Integral integral = simpson(q.n, q.n0, q.n1, q.panels, [&](double x, double t, bool& bad) {
        const double h = h_difference(q.n, x);
        double factor = 2.0;
        if (skew) {
            const double gamma = interp_profile(q.gamma_d, q.n0, q.n1, t);
            auto up = skew_factor(gamma, b);
            auto down = skew_factor(-gamma, b);
            factor = up.value + down.value;
            bad = !(up.applicable && down.applicable);
        }
        return factor * h * nu(b * std::sqrt(2.0 * h / double(q.n)));
    });
    integral.value *= b * normal_pdf(b);
    return integral;
}

Integral generalized_tail(const TailQuery& q) {
    const double bs = q.b;
    int wpanels = q.angular_panels;
    if (wpanels < 2) wpanels = 2;
    if (wpanels % 2) wpanels++;
    const double hw_step = 2.0 * std::numbers::pi / wpanels;
    Integral out;
    double outer = 0.0;
    for (int j = 0; j <= wpanels; ++j) {
        const double ang = hw_step * j;
        const double c2 = std::cos(ang) * std::cos(ang);
        const double s2 = 1.0 - c2;
        Integral inner = simpson(q.n, q.n0, q.n1, q.panels, [&](double x, double, bool&) {
            const double h = h_difference(q.n, x) * c2 + h_weighted(q.n, x) * s2;
            return h * nu(std::sqrt(2.0 * bs * h / double(q.n)));
        });
        out.inapplicable += inner.inapplicable;
        const double weight = (j == 0 || j == wpanels) ? 1.0 : (j % 2 ? 4.0 : 2.0);
        outer += weight * inner.value;
    }
    out.value = outer * hw_step / 3.0;
    out.value *= bs * std::exp(-bs / 2.0) / (2.0 * std::numbers::pi);
    return out;
}

} // namespace

double nu(double s) {
    if (s < 0.0) throw ConfigError("nu requires a non-negative argument");
    if (s < 1e-12) return 1.0;
    const double half = s / 2.0;
    return (2.0 / s) * (normal_cdf(half) - 0.5) / (half * normal_cdf(half) + normal_pdf(half));
}

double h_weighted(long long n, double x) {
    if (x <= 0.0 || x >= 1.0) throw ConfigError("h functions need x in (0,1)");
    const double nn = double(n);
    const double num = (nn - 1.0) * (2.0 * nn * x * x - 2.0 * nn * x + 1.0);
    const double den = 2.0 * x * (1.0 - x) * (nn * nn * x * x - nn * nn * x + nn - 1.0);
    return num / den;
}

double h_difference(long long n, double x) {
    if (x <= 0.0 || x >= 1.0) throw ConfigError("h functions need x in (0,1)");
    (void)n; // the finite-sample form coincides with the limit
    return 1.0 / (2.0 * x * (1.0 - x));
}

double h_weighted_limit(double x) {
    if (x <= 0.0 || x >= 1.0) throw ConfigError("h functions need x in (0,1)");
    return 1.0 / (x * (1.0 - x));
}

double h_difference_limit(double x) {
    return h_difference(0, x);
}

ApproxPValue pvalue_single(const TailQuery& q) {
    check_query(q);
    ApproxPValue out;
    switch (q.statistic) {
    case Statistic::weighted: {
        Integral i = weighted_tail(q, false);
        out.value = clamp01(i.value);
        out.inapplicable_points = i.inapplicable;
        break;
    }
    case Statistic::difference: {
        Integral i = difference_tail(q, false);
        out.value = clamp01(i.value);
        out.inapplicable_points = i.inapplicable;
        break;
    }
    case Statistic::max_type: {
        Integral iw = weighted_tail(q, false);
        Integral id = difference_tail(q, false);
        out.value = clamp01(1.0 - (1.0 - clamp01(id.value)) * (1.0 - clamp01(iw.value)));
        out.inapplicable_points = iw.inapplicable + id.inapplicable;
        break;
    }
    case Statistic::generalized: {
        Integral i = generalized_tail(q);
        out.value = clamp01(i.value);
        out.inapplicable_points = i.inapplicable;
        break;
    }
    }
    return out;
}

ApproxPValue pvalue_single_skewcorrected(const TailQuery& q) {
    check_query(q);
    if (q.statistic == Statistic::generalized)
        throw ConfigError("no skewness correction for the generalized statistic");
    const int want = q.n1 - q.n0 + 1;
    if (q.statistic != Statistic::difference && int(q.gamma_w.size()) != want)
        throw ConfigError("skewness profile missing or wrong length");
    if (q.statistic != Statistic::weighted && int(q.gamma_d.size()) != want)
        throw ConfigError("skewness profile missing or wrong length");

    ApproxPValue out;
    out.skew_corrected = true;
    switch (q.statistic) {
    case Statistic::weighted: {
        Integral i = weighted_tail(q, true);
        out.value = clamp01(i.value);
        out.inapplicable_points = i.inapplicable;
        break;
    }
    case Statistic::difference: {
        Integral i = difference_tail(q, true);
        out.value = clamp01(i.value);
        out.inapplicable_points = i.inapplicable;
        break;
    }
    case Statistic::max_type: {
        Integral iw = weighted_tail(q, true);
        Integral id = difference_tail(q, true);
        out.value = clamp01(1.0 - (1.0 - clamp01(id.value)) * (1.0 - clamp01(iw.value)));
        out.inapplicable_points = iw.inapplicable + id.inapplicable;
        break;
    }
    default: break;
    }
    return out;
}

double critical_value(Statistic stat, double alpha, long long n, int n0, int n1,
                      std::span<const double> gamma_w, std::span<const double> gamma_d,
                      int panels, int angular_panels) {
    if (alpha <= 0.0 || alpha >= 1.0) throw ConfigError("alpha must lie in (0,1)");
    const bool skew = !gamma_w.empty() || !gamma_d.empty();
    if (skew && stat == Statistic::generalized)
        throw ConfigError("no skewness correction for the generalized statistic");

    TailQuery q;
    q.statistic = stat;
    q.n = n;
    q.n0 = n0;
    q.n1 = n1;
    q.panels = panels;
    q.angular_panels = angular_panels;
    q.gamma_w = gamma_w;
    q.gamma_d = gamma_d;

    auto eval = [&](double b) {
        q.b = b;
        return skew ? pvalue_single_skewcorrected(q).value : pvalue_single(q).value;
    };

    double lo = stat == Statistic::generalized ? 1.0 : 0.5;
    double hi = stat == Statistic::generalized ? 50.0 : 10.0;
    if (eval(lo) < alpha || eval(hi) > alpha)
        throw ConfigError("alpha not bracketed by the search interval");
    while (hi - lo > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        if (eval(mid) > alpha)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace tiescan
