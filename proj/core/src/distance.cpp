#include "tiescan/distance.hpp"

#include <cmath>

#include "tiescan/errors.hpp"

namespace tiescan {

DistanceMatrix DistanceMatrix::zeros(int K) {
    DistanceMatrix d;
    d.K = K;
    d.values.assign(static_cast<std::size_t>(K) * K, 0.0);
    return d;
}

DistanceMatrix DistanceMatrix::restrict(const std::vector<int>& categories) const {
    DistanceMatrix out = zeros(static_cast<int>(categories.size()));
    for (int i = 0; i < out.K; ++i)
        for (int j = i + 1; j < out.K; ++j)
            out.set(i, j, at(categories[i], categories[j]));
    return out;
}

void DistanceMatrix::validate() const {
    for (int u = 0; u < K; ++u) {
        if (at(u, u) != 0.0) throw InputError("distance matrix has nonzero diagonal");
        for (int v = u + 1; v < K; ++v) {
            double d = at(u, v);
            if (!std::isfinite(d) || d < 0.0) throw InputError("invalid distance entry");
            if (d != at(v, u)) throw InputError("distance matrix not symmetric");
        }
    }
}

namespace {

double frobenius_norm(const Observation& a) {
    double s = 0.0;
    for (double x : a.data) s += x * x;
    return std::sqrt(s);
}

} // namespace

double distance_between(const Observation& a, const Observation& b, Metric metric) {
    if (a.rows != b.rows || a.cols != b.cols || a.data.size() != b.data.size())
        throw InputError("observation shape mismatch");
    switch (metric) {
    case Metric::euclidean: {
        double s = 0.0;
        for (std::size_t i = 0; i < a.data.size(); ++i) {
            double d = a.data[i] - b.data[i];
            s += d * d;
        }
        return std::sqrt(s);
    }
    case Metric::l1: {
        double s = 0.0;
        for (std::size_t i = 0; i < a.data.size(); ++i) s += std::abs(a.data[i] - b.data[i]);
        return s;
    }
    case Metric::hamming_entries: {
        // On 0/1 matrices this equals the squared Frobenius distance.
        double s = 0.0;
        for (std::size_t i = 0; i < a.data.size(); ++i) s += a.data[i] != b.data[i] ? 1.0 : 0.0;
        return s;
    }
    case Metric::normalized_frobenius: {
        double na = frobenius_norm(a);
        double nb = frobenius_norm(b);
        if (na == 0.0 || nb == 0.0) throw InputError("zero-norm observation");
        double s = 0.0;
        for (std::size_t i = 0; i < a.data.size(); ++i) {
            double d = a.data[i] - b.data[i];
            s += d * d;
        }
        return std::sqrt(s) / std::sqrt(na * nb);
    }
    }
    throw ConfigError("unknown metric");
}

DistanceMatrix pairwise_distances(const ObservationSequence& representatives, Metric metric) {
    const int K = static_cast<int>(representatives.size());
    DistanceMatrix d = DistanceMatrix::zeros(K);
    for (int u = 0; u < K; ++u)
        for (int v = u + 1; v < K; ++v)
            d.set(u, v, distance_between(representatives[u], representatives[v], metric));
    return d;
}

DistanceMatrix quantize(const DistanceMatrix& d, double eps) {
    if (eps <= 0.0) return d;
    DistanceMatrix out = d;
    for (auto& x : out.values) x = std::round(x / eps) * eps;
    for (int u = 0; u < out.K; ++u) out.set(u, u, 0.0);
    return out;
}

} // namespace tiescan
