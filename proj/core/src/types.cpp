#include "tiescan/types.hpp"

#include "tiescan/errors.hpp"

namespace tiescan {

std::string to_string(Mode m) {
    return m == Mode::averaging ? "averaging" : "union";
}

std::string to_string(Statistic s) {
    switch (s) {
    case Statistic::weighted: return "Zw";
    case Statistic::difference: return "Zd";
    case Statistic::generalized: return "S";
    case Statistic::max_type: return "M";
    }
    return "?";
}

std::string to_string(Metric m) {
    switch (m) {
    case Metric::euclidean: return "euclidean";
    case Metric::l1: return "l1";
    case Metric::hamming_entries: return "hamming-entries";
    case Metric::normalized_frobenius: return "normalized-frobenius";
    }
    return "?";
}

std::string to_string(GraphKind g) {
    switch (g) {
    case GraphKind::mst: return "mst";
    case GraphKind::union_msts: return "union-msts";
    case GraphKind::nearest_neighbor: return "nnl";
    case GraphKind::user_edges: return "user-edges";
    }
    return "?";
}

std::string to_string(Inference i) {
    switch (i) {
    case Inference::analytic: return "analytic";
    case Inference::analytic_skew: return "analytic-skew";
    case Inference::permutation: return "permutation";
    case Inference::exhaustive: return "exhaustive";
    }
    return "?";
}

Mode parse_mode(const std::string& s) {
    if (s == "averaging" || s == "a") return Mode::averaging;
    if (s == "union" || s == "u") return Mode::union_graph;
    throw ConfigError("unknown mode: " + s);
}

Statistic parse_statistic(const std::string& s) {
    if (s == "Zw" || s == "zw" || s == "weighted") return Statistic::weighted;
    if (s == "Zd" || s == "zd" || s == "difference") return Statistic::difference;
    if (s == "S" || s == "s" || s == "generalized") return Statistic::generalized;
    if (s == "M" || s == "m" || s == "max") return Statistic::max_type;
    throw ConfigError("unknown statistic: " + s);
}

Metric parse_metric(const std::string& s) {
    if (s == "euclidean") return Metric::euclidean;
    if (s == "l1") return Metric::l1;
    if (s == "hamming-entries" || s == "hamming") return Metric::hamming_entries;
    if (s == "normalized-frobenius") return Metric::normalized_frobenius;
    throw ConfigError("unknown metric: " + s);
}

GraphKind parse_graph_kind(const std::string& s) {
    if (s == "mst") return GraphKind::mst;
    if (s == "union-msts") return GraphKind::union_msts;
    if (s == "nnl") return GraphKind::nearest_neighbor;
    if (s == "user-edges") return GraphKind::user_edges;
    throw ConfigError("unknown graph kind: " + s);
}

Inference parse_inference(const std::string& s) {
    if (s == "analytic") return Inference::analytic;
    if (s == "analytic-skew") return Inference::analytic_skew;
    if (s == "permutation") return Inference::permutation;
    if (s == "exhaustive") return Inference::exhaustive;
    throw ConfigError("unknown inference method: " + s);
}

} // namespace tiescan
