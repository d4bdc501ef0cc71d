#pragma once

#include <string>

namespace tiescan {

// How repeated observations are folded into the statistic: weights that
// average over all optimal observation-level graphs, or weights of the
// union of all optimal graphs.
enum class Mode { averaging, union_graph };

// Scan statistics. "difference" is the two-sided |Zd| scan, used as a
// building block of the max-type statistic.
enum class Statistic { weighted, difference, generalized, max_type };

enum class Metric { euclidean, l1, hamming_entries, normalized_frobenius };

enum class GraphKind { mst, union_msts, nearest_neighbor, user_edges };

enum class Inference { analytic, analytic_skew, permutation, exhaustive };

std::string to_string(Mode m);
std::string to_string(Statistic s);
std::string to_string(Metric m);
std::string to_string(GraphKind g);
std::string to_string(Inference i);

Mode parse_mode(const std::string& s);
Statistic parse_statistic(const std::string& s);
Metric parse_metric(const std::string& s);
GraphKind parse_graph_kind(const std::string& s);
Inference parse_inference(const std::string& s);

} // namespace tiescan
