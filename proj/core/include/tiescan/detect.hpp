#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tiescan/base_graph.hpp"
#include "tiescan/ingest.hpp"
#include "tiescan/sequence.hpp"
#include "tiescan/types.hpp"

namespace tiescan {

enum class ModeSelect { averaging, union_graph, both };

struct RunConfig {
    InputFormat format = InputFormat::csv_vectors;
    Metric metric = Metric::euclidean;
    GraphKind graph = GraphKind::nearest_neighbor;
    std::vector<Edge> user_edges;
    ModeSelect mode = ModeSelect::both;
    std::vector<Statistic> statistics; // empty = all of {Zw, S, M}
    int n0 = -1, n1 = -1;              // -1 = default window rule
    double alpha = 0.05;
    Inference inference = Inference::analytic_skew;
    long permutations = 1000;
    std::uint64_t seed = 20240901;
    int threads = 0;
    bool emit_profile = false;
    double quantize_eps = 0.0;
    // binary segmentation
    double segment_pvalue = 1e-3;
    int min_segment_length = -1; // -1 = 2 * n0 of the full sequence
    std::string input_echo;      // echoed into the report

    void validate() const;
    std::vector<Statistic> effective_statistics() const;
    std::vector<Mode> effective_modes() const;
};

struct PValueSet {
    std::optional<double> analytic;
    std::optional<double> analytic_skew;
    std::optional<double> permutation;
    std::optional<double> exhaustive;
    int skew_inapplicable = 0;

    // The p-value selected by the configured inference method.
    double primary(Inference inference) const;
};

struct StatResult {
    Statistic statistic = Statistic::generalized;
    Mode mode = Mode::averaging;
    bool interval = false;
    double max_value = 0.0;
    int tau = 0;
    int tau1 = 0, tau2 = 0;
    PValueSet p;
};

struct SegmentDetection {
    int lo = 0, hi = 0; // 1-based inclusive segment bounds
    int tau = 0;        // absolute position of the detected change
    double pvalue = 1.0;
    int order = 0; // detection order, 1-based
};

struct ProfileDump {
    Mode mode = Mode::averaging;
    int n0 = 0, n1 = 0;
    std::vector<double> zw, zd, s, m;
};

struct Report {
    std::string command;
    RunConfig config;
    int n = 0, K = 0;
    std::vector<StatResult> results;
    std::optional<std::vector<int>> shared_points; // mode = both
    ConditionReport conditions;
    std::vector<ProfileDump> profiles;
    std::vector<SegmentDetection> segments_averaging;
    std::vector<SegmentDetection> segments_union;

    std::string to_json(int indent = 2) const;
};

Report detect(const ObservationSequence& observations, const RunConfig& config);
Report detect_interval(const ObservationSequence& observations, const RunConfig& config);
Report segment(const ObservationSequence& observations, const RunConfig& config);
Report diagnose(const ObservationSequence& observations, const RunConfig& config);

// Pairs change-points found by the two approaches when they lie within 2
// of a common location, i.e. |a - u| <= 4, and places the shared point at
// floor((a + u) / 2). Greedy nearest matching, each point used once.
std::vector<int> shared_change_points(std::vector<int> averaging, std::vector<int> unions);

} // namespace tiescan
