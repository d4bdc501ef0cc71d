#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tiescan/rng.hpp"
#include "tiescan/sequence.hpp"
#include "tiescan/types.hpp"

namespace tiescan {

// Sequence of multinomial count vectors; the cell probabilities switch
// after position tau (tau = 0 means no change).
struct MultinomialModel {
    int size = 10;
    std::vector<double> probs_before;
    std::vector<double> probs_after;
};

// Sequence of configuration-model graphs on v vertices; the degree
// sequence switches after tau. Change kinds:
//   equal:  two vertices move from degree 2 to degree 4
//   random: two vertices get degrees drawn uniformly from {3,4,5},
//           redrawn until the degree sum is even
struct ConfigModel {
    enum class ChangeKind { equal, random };
    int v = 6;
    std::vector<int> degrees_before;
    std::vector<int> degrees_after; // ignored when kind == random
    ChangeKind kind = ChangeKind::equal;
};

struct SimSpec {
    std::string name;
    std::variant<MultinomialModel, ConfigModel> family;
    int n = 200;
    int tau = 0; // 0 = null (no change)
    int replicates = 100;
    std::uint64_t seed = 0;
};

std::vector<double> multinomial_draw(int size, const std::vector<double>& probs, Rng& rng);

ObservationSequence gen_multinomial_sequence(const MultinomialModel& model, int n, int tau,
                                             Rng& rng);

// Uniform matching on degree stubs. Returns the raw stub pairing; tests
// use it to check stub conservation before collapse.
std::vector<std::pair<int, int>> sample_stub_matching(const std::vector<int>& degrees, Rng& rng);

// Adjacency matrix of the collapsed simple graph (self-loops dropped,
// multi-edges merged). keep_multigraph keeps multiplicities and the
// self-loop diagonal instead.
Observation config_model_graph(const std::vector<int>& degrees, Rng& rng,
                               bool keep_multigraph = false);

ObservationSequence gen_config_model_sequence(const ConfigModel& model, int n, int tau, Rng& rng,
                                              bool keep_multigraph = false);

ObservationSequence generate_sequence(const SimSpec& spec, Rng& rng);

struct PowerRow {
    std::string scenario;
    Statistic statistic = Statistic::generalized;
    Mode mode = Mode::averaging;
    int replicates = 0;
    int rejections = 0;
    int location_accurate = 0; // rejections with |tau_hat - tau| <= tolerance
    int failures = 0;          // replicates whose pipeline errored
};

struct PowerTable {
    std::vector<PowerRow> rows;

    std::string to_csv() const; // header: scenario,statistic,mode,power,loc_acc
};

struct PowerMethodConfig {
    Metric metric = Metric::normalized_frobenius;
    GraphKind graph = GraphKind::nearest_neighbor;
    double alpha = 0.05;
    int location_tolerance = 20;
    Inference inference = Inference::analytic_skew; // generalized statistic always plain analytic
    long permutations = 1000;                       // when inference == permutation
    int threads = 0;
};

// Full pipeline per replicate: categorize, distances, graph, both modes,
// all three scan statistics. Failed replicates are counted, never
// silently dropped.
PowerTable power_study(const std::vector<SimSpec>& specs, const PowerMethodConfig& config);

} // namespace tiescan
