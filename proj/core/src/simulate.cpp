#include "tiescan/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tiescan/analytic.hpp"
#include "tiescan/base_graph.hpp"
#include "tiescan/distance.hpp"
#include "tiescan/errors.hpp"
#include "tiescan/moments.hpp"
#include "tiescan/permutation.hpp"
#include "tiescan/scan.hpp"
#include "tiescan/scheme.hpp"

namespace tiescan {

namespace {

void check_probs(const std::vector<double>& probs) {
    if (probs.empty()) throw ConfigError("empty probability vector");
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0) || p > 1.0) throw ConfigError("invalid cell probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("cell probabilities must sum to 1");
}

} // namespace

std::vector<double> multinomial_draw(int size, const std::vector<double>& probs, Rng& rng) {
    check_probs(probs);
    std::vector<double> cells(probs.size(), 0.0);
    std::vector<double> cdf(probs.size());
    std::partial_sum(probs.begin(), probs.end(), cdf.begin());
    cdf.back() = 1.0;
    for (int s = 0; s < size; ++s) {
        const double u = rng.uniform01();
        const std::size_t idx =
            std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
        cells[std::min(idx, cells.size() - 1)] += 1.0;
    }
    return cells;
}

ObservationSequence gen_multinomial_sequence(const MultinomialModel& model, int n, int tau,
                                             Rng& rng) {
    check_probs(model.probs_before);
    if (tau > 0) check_probs(model.probs_after);
    if (tau < 0 || tau >= n + 1) throw ConfigError("change location out of range");
    ObservationSequence out;
    out.reserve(n);
    for (int i = 1; i <= n; ++i) {
        const auto& probs = (tau > 0 && i > tau) ? model.probs_after : model.probs_before;
        out.push_back(Observation::vector(multinomial_draw(model.size, probs, rng)));
    }
    return out;
}

std::vector<std::pair<int, int>> sample_stub_matching(const std::vector<int>& degrees, Rng& rng) {
    long long total = 0;
    for (int d : degrees) {
        if (d < 0) throw ConfigError("negative degree");
        total += d;
    }
    if (total % 2 != 0) throw ConfigError("degree sum must be even");
    std::vector<int> stubs;
    stubs.reserve(total);
    for (std::size_t i = 0; i < degrees.size(); ++i)
        stubs.insert(stubs.end(), degrees[i], static_cast<int>(i));
    rng.shuffle(stubs);
    std::vector<std::pair<int, int>> matching;
    matching.reserve(total / 2);
    for (std::size_t j = 0; j + 1 < stubs.size(); j += 2)
        matching.emplace_back(stubs[j], stubs[j + 1]);
    return matching;
}

Observation config_model_graph(const std::vector<int>& degrees, Rng& rng, bool keep_multigraph) {
    const int v = static_cast<int>(degrees.size());
    if (v < 2) throw ConfigError("configuration model needs at least 2 vertices");
    auto matching = sample_stub_matching(degrees, rng);
    std::vector<double> adj(static_cast<std::size_t>(v) * v, 0.0);
    for (auto [a, b] : matching) {
        if (keep_multigraph) {
            adj[static_cast<std::size_t>(a) * v + b] += 1.0;
            if (a != b) adj[static_cast<std::size_t>(b) * v + a] += 1.0;
        } else if (a != b) {
            adj[static_cast<std::size_t>(a) * v + b] = 1.0;
            adj[static_cast<std::size_t>(b) * v + a] = 1.0;
        }
    }
    return Observation::matrix(std::move(adj), v, v);
}

namespace {

std::vector<int> random_change_degrees(int v, Rng& rng) {
    // Two vertices move to degrees drawn from {3,4,5}; redraw until the
    // degree sum stays even.
    std::vector<int> degrees(v, 2);
    for (;;) {
        int d1 = 3 + static_cast<int>(rng.uniform_int(3));
        int d2 = 3 + static_cast<int>(rng.uniform_int(3));
        if ((d1 + d2) % 2 == 0) {
            degrees[0] = d1;
            degrees[1] = d2;
            return degrees;
        }
    }
}

} // namespace

ObservationSequence gen_config_model_sequence(const ConfigModel& model, int n, int tau, Rng& rng,
                                              bool keep_multigraph) {
    if (tau < 0 || tau >= n + 1) throw ConfigError("change location out of range");
    std::vector<int> after = model.degrees_after;
    if (tau > 0 && model.kind == ConfigModel::ChangeKind::random)
        after = random_change_degrees(model.v, rng);
    ObservationSequence out;
    out.reserve(n);
    for (int i = 1; i <= n; ++i) {
        const auto& degrees = (tau > 0 && i > tau) ? after : model.degrees_before;
        out.push_back(config_model_graph(degrees, rng, keep_multigraph));
    }
    return out;
}

ObservationSequence generate_sequence(const SimSpec& spec, Rng& rng) {
    if (std::holds_alternative<MultinomialModel>(spec.family))
        return gen_multinomial_sequence(std::get<MultinomialModel>(spec.family), spec.n, spec.tau,
                                        rng);
    return gen_config_model_sequence(std::get<ConfigModel>(spec.family), spec.n, spec.tau, rng);
}

std::string PowerTable::to_csv() const {
    std::ostringstream os;
    os << "scenario,statistic,mode,power,loc_acc\n";
    for (const auto& row : rows) {
        const double denom = row.replicates > 0 ? row.replicates : 1;
        os << row.scenario << ',' << to_string(row.statistic) << ',' << to_string(row.mode) << ','
           << double(row.rejections) / denom << ',' << double(row.location_accurate) / denom
           << '\n';
    }
    return os.str();
}

namespace {

struct ReplicateOutcome {
    bool failed = false;
    // per (statistic, mode): rejected / location-accurate
    struct Cell {
        bool rejected = false;
        bool accurate = false;
    };
    Cell cells[3][2]; // [Zw, S, M] x [averaging, union]
};

constexpr Statistic kPowerStats[3] = {Statistic::weighted, Statistic::generalized,
                                      Statistic::max_type};
constexpr Mode kPowerModes[2] = {Mode::averaging, Mode::union_graph};

ReplicateOutcome run_replicate(const SimSpec& spec, const PowerMethodConfig& config,
                               std::uint64_t stream) {
    ReplicateOutcome outcome;
    Rng rng = Rng::derive(spec.seed, stream);
    try {
        ObservationSequence obs = generate_sequence(spec, rng);
        Categorized cat = categorize(obs);
        DistanceMatrix dist = pairwise_distances(cat.representatives, config.metric);
        BaseGraph graph = graph_from_kind(dist, config.graph);
        auto [n0, n1] = default_window(cat.seq.n());

        for (int mi = 0; mi < 2; ++mi) {
            PairWeightScheme scheme = scheme_from(graph, cat.seq.counts, kPowerModes[mi]);
            const bool want_skew = config.inference == Inference::analytic_skew;
            MomentProfile moments = moment_profile(scheme, n0, n1, want_skew);
            BasicQuantityProfile quantities = basic_quantity_profile(cat.seq, scheme);
            ScanProfile profile = standardize(quantities, moments);

            for (int si = 0; si < 3; ++si) {
                const Statistic stat = kPowerStats[si];
                ChangePointEstimate est = single_change_scan(profile, stat);
                double pvalue = 1.0;
                if (config.inference == Inference::permutation) {
                    PermutationPlan plan;
                    plan.permutations = config.permutations;
                    plan.seed = spec.seed ^ (stream * 0x9E3779B97F4A7C15ULL) ^ (si * 31 + mi);
                    plan.statistic = stat;
                    plan.threads = 1;
                    pvalue = permutation_pvalue(cat.seq, scheme, moments, plan).pvalue;
                } else {
                    TailQuery q;
                    q.statistic = stat;
                    q.b = est.max_value;
                    q.n = cat.seq.n();
                    q.n0 = n0;
                    q.n1 = n1;
                    q.gamma_w = moments.gamma_w;
                    q.gamma_d = moments.gamma_d;
                    // The generalized statistic has no skew correction.
                    const bool skew = config.inference == Inference::analytic_skew &&
                                      stat != Statistic::generalized;
                    pvalue = skew ? pvalue_single_skewcorrected(q).value : pvalue_single(q).value;
                }
                auto& cell = outcome.cells[si][mi];
                cell.rejected = pvalue < config.alpha;
                cell.accurate = cell.rejected && spec.tau > 0 &&
                                std::abs(est.tau - spec.tau) <= config.location_tolerance;
            }
        }
    } catch (const std::exception&) {
        outcome.failed = true;
    }
    return outcome;
}

} // namespace

PowerTable power_study(const std::vector<SimSpec>& specs, const PowerMethodConfig& config) {
    PowerTable table;
    for (const auto& spec : specs) {
        std::vector<ReplicateOutcome> outcomes(spec.replicates);
        const int threads = resolve_threads(config.threads);
        parallel_chunks(static_cast<std::size_t>(spec.replicates), threads,
                        [&](std::size_t begin, std::size_t end) {
                            for (std::size_t r = begin; r < end; ++r)
                                outcomes[r] = run_replicate(spec, config, r);
                        });
        for (int si = 0; si < 3; ++si) {
            for (int mi = 0; mi < 2; ++mi) {
                PowerRow row;
                row.scenario = spec.name;
                row.statistic = kPowerStats[si];
                row.mode = kPowerModes[mi];
                row.replicates = spec.replicates;
                for (const auto& o : outcomes) {
                    if (o.failed) {
                        row.failures++;
                        continue;
                    }
                    row.rejections += o.cells[si][mi].rejected ? 1 : 0;
                    row.location_accurate += o.cells[si][mi].accurate ? 1 : 0;
                }
                table.rows.push_back(std::move(row));
            }
        }
    }
    return table;
}

} // namespace tiescan
