#include "tiescan/detect.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <json.hpp>

#include "tiescan/analytic.hpp"
#include "tiescan/distance.hpp"
#include "tiescan/errors.hpp"
#include "tiescan/moments.hpp"
#include "tiescan/permutation.hpp"
#include "tiescan/scan.hpp"
#include "tiescan/scheme.hpp"

namespace tiescan {

void RunConfig::validate() const {
    if (alpha <= 0.0 || alpha >= 1.0) throw ConfigError("alpha must lie in (0,1)");
    if (segment_pvalue <= 0.0 || segment_pvalue >= 1.0)
        throw ConfigError("segmentation threshold must lie in (0,1)");
    if (permutations < 1) throw ConfigError("permutation count must be positive");
    if (n0 >= 0 && n1 >= 0 && n0 > n1) throw ConfigError("window too narrow");
    if (quantize_eps < 0.0) throw ConfigError("quantization step must be non-negative");
}

std::vector<Statistic> RunConfig::effective_statistics() const {
    if (statistics.empty())
        return {Statistic::weighted, Statistic::generalized, Statistic::max_type};
    return statistics;
}

std::vector<Mode> RunConfig::effective_modes() const {
    switch (mode) {
    case ModeSelect::averaging: return {Mode::averaging};
    case ModeSelect::union_graph: return {Mode::union_graph};
    case ModeSelect::both: return {Mode::averaging, Mode::union_graph};
    }
    return {};
}

double PValueSet::primary(Inference inference) const {
    switch (inference) {
    case Inference::analytic: return analytic.value_or(1.0);
    case Inference::analytic_skew:
        return analytic_skew ? *analytic_skew : analytic.value_or(1.0);
    case Inference::permutation: return permutation.value_or(1.0);
    case Inference::exhaustive: return exhaustive.value_or(1.0);
    }
    return 1.0;
}

namespace {

struct Pipeline {
    Categorized cat;
    DistanceMatrix dist;
    BaseGraph graph;
    int n0 = 0, n1 = 0;
};

Pipeline prepare(const ObservationSequence& observations, const RunConfig& config) {
    config.validate();
    if (observations.size() < 4) throw InputError("need at least 4 observations");
    Pipeline p;
    p.cat = categorize(observations);
    p.dist = pairwise_distances(p.cat.representatives, config.metric);
    if (config.quantize_eps > 0.0) p.dist = quantize(p.dist, config.quantize_eps);
    p.graph = graph_from_kind(p.dist, config.graph, config.user_edges);
    const int n = p.cat.seq.n();
    if (config.n0 < 0 && config.n1 < 0) {
        std::tie(p.n0, p.n1) = default_window(n);
    } else {
        int n0 = config.n0 < 0 ? default_window(n).first : config.n0;
        int n1 = config.n1 < 0 ? n - n0 : config.n1;
        std::tie(p.n0, p.n1) = clamp_window(n, n0, n1);
    }
    return p;
}

// Single-change analysis of one mode: estimates plus the p-values the
// configured inference asks for (the plain analytic value always rides
// along, it is free).
std::vector<StatResult> analyze_mode(const CategorizedSequence& seq, const BaseGraph& graph,
                                     Mode mode, int n0, int n1, const RunConfig& config) {
    PairWeightScheme scheme = scheme_from(graph, seq.counts, mode);
    const bool want_skew = config.inference == Inference::analytic ? false : true;
    MomentProfile moments = moment_profile(scheme, n0, n1, want_skew);
    BasicQuantityProfile quantities = basic_quantity_profile(seq, scheme);
    ScanProfile profile = standardize(quantities, moments);

    std::vector<StatResult> out;
    for (Statistic stat : config.effective_statistics()) {
        StatResult res;
        res.statistic = stat;
        res.mode = mode;
        ChangePointEstimate est = single_change_scan(profile, stat);
        res.max_value = est.max_value;
        res.tau = est.tau;

        TailQuery q;
        q.statistic = stat;
        q.b = est.max_value;
        q.n = seq.n();
        q.n0 = n0;
        q.n1 = n1;
        if (est.max_value > 0.0) {
            res.p.analytic = pvalue_single(q).value;
            if (want_skew && stat != Statistic::generalized) {
                q.gamma_w = moments.gamma_w;
                q.gamma_d = moments.gamma_d;
                ApproxPValue ap = pvalue_single_skewcorrected(q);
                res.p.analytic_skew = ap.value;
                res.p.skew_inapplicable = ap.inapplicable_points;
            } else if (want_skew && stat == Statistic::generalized) {
                // The generalized statistic carries no skew correction;
                // report the plain analytic value in that slot.
                res.p.analytic_skew = res.p.analytic;
            }
        } else {
            res.p.analytic = 1.0;
            if (want_skew) res.p.analytic_skew = 1.0;
        }
        if (config.inference == Inference::permutation) {
            PermutationPlan plan;
            plan.permutations = config.permutations;
            plan.seed = config.seed;
            plan.statistic = stat;
            plan.threads = config.threads;
            res.p.permutation = permutation_pvalue(seq, scheme, moments, plan).pvalue;
        }
        if (config.inference == Inference::exhaustive)
            res.p.exhaustive = exhaustive_pvalue(seq, scheme, moments, stat);
        out.push_back(std::move(res));
    }
    return out;
}

ProfileDump dump_profile(const CategorizedSequence& seq, const BaseGraph& graph, Mode mode,
                         int n0, int n1) {
    PairWeightScheme scheme = scheme_from(graph, seq.counts, mode);
    MomentProfile moments = moment_profile(scheme, n0, n1, false);
    ScanProfile profile = standardize(basic_quantity_profile(seq, scheme), moments);
    ProfileDump dump;
    dump.mode = mode;
    dump.n0 = n0;
    dump.n1 = n1;
    dump.zw = profile.zw;
    dump.zd = profile.zd;
    dump.s = profile.s;
    dump.m = profile.m;
    return dump;
}

} // namespace

std::vector<int> shared_change_points(std::vector<int> averaging, std::vector<int> unions) {
    std::sort(averaging.begin(), averaging.end());
    std::sort(unions.begin(), unions.end());
    std::vector<int> shared;
    std::vector<bool> used(unions.size(), false);
    for (int a : averaging) {
        int best = -1;
        int best_gap = 5;
        for (std::size_t j = 0; j < unions.size(); ++j) {
            if (used[j]) continue;
            const int gap = std::abs(a - unions[j]);
            if (gap < best_gap) {
                best_gap = gap;
                best = static_cast<int>(j);
            }
        }
        if (best >= 0) {
            used[best] = true;
            shared.push_back(static_cast<int>(std::floor((a + unions[best]) / 2.0)));
        }
    }
    std::sort(shared.begin(), shared.end());
    return shared;
}

Report detect(const ObservationSequence& observations, const RunConfig& config) {
    Pipeline p = prepare(observations, config);
    Report report;
    report.command = "detect";
    report.config = config;
    report.n = p.cat.seq.n();
    report.K = p.cat.seq.K();
    report.conditions = condition_diagnostics(p.graph, p.cat.seq.counts, p.cat.seq.n());

    for (Mode mode : config.effective_modes()) {
        auto results = analyze_mode(p.cat.seq, p.graph, mode, p.n0, p.n1, config);
        report.results.insert(report.results.end(), results.begin(), results.end());
        if (config.emit_profile)
            report.profiles.push_back(dump_profile(p.cat.seq, p.graph, mode, p.n0, p.n1));
    }

    if (config.mode == ModeSelect::both) {
        // Shared points per statistic; report the union over statistics of
        // pairs found by both approaches.
        std::vector<int> shared;
        for (Statistic stat : config.effective_statistics()) {
            std::vector<int> a, u;
            for (const auto& r : report.results) {
                if (r.statistic != stat) continue;
                if (r.p.primary(config.inference) < config.alpha) {
                    if (r.mode == Mode::averaging) a.push_back(r.tau);
                    else u.push_back(r.tau);
                }
            }
            for (int s : shared_change_points(a, u)) shared.push_back(s);
        }
        std::sort(shared.begin(), shared.end());
        shared.erase(std::unique(shared.begin(), shared.end()), shared.end());
        report.shared_points = shared;
    }
    return report;
}

Report detect_interval(const ObservationSequence& observations, const RunConfig& config) {
    Pipeline p = prepare(observations, config);
    Report report;
    report.command = "interval";
    report.config = config;
    report.n = p.cat.seq.n();
    report.K = p.cat.seq.K();
    report.conditions = condition_diagnostics(p.graph, p.cat.seq.counts, p.cat.seq.n());

    for (Mode mode : config.effective_modes()) {
        PairWeightScheme scheme = scheme_from(p.graph, p.cat.seq.counts, mode);
        IntervalMoments moments = interval_moments(scheme, p.n0, p.n1, false);
        for (Statistic stat : config.effective_statistics()) {
            StatResult res;
            res.statistic = stat;
            res.mode = mode;
            res.interval = true;
            ChangePointEstimate est = changed_interval_scan(p.cat.seq, scheme, moments, stat);
            res.max_value = est.max_value;
            res.tau1 = est.tau1;
            res.tau2 = est.tau2;
            // Interval inference is permutation-based.
            PermutationPlan plan;
            plan.permutations = config.permutations;
            plan.seed = config.seed;
            plan.statistic = stat;
            plan.threads = config.threads;
            plan.interval = true;
            res.p.permutation =
                permutation_pvalue_interval(p.cat.seq, scheme, moments, plan).pvalue;
            report.results.push_back(std::move(res));
        }
    }
    return report;
}

namespace {

struct SegmentTask {
    int lo, hi; // 1-based inclusive
};

// Binary segmentation over one mode. Splits at detected changes while
// the sub-segment p-value stays below the threshold.
std::vector<SegmentDetection> segment_mode(const CategorizedSequence& seq,
                                           const DistanceMatrix& dist, Mode mode,
                                           const RunConfig& config, int min_len, int& order) {
    std::vector<SegmentDetection> found;
    std::deque<SegmentTask> queue{{1, seq.n()}};
    const Statistic stat = config.effective_statistics().front();

    while (!queue.empty()) {
        SegmentTask task = queue.front();
        queue.pop_front();
        const int len = task.hi - task.lo + 1;
        if (len < std::max(4, min_len)) continue;

        // Rebuild the pipeline on the sub-sequence.
        std::vector<int> sub_labels(seq.labels.begin() + (task.lo - 1),
                                    seq.labels.begin() + task.hi);
        std::vector<int> present;
        std::vector<int> relabel(seq.K(), -1);
        for (int lab : sub_labels) {
            if (relabel[lab] < 0) {
                relabel[lab] = static_cast<int>(present.size());
                present.push_back(lab);
            }
        }
        if (present.size() < 2) continue;
        for (int& lab : sub_labels) lab = relabel[lab];
        CategorizedSequence sub = sequence_from_labels(std::move(sub_labels));

        try {
            DistanceMatrix sub_dist = dist.restrict(present);
            BaseGraph graph = graph_from_kind(sub_dist, config.graph, config.user_edges);
            auto [n0, n1] = default_window(sub.n());
            PairWeightScheme scheme = scheme_from(graph, sub.counts, mode);
            const bool want_skew = config.inference != Inference::analytic;
            MomentProfile moments = moment_profile(scheme, n0, n1, want_skew);
            ScanProfile profile = standardize(basic_quantity_profile(sub, scheme), moments);
            ChangePointEstimate est = single_change_scan(profile, stat);

            double pvalue = 1.0;
            if (config.inference == Inference::permutation) {
                PermutationPlan plan;
                plan.permutations = config.permutations;
                plan.seed = config.seed ^ (std::uint64_t(task.lo) << 32) ^ std::uint64_t(task.hi);
                plan.statistic = stat;
                plan.threads = config.threads;
                pvalue = permutation_pvalue(sub, scheme, moments, plan).pvalue;
            } else if (est.max_value > 0.0) {
                TailQuery q;
                q.statistic = stat;
                q.b = est.max_value;
                q.n = sub.n();
                q.n0 = n0;
                q.n1 = n1;
                if (want_skew && stat != Statistic::generalized) {
                    q.gamma_w = moments.gamma_w;
                    q.gamma_d = moments.gamma_d;
                    pvalue = pvalue_single_skewcorrected(q).value;
                } else {
                    pvalue = pvalue_single(q).value;
                }
            }
            if (pvalue < config.segment_pvalue) {
                SegmentDetection det;
                det.lo = task.lo;
                det.hi = task.hi;
                det.tau = task.lo - 1 + est.tau;
                det.pvalue = pvalue;
                det.order = ++order;
                found.push_back(det);
                queue.push_back({task.lo, det.tau});
                queue.push_back({det.tau + 1, task.hi});
            }
        } catch (const DegenerateStatisticError&) {
            // Untestable segment; stop recursing into it.
        } catch (const ConfigError&) {
            // Window cannot be formed on a segment this small.
        }
    }
    return found;
}

} // namespace

Report segment(const ObservationSequence& observations, const RunConfig& config) {
    Pipeline p = prepare(observations, config);
    Report report;
    report.command = "segment";
    report.config = config;
    report.n = p.cat.seq.n();
    report.K = p.cat.seq.K();
    report.conditions = condition_diagnostics(p.graph, p.cat.seq.counts, p.cat.seq.n());

    const int min_len = config.min_segment_length > 0 ? config.min_segment_length : 2 * p.n0;
    for (Mode mode : config.effective_modes()) {
        int order = 0;
        auto found = segment_mode(p.cat.seq, p.dist, mode, config, min_len, order);
        if (mode == Mode::averaging)
            report.segments_averaging = std::move(found);
        else
            report.segments_union = std::move(found);
    }
    if (config.mode == ModeSelect::both) {
        std::vector<int> a, u;
        for (const auto& d : report.segments_averaging) a.push_back(d.tau);
        for (const auto& d : report.segments_union) u.push_back(d.tau);
        report.shared_points = shared_change_points(a, u);
    }
    return report;
}

Report diagnose(const ObservationSequence& observations, const RunConfig& config) {
    Pipeline p = prepare(observations, config);
    Report report;
    report.command = "diagnose";
    report.config = config;
    report.n = p.cat.seq.n();
    report.K = p.cat.seq.K();
    report.conditions = condition_diagnostics(p.graph, p.cat.seq.counts, p.cat.seq.n());
    return report;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json config_json(const RunConfig& c) {
    ordered_json j;
    j["input"] = c.input_echo;
    j["format"] = to_string(c.format);
    j["metric"] = to_string(c.metric);
    j["graph"] = to_string(c.graph);
    j["mode"] = c.mode == ModeSelect::both ? "both" : to_string(c.effective_modes().front());
    ordered_json stats = ordered_json::array();
    for (Statistic s : c.effective_statistics()) stats.push_back(to_string(s));
    j["statistics"] = stats;
    j["n0"] = c.n0;
    j["n1"] = c.n1;
    j["alpha"] = c.alpha;
    j["inference"] = to_string(c.inference);
    j["permutations"] = c.permutations;
    j["seed"] = c.seed;
    j["quantize"] = c.quantize_eps;
    return j;
}

ordered_json segments_json(const std::vector<SegmentDetection>& segs) {
    ordered_json arr = ordered_json::array();
    for (const auto& s : segs) {
        ordered_json j;
        j["segment_lo"] = s.lo;
        j["segment_hi"] = s.hi;
        j["tau"] = s.tau;
        j["pvalue"] = s.pvalue;
        j["order"] = s.order;
        arr.push_back(j);
    }
    return arr;
}

} // namespace

std::string Report::to_json(int indent) const {
    ordered_json j;
    j["schema_version"] = 1;
    j["command"] = command;
    j["config"] = config_json(config);
    j["n"] = n;
    j["K"] = K;

    ordered_json results_json = ordered_json::array();
    for (const auto& r : results) {
        ordered_json rj;
        rj["statistic"] = to_string(r.statistic);
        rj["mode"] = to_string(r.mode);
        rj["max"] = r.max_value;
        if (r.interval) {
            rj["tau1"] = r.tau1;
            rj["tau2"] = r.tau2;
        } else {
            rj["tau"] = r.tau;
        }
        ordered_json pv;
        if (r.p.analytic) pv["analytic"] = *r.p.analytic;
        if (r.p.analytic_skew) pv["analytic_skew"] = *r.p.analytic_skew;
        if (r.p.permutation) pv["permutation"] = *r.p.permutation;
        if (r.p.exhaustive) pv["exhaustive"] = *r.p.exhaustive;
        rj["p_values"] = pv;
        rj["skew_inapplicable"] = r.p.skew_inapplicable;
        results_json.push_back(rj);
    }
    j["results"] = results_json;

    if (shared_points) j["shared_change_points"] = *shared_points;

    ordered_json conds = ordered_json::array();
    for (const auto& e : conditions.entries) {
        ordered_json cj;
        cj["condition"] = e.label;
        cj["quantity"] = e.quantity;
        cj["normalizer"] = e.normalizer;
        cj["ratio"] = e.ratio;
        cj["warn"] = e.warn;
        conds.push_back(cj);
    }
    j["conditions"] = conds;

    if (!profiles.empty()) {
        ordered_json profs = ordered_json::array();
        for (const auto& p : profiles) {
            ordered_json pj;
            pj["mode"] = to_string(p.mode);
            pj["n0"] = p.n0;
            pj["n1"] = p.n1;
            ordered_json rows = ordered_json::array();
            for (std::size_t i = 0; i < p.zw.size(); ++i) {
                ordered_json row;
                row["t"] = p.n0 + static_cast<int>(i);
                row["Zw"] = p.zw[i];
                row["Zd"] = p.zd[i];
                row["S"] = p.s[i];
                row["M"] = p.m[i];
                rows.push_back(row);
            }
            pj["rows"] = rows;
            profs.push_back(pj);
        }
        j["profile"] = profs;
    }

    if (command == "segment") {
        ordered_json seg;
        seg["averaging"] = segments_json(segments_averaging);
        seg["union"] = segments_json(segments_union);
        j["segmentation"] = seg;
    }
    return j.dump(indent) + "\n";
}

} // namespace tiescan
