#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tiescan/analytic.hpp"
#include "tiescan/detect.hpp"
#include "tiescan/errors.hpp"
#include "tiescan/ingest.hpp"
#include "tiescan/moments.hpp"
#include "tiescan/rng.hpp"
#include "tiescan/scan.hpp"
#include "tiescan/scheme.hpp"
#include "tiescan/simulate.hpp"

namespace {

using tiescan::ConfigError;
using tiescan::InputError;

struct CommonArgs {
    std::string input;
    std::string format = "csv-vectors";
    std::string metric = "euclidean";
    std::string graph = "nnl";
    std::string edges_file;
    std::string mode = "both";
    std::string stat = "all";
    int n0 = -1, n1 = -1;
    double alpha = 0.05;
    std::string infer = "analytic-skew";
    long perm = 0;
    std::uint64_t seed = 20240901;
    int threads = 0;
    bool profile = false;
    double quantize = 0.0;
    std::string out;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_input = true) {
    auto* input = cmd->add_option("--input", args.input, "Input data file or directory");
    if (needs_input) input->required();
    cmd->add_option("--format", args.format, "csv-vectors | adjacency-stack | adjacency-dir");
    cmd->add_option("--metric", args.metric,
                    "euclidean | l1 | hamming-entries | normalized-frobenius");
    cmd->add_option("--graph", args.graph, "mst | union-msts | nnl | user-edges");
    cmd->add_option("--edges", args.edges_file, "Edge list file for --graph user-edges");
    cmd->add_option("--mode", args.mode, "averaging | union | both");
    cmd->add_option("--stat", args.stat, "Zw | S | M | all");
    cmd->add_option("--n0", args.n0, "Lower scan bound (default: ceil(0.05 n))");
    cmd->add_option("--n1", args.n1, "Upper scan bound (default: n - n0)");
    cmd->add_option("--alpha", args.alpha, "Significance level");
    cmd->add_option("--infer", args.infer,
                    "analytic | analytic-skew | permutation | exhaustive");
    cmd->add_option("--perm", args.perm, "Permutation count (implies --infer permutation)");
    cmd->add_option("--seed", args.seed, "RNG seed");
    cmd->add_option("--threads", args.threads,
                    "Worker threads (default: TIESCAN_THREADS or hardware)");
    cmd->add_flag("--profile", args.profile, "Include the per-t statistic profile");
    cmd->add_option("--quantize", args.quantize, "Round distances to multiples of this step");
    cmd->add_option("--out", args.out, "Write the JSON report here instead of stdout");
}

std::vector<tiescan::Edge> read_edges(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open edge list: " + path);
    std::vector<tiescan::Edge> edges;
    int u, v;
    while (in >> u >> v) edges.push_back({u, v});
    if (edges.empty()) throw InputError("empty edge list: " + path);
    return edges;
}

tiescan::RunConfig to_config(const CommonArgs& args) {
    tiescan::RunConfig c;
    c.format = tiescan::parse_input_format(args.format);
    c.metric = tiescan::parse_metric(args.metric);
    c.graph = tiescan::parse_graph_kind(args.graph);
    if (c.graph == tiescan::GraphKind::user_edges) {
        if (args.edges_file.empty()) throw ConfigError("--graph user-edges requires --edges");
        c.user_edges = read_edges(args.edges_file);
    }
    if (args.mode == "both")
        c.mode = tiescan::ModeSelect::both;
    else
        c.mode = tiescan::parse_mode(args.mode) == tiescan::Mode::averaging
                     ? tiescan::ModeSelect::averaging
                     : tiescan::ModeSelect::union_graph;
    if (args.stat != "all") c.statistics = {tiescan::parse_statistic(args.stat)};
    c.n0 = args.n0;
    c.n1 = args.n1;
    c.alpha = args.alpha;
    c.inference = tiescan::parse_inference(args.infer);
    if (args.perm > 0) {
        c.inference = tiescan::Inference::permutation;
        c.permutations = args.perm;
    }
    c.seed = args.seed;
    c.threads = args.threads;
    c.emit_profile = args.profile;
    c.quantize_eps = args.quantize;
    c.input_echo = args.input;
    return c;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw InputError("cannot write output: " + out_path);
    out << text;
}

int run(int argc, char** argv) {
    CLI::App app{"Graph-based change-point detection for sequences with repeated observations"};
    app.require_subcommand(1);

    CommonArgs detect_args, interval_args, segment_args, diagnose_args;
    auto* cmd_detect = app.add_subcommand("detect", "Single change-point test");
    add_common(cmd_detect, detect_args);

    auto* cmd_interval = app.add_subcommand("interval", "Changed-interval test (permutation p-values)");
    add_common(cmd_interval, interval_args);

    auto* cmd_segment = app.add_subcommand("segment", "Recursive detection via binary segmentation");
    add_common(cmd_segment, segment_args);
    double seg_threshold = 1e-3;
    int min_segment = -1;
    cmd_segment->add_option("--segment-pvalue", seg_threshold, "Recursion p-value threshold");
    cmd_segment->add_option("--min-segment", min_segment, "Minimum segment length (default 2 n0)");

    auto* cmd_diagnose = app.add_subcommand("diagnose", "Graph/multiplicity condition diagnostics");
    add_common(cmd_diagnose, diagnose_args);

    // critval: analytic critical value, optionally skew-corrected from data.
    auto* cmd_critval = app.add_subcommand("critval", "Analytic critical value for a scan statistic");
    std::string cv_stat;
    double cv_alpha = 0.05;
    long long cv_n = 0;
    int cv_n0 = 0, cv_n1 = 0;
    CommonArgs critval_args;
    cmd_critval->add_option("statistic", cv_stat, "Zw | Zd | S | M")->required();
    cmd_critval->add_option("alpha", cv_alpha, "Significance level")->required();
    cmd_critval->add_option("n", cv_n, "Sequence length")->required();
    cmd_critval->add_option("n0", cv_n0, "Lower scan bound")->required();
    cmd_critval->add_option("n1", cv_n1, "Upper scan bound")->required();
    add_common(cmd_critval, critval_args, /*needs_input=*/false);

    // simulate: power study over built-in or custom scenarios.
    auto* cmd_simulate = app.add_subcommand("simulate", "Power study on simulated sequences");
    std::string sim_family = "config-model";
    std::string sim_scenario;
    std::string sim_change = "equal";
    int sim_n = 200, sim_tau = 0, sim_reps = 100, sim_v = 6, sim_size = 10;
    std::uint64_t sim_seed = 20240901;
    std::string sim_probs_before = "0.2,0.3,0.3,0.2";
    std::string sim_probs_after = "0.4,0.3,0.2,0.1";
    std::string sim_out, sim_out_csv;
    std::string sim_infer = "analytic-skew";
    long sim_perm = 0;
    double sim_alpha = 0.05;
    int sim_threads = 0;
    cmd_simulate->add_option("--scenario", sim_scenario, "Built-in scenario: S1 | S2 | S3 | S4 | null");
    cmd_simulate->add_option("--family", sim_family, "multinomial | config-model");
    cmd_simulate->add_option("--change", sim_change, "equal | random (config-model)");
    cmd_simulate->add_option("--n", sim_n, "Sequence length");
    cmd_simulate->add_option("--tau", sim_tau, "Change location (0 = null)");
    cmd_simulate->add_option("--reps", sim_reps, "Replicates");
    cmd_simulate->add_option("--v", sim_v, "Vertices (config-model)");
    cmd_simulate->add_option("--size", sim_size, "Multinomial size");
    cmd_simulate->add_option("--probs-before", sim_probs_before, "Comma-separated cell probabilities");
    cmd_simulate->add_option("--probs-after", sim_probs_after, "Comma-separated cell probabilities");
    cmd_simulate->add_option("--seed", sim_seed, "RNG seed");
    cmd_simulate->add_option("--alpha", sim_alpha, "Significance level");
    cmd_simulate->add_option("--infer", sim_infer, "analytic | analytic-skew | permutation");
    cmd_simulate->add_option("--perm", sim_perm, "Permutation count");
    cmd_simulate->add_option("--threads", sim_threads, "Worker threads");
    cmd_simulate->add_option("--out", sim_out, "JSON output path");
    cmd_simulate->add_option("--out-csv", sim_out_csv, "CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 4; // flag/usage problems are config errors
    }

    if (cmd_detect->parsed()) {
        auto config = to_config(detect_args);
        auto obs = tiescan::ingest(detect_args.input, config.format);
        emit(tiescan::detect(obs, config).to_json(), detect_args.out);
    } else if (cmd_interval->parsed()) {
        auto config = to_config(interval_args);
        if (config.inference != tiescan::Inference::permutation) {
            config.inference = tiescan::Inference::permutation;
            if (interval_args.perm > 0) config.permutations = interval_args.perm;
        }
        auto obs = tiescan::ingest(interval_args.input, config.format);
        emit(tiescan::detect_interval(obs, config).to_json(), interval_args.out);
    } else if (cmd_segment->parsed()) {
        auto config = to_config(segment_args);
        config.segment_pvalue = seg_threshold;
        config.min_segment_length = min_segment;
        auto obs = tiescan::ingest(segment_args.input, config.format);
        emit(tiescan::segment(obs, config).to_json(), segment_args.out);
    } else if (cmd_diagnose->parsed()) {
        auto config = to_config(diagnose_args);
        auto obs = tiescan::ingest(diagnose_args.input, config.format);
        emit(tiescan::diagnose(obs, config).to_json(), diagnose_args.out);
    } else if (cmd_critval->parsed()) {
        auto stat = tiescan::parse_statistic(cv_stat);
        nlohmann::ordered_json j;
        j["statistic"] = tiescan::to_string(stat);
        j["alpha"] = cv_alpha;
        j["n"] = cv_n;
        j["n0"] = cv_n0;
        j["n1"] = cv_n1;
        j["critical_value"] = tiescan::critical_value(stat, cv_alpha, cv_n, cv_n0, cv_n1);
        if (!critval_args.input.empty() && stat != tiescan::Statistic::generalized) {
            // Data-driven skewness correction on top of the analytic value.
            auto config = to_config(critval_args);
            auto obs = tiescan::ingest(critval_args.input, config.format);
            auto cat = tiescan::categorize(obs);
            auto dist = tiescan::pairwise_distances(cat.representatives, config.metric);
            auto graph = tiescan::graph_from_kind(dist, config.graph, config.user_edges);
            nlohmann::ordered_json per_mode;
            for (tiescan::Mode mode : {tiescan::Mode::averaging, tiescan::Mode::union_graph}) {
                auto scheme = tiescan::scheme_from(graph, cat.seq.counts, mode);
                auto moments = tiescan::moment_profile(scheme, cv_n0, cv_n1, true);
                per_mode[tiescan::to_string(mode)] = tiescan::critical_value(
                    stat, cv_alpha, cv_n, cv_n0, cv_n1, moments.gamma_w, moments.gamma_d);
            }
            j["critical_value_skew"] = per_mode;
        }
        emit(j.dump(2) + "\n", critval_args.out);
    } else if (cmd_simulate->parsed()) {
        std::vector<tiescan::SimSpec> specs;
        auto parse_probs = [](const std::string& s) {
            std::vector<double> probs;
            std::string token;
            std::istringstream is(s);
            while (std::getline(is, token, ',')) probs.push_back(std::stod(token));
            return probs;
        };
        auto scenario = [&](const std::string& name, int tau,
                            tiescan::ConfigModel::ChangeKind kind) {
            tiescan::ConfigModel model;
            model.v = sim_v;
            model.degrees_before.assign(sim_v, 2);
            model.degrees_after.assign(sim_v, 2);
            if (sim_v >= 2) model.degrees_after[0] = model.degrees_after[1] = 4;
            model.kind = kind;
            tiescan::SimSpec spec;
            spec.name = name;
            spec.family = model;
            spec.n = sim_n;
            spec.tau = tau;
            spec.replicates = sim_reps;
            spec.seed = sim_seed;
            return spec;
        };
        if (sim_scenario == "S1")
            specs.push_back(scenario("S1", 100, tiescan::ConfigModel::ChangeKind::equal));
        else if (sim_scenario == "S2")
            specs.push_back(scenario("S2", 100, tiescan::ConfigModel::ChangeKind::random));
        else if (sim_scenario == "S3")
            specs.push_back(scenario("S3", 170, tiescan::ConfigModel::ChangeKind::equal));
        else if (sim_scenario == "S4")
            specs.push_back(scenario("S4", 170, tiescan::ConfigModel::ChangeKind::random));
        else if (sim_scenario == "null" || sim_scenario.empty()) {
            tiescan::SimSpec spec;
            spec.name = sim_scenario.empty() ? "custom" : "null";
            spec.n = sim_n;
            spec.tau = sim_scenario == "null" ? 0 : sim_tau;
            spec.replicates = sim_reps;
            spec.seed = sim_seed;
            if (sim_family == "multinomial") {
                tiescan::MultinomialModel model;
                model.size = sim_size;
                model.probs_before = parse_probs(sim_probs_before);
                model.probs_after = parse_probs(sim_probs_after);
                spec.family = model;
            } else if (sim_family == "config-model") {
                tiescan::ConfigModel model;
                model.v = sim_v;
                model.degrees_before.assign(sim_v, 2);
                model.degrees_after.assign(sim_v, 2);
                if (sim_v >= 2) model.degrees_after[0] = model.degrees_after[1] = 4;
                model.kind = sim_change == "random" ? tiescan::ConfigModel::ChangeKind::random
                                                    : tiescan::ConfigModel::ChangeKind::equal;
                spec.family = model;
            } else {
                throw ConfigError("unknown simulation family: " + sim_family);
            }
            specs.push_back(std::move(spec));
        } else {
            throw ConfigError("unknown scenario: " + sim_scenario);
        }

        tiescan::PowerMethodConfig method;
        method.metric = sim_family == "multinomial" ? tiescan::Metric::euclidean
                                                    : tiescan::Metric::normalized_frobenius;
        method.alpha = sim_alpha;
        method.inference = tiescan::parse_inference(sim_infer);
        if (sim_perm > 0) {
            method.inference = tiescan::Inference::permutation;
            method.permutations = sim_perm;
        }
        method.threads = sim_threads;
        auto table = tiescan::power_study(specs, method);

        nlohmann::ordered_json j;
        j["schema_version"] = 1;
        j["command"] = "simulate";
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) {
            nlohmann::ordered_json rj;
            rj["scenario"] = row.scenario;
            rj["statistic"] = tiescan::to_string(row.statistic);
            rj["mode"] = tiescan::to_string(row.mode);
            rj["replicates"] = row.replicates;
            rj["rejections"] = row.rejections;
            rj["location_accurate"] = row.location_accurate;
            rj["failures"] = row.failures;
            rows.push_back(rj);
        }
        j["rows"] = rows;
        emit(j.dump(2) + "\n", sim_out);
        if (!sim_out_csv.empty()) emit(table.to_csv(), sim_out_csv);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InputError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const tiescan::DegenerateStatisticError& e) {
        std::fprintf(stderr, "degenerate statistic: %s\n", e.what());
        return 3;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
