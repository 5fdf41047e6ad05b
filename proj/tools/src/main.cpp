// Command-line front end: solve single instances, run benchmark batches
// over a registry, and run the exhaustive oracle on tiny instances.
//
// Exit codes: 0 success, 1 input/data error, 2 usage error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mabbtsp/backbone.hpp"
#include "mabbtsp/oracle.hpp"
#include "mabbtsp/solver.hpp"
#include "mabbtsp/tsplib.hpp"
#include "registry.hpp"
#include "report.hpp"

namespace {

using namespace mabb;
using namespace mabbcli;

struct CommonOptions {
    std::int64_t max_trials = 0;
    int bs = 100;
    int arms = 5;
    double step_size = 0.06;
    double ucb_c = 20.0;
    double gamma = 0.998;
    int candidates = 5;
    int k_max = 5;
    std::uint64_t seed = 1;
    int runs = 1;
    int jobs = 1;
};

void add_common_flags(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--max-trials", o.max_trials, "Trial budget per run (default: city count)");
    cmd->add_option("--runs", o.runs, "Independent runs")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "Master seed; run seeds derive from it");
    cmd->add_option("--bs", o.bs, "Warm-up trials before the bandit acts");
    cmd->add_option("--arms", o.arms, "Bandit arm count");
    cmd->add_option("--step-size", o.step_size, "Bandit value update step");
    cmd->add_option("--ucb-c", o.ucb_c, "UCB exploration bias");
    cmd->add_option("--gamma", o.gamma, "Per-trial weight discount factor");
    cmd->add_option("--candidates", o.candidates, "Candidate list size per city");
    cmd->add_option("--kmax", o.k_max, "Maximum k-opt move depth");
    cmd->add_option("--jobs", o.jobs, "Parallel runs")->check(CLI::PositiveNumber);
}

Params make_params(const CommonOptions& o, const std::string& mode_text) {
    Params p;
    p.max_trials = o.max_trials;
    p.bs = o.bs;
    p.arms = o.arms;
    p.step_size = o.step_size;
    p.ucb_c = o.ucb_c;
    p.gamma = o.gamma;
    p.candidate_size = o.candidates;
    p.k_max = o.k_max;
    p.seed = o.seed;
    p.mode = parse_mode(mode_text, p.fixed_w);
    return p;
}

struct SolveOptions {
    CommonOptions common;
    std::string instance;
    std::string mode = "mabb";
    std::int64_t optimum = 0;
    std::string optima_registry;
    std::string trace_path;
    std::string json_path;
    std::string backbone_path;
};

int cmd_solve(const SolveOptions& o) {
    Instance inst = Instance::from_file(o.instance);
    if (o.optimum > 0)
        inst.set_known_optimum(o.optimum);
    else if (!o.optima_registry.empty()) {
        auto registry = load_optimum_registry(o.optima_registry);
        auto it = registry.find(inst.name());
        if (it != registry.end())
            inst.set_known_optimum(it->second);
    }

    Params params = make_params(o.common, o.mode);
    params.collect_trace = !o.trace_path.empty();
    params.validate();

    SolverContext ctx(inst, params);
    BatchSummary summary = run_batch(ctx, params, o.common.runs, o.common.jobs);

    print_row_header();
    print_row(inst.name(), summary.optimum, mode_name(params.mode, params.fixed_w), summary);

    if (!o.trace_path.empty()) {
        std::vector<std::pair<int, const RunResult*>> rows;
        for (int r = 0; r < summary.runs; ++r)
            rows.emplace_back(r, &summary.results[r]);
        write_trace_csv(o.trace_path, params.arms, rows);
    }

    if (!o.backbone_path.empty() && params.mode != Mode::Lkh) {
        // Replay the last run and mirror its recorded local optima; the
        // solver records exactly one tour per trial in non-lkh modes.
        BackboneStore replica(inst.n());
        TrialObserver obs = [&](const TrialObservation& t) {
            replica.record_tour(t.local_optimum.order());
        };
        solve(ctx, params, o.common.runs - 1, &obs);
        std::ofstream out(o.backbone_path);
        replica.dump(out);
    }

    if (!o.json_path.empty()) {
        nlohmann::json j{
            {"instance", inst.name()},
            {"n", inst.n()},
            {"weight_kind", std::string(to_string(inst.weight_kind()))},
            {"params", params_json(params)},
            {"lower_bound", ctx.lower_bound()},
            {"summary", summary_json(summary)},
        };
        j["runs"] = nlohmann::json::array();
        for (int r = 0; r < summary.runs; ++r)
            j["runs"].push_back(run_json(r, summary.results[r], true));
        std::ofstream out(o.json_path);
        out << j.dump(2) << "\n";
    }
    return 0;
}

struct BenchOptions {
    CommonOptions common;
    std::string registry;
    std::string modes = "mabb";
    std::string json_path;
};

int cmd_bench(const BenchOptions& o) {
    auto entries = load_benchmark_registry(o.registry);
    if (entries.empty()) {
        std::cerr << "registry is empty: " << o.registry << "\n";
        return 2;
    }
    std::vector<std::string> mode_names;
    {
        std::stringstream ss(o.modes);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty())
                mode_names.push_back(item);
    }
    if (mode_names.empty()) {
        std::cerr << "no modes given\n";
        return 2;
    }

    nlohmann::json all = nlohmann::json::array();
    std::vector<double> mean_cum_gap(mode_names.size(), 0.0);
    std::vector<double> best_cum_gap(mode_names.size(), 0.0);

    print_row_header();
    for (const auto& entry : entries) {
        Instance inst = Instance::from_file(entry.path);
        inst.set_known_optimum(entry.optimum);

        for (std::size_t m = 0; m < mode_names.size(); ++m) {
            Params params = make_params(o.common, mode_names[m]);
            if (entry.max_trials)
                params.max_trials = *entry.max_trials;
            params.validate();

            SolverContext ctx(inst, params);
            BatchSummary summary = run_batch(ctx, params, o.common.runs, o.common.jobs);
            print_row(inst.name(), summary.optimum, mode_names[m], summary);

            double opt = static_cast<double>(entry.optimum);
            best_cum_gap[m] += (static_cast<double>(summary.best) - opt) / opt;
            double gap_sum = 0.0;
            for (const auto& rr : summary.results)
                gap_sum += (static_cast<double>(rr.best_length) - opt) / opt;
            mean_cum_gap[m] += gap_sum / summary.runs;

            nlohmann::json j{
                {"instance", inst.name()},
                {"optimum", entry.optimum},
                {"mode", mode_names[m]},
                {"summary", summary_json(summary)},
            };
            j["runs"] = nlohmann::json::array();
            for (int r = 0; r < summary.runs; ++r)
                j["runs"].push_back(run_json(r, summary.results[r], false));
            all.push_back(std::move(j));
        }
    }

    std::printf("\n%-12s %-20s %-20s\n", "Mode", "CumGap(best)", "CumGap(mean)");
    for (std::size_t m = 0; m < mode_names.size(); ++m)
        std::printf("%-12s %-20.6f %-20.6f\n", mode_names[m].c_str(), best_cum_gap[m],
                    mean_cum_gap[m]);

    if (!o.json_path.empty()) {
        nlohmann::json j{{"results", all}};
        j["cumulative_gap"] = nlohmann::json::object();
        for (std::size_t m = 0; m < mode_names.size(); ++m)
            j["cumulative_gap"][mode_names[m]] = {{"best", best_cum_gap[m]},
                                                  {"mean", mean_cum_gap[m]}};
        std::ofstream out(o.json_path);
        out << j.dump(2) << "\n";
    }
    return 0;
}

struct OracleOptions {
    std::string instance;
};

int cmd_oracle(const OracleOptions& o) {
    Instance inst = Instance::from_file(o.instance);
    OracleResult res = exact_optimum(inst);
    std::printf("optimum %lld\n", static_cast<long long>(res.length));
    std::printf("tour");
    for (int c : res.tour)
        std::printf(" %d", c + 1);
    std::printf("\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"TSP local search with alpha candidate sets, backbone edge "
                 "frequencies, and UCB-selected edge-quality blending"};
    app.require_subcommand(1);

    SolveOptions solve_opts;
    CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one TSPLIB instance");
    solve_cmd->add_option("--instance", solve_opts.instance, "TSPLIB instance file")->required();
    solve_cmd->add_option("--mode", solve_opts.mode, "mabb | lkh | fixed-w=X");
    solve_cmd->add_option("--optimum", solve_opts.optimum, "Known optimum for early exit");
    solve_cmd->add_option("--optima", solve_opts.optima_registry,
                          "Optimum registry file (name optimum per line)");
    solve_cmd->add_option("--trace", solve_opts.trace_path, "Write per-trial bandit trace CSV");
    solve_cmd->add_option("--json", solve_opts.json_path, "Write machine-readable results");
    solve_cmd->add_option("--dump-backbone", solve_opts.backbone_path,
                          "Write the last run's edge counts (i j count per line)");
    add_common_flags(solve_cmd, solve_opts.common);

    BenchOptions bench_opts;
    CLI::App* bench_cmd = app.add_subcommand("bench", "Run a registry of instances");
    bench_cmd->add_option("--registry", bench_opts.registry, "Registry file")->required();
    bench_cmd->add_option("--modes", bench_opts.modes, "Comma-separated mode list");
    bench_cmd->add_option("--json", bench_opts.json_path, "Write machine-readable results");
    add_common_flags(bench_cmd, bench_opts.common);

    OracleOptions oracle_opts;
    CLI::App* oracle_cmd = app.add_subcommand("oracle", "Exhaustive optimum (n <= 12)");
    oracle_cmd->add_option("--instance", oracle_opts.instance, "TSPLIB instance file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (solve_cmd->parsed())
            return cmd_solve(solve_opts);
        if (bench_cmd->parsed())
            return cmd_bench(bench_opts);
        return cmd_oracle(oracle_opts);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
