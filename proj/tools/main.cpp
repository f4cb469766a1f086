// Command-line front end: multi-seed bandit experiments, policy comparison
// overlays, regret-bound tables, information-gain estimates, and the hard
// lower-bound instance probe.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gpbandit/bounds.hpp"
#include "gpbandit/harness.hpp"

namespace {

using namespace gpbandit;

void add_common_options(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--env", config.env_spec,
                    "Environment: holder-table | cross-in-tray | ackley | hartmann | "
                    "lower-bound[:d] | perovskite:<csv path>");
    cmd->add_option("--kernel", config.kernel_spec,
                    "Kernel: rbf:<lengthscale> | matern:<nu>:<lengthscale> | linear");
    cmd->add_option("--rounds", config.rounds, "Horizon T")->check(CLI::PositiveNumber);
    cmd->add_option("--seeds", config.n_seeds, "Number of independent runs")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--master-seed", config.master_seed, "Base seed; run i uses master+i");
    cmd->add_option("--arms", config.n_arms, "Candidate-set size for synthetic environments")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--noise", config.noise_sigma, "Gaussian observation noise sigma");
    cmd->add_option("--R", config.noise_scale, "Sub-Gaussian noise scale (default: noise sigma)");
    cmd->add_option("--D", config.norm_bound,
                    "Norm bound on the reward function (default: max |reward|)");
    cmd->add_option("--delta", config.delta, "Failure level for igp-ucb / gp-ts");
}

int cmd_run(RunConfig& config, const std::string& out_csv, const std::string& out_svg,
            bool per_seed) {
    const RunResult result = run_experiment(config);
    emit_csv(result, out_csv, per_seed);
    if (!out_svg.empty()) emit_plot({{config.policy_spec, result}}, out_svg);
    std::printf("%s on %s: terminal mean cumulative regret %.6f over %d seeds\n",
                config.policy_spec.c_str(), config.env_spec.c_str(),
                result.mean_cumulative.back(), config.n_seeds);
    return 0;
}

int cmd_compare(RunConfig& config, const std::vector<std::string>& policies,
                const std::string& out_svg, const std::string& out_csv_prefix) {
    std::vector<std::pair<std::string, RunResult>> results;
    for (const std::string& policy : policies) {
        RunConfig one = config;
        one.policy_spec = policy;
        results.emplace_back(policy, run_experiment(one));
        std::printf("%-24s terminal mean cumulative regret %.6f\n", policy.c_str(),
                    results.back().second.mean_cumulative.back());
        if (!out_csv_prefix.empty()) {
            emit_csv(results.back().second, out_csv_prefix + policy + ".csv");
        }
    }
    emit_plot(results, out_svg);
    std::printf("wrote overlay plot to %s\n", out_svg.c_str());
    return 0;
}

int cmd_bound(RunConfig& config, const std::string& gamma_spec) {
    const ResolvedExperiment experiment = resolve(config);
    const ExplorationSchedule* schedule = experiment.policy.schedule();
    if (schedule == nullptr) {
        throw std::invalid_argument("policy '" + config.policy_spec +
                                    "' has no exploration schedule; bounds apply to the "
                                    "generic family and its presets");
    }

    double gamma = 0.0;
    if (gamma_spec == "greedy") {
        gamma = info_gain_greedy(experiment.kernel, experiment.env.candidates(), config.rounds);
    } else {
        gamma = std::stod(gamma_spec);
    }

    const CBoundPair c = analytic_c_bounds(*schedule, config.rounds);
    const double bound = regret_bound_for_schedule(*schedule, config.rounds, gamma,
                                                   experiment.params.noise_scale,
                                                   experiment.params.norm_bound);
    std::printf("%-20s %8s %12s %12s %12s %14s\n", "policy", "T", "gamma", "C2_bound", "C3_bound",
                "regret_bound");
    std::printf("%-20s %8d %12.4f %12.4f %12.4f %14.4f\n", config.policy_spec.c_str(),
                config.rounds, gamma, c.c2, c.c3, bound);
    return 0;
}

int cmd_info_gain(RunConfig& config) {
    const ResolvedExperiment experiment = resolve(config);
    std::printf("%8s %12s\n", "T", "gamma_hat");
    for (int t = 1; t <= config.rounds; t *= 10) {
        const double g = info_gain_greedy(experiment.kernel, experiment.env.candidates(), t);
        std::printf("%8d %12.6f\n", t, g);
    }
    const double g =
        info_gain_greedy(experiment.kernel, experiment.env.candidates(), config.rounds);
    std::printf("%8d %12.6f\n", config.rounds, g);
    return 0;
}

int cmd_lower_bound(RunConfig& config, int dim) {
    config.env_spec = "lower-bound:" + std::to_string(dim);
    const double r = config.noise_scale >= 0.0 ? config.noise_scale : 1.0;
    const double d = config.norm_bound > 0.0 ? config.norm_bound : 1.0;
    config.noise_scale = r;
    config.norm_bound = d;

    const ResolvedExperiment experiment = resolve(config);
    const RunResult result =
        run_experiment(experiment, config.n_seeds, config.master_seed, config.threads);

    const double gap = lower_bound_gap(dim, config.rounds, r, d);
    double min_c1 = 1.0;
    if (const ExplorationSchedule* schedule = experiment.policy.schedule()) {
        for (int t = 1; t <= config.rounds; ++t) min_c1 = std::min(min_c1, schedule->at(t).c1());
    }
    const LowerBoundProbe probe = lower_bound_probe(result, gap, min_c1);
    std::printf("gap Delta            %.6f\n", probe.gap);
    std::printf("regret floor         %.6f\n", probe.floor);
    std::printf("terminal mean regret %.6f  [%s]\n", probe.terminal_mean_regret,
                probe.floor_ok ? "PASS" : "FAIL");
    std::printf("log-log slope        %.4f    [%s]\n", probe.loglog_slope,
                probe.slope_ok ? "PASS" : "FAIL");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kernelized bandit experiments with pluggable exploration distributions"};
    app.require_subcommand(1);

    RunConfig config;
    std::string out_csv, out_svg, out_csv_prefix;
    std::string gamma_spec = "greedy";
    std::vector<std::string> policies;
    bool per_seed = false;
    int lb_dim = 2;

    CLI::App* run = app.add_subcommand("run", "Run one policy and emit CSV/SVG");
    add_common_options(run, config);
    run->add_option("--policy", config.policy_spec, "Policy spec (see README)");
    run->add_option("--out-csv", out_csv, "Output CSV path")->required();
    run->add_option("--out-svg", out_svg, "Optional SVG plot path");
    run->add_flag("--per-seed", per_seed, "Append one cumulative-regret column per seed");

    CLI::App* compare = app.add_subcommand("compare", "Overlay several policies on one plot");
    add_common_options(compare, config);
    compare->add_option("--policies", policies, "Comma-separated policy specs")
        ->required()
        ->delimiter(',');
    compare->add_option("--out-svg", out_svg, "Overlay SVG path")->required();
    compare->add_option("--out-csv-prefix", out_csv_prefix,
                        "If set, write <prefix><policy>.csv per policy");

    CLI::App* bound = app.add_subcommand("bound", "Print the regret-bound table for a policy");
    add_common_options(bound, config);
    bound->add_option("--policy", config.policy_spec, "Policy spec");
    bound->add_option("--gamma", gamma_spec, "Info gain: a number or 'greedy'");

    CLI::App* info = app.add_subcommand("info-gain", "Greedy information-gain estimate");
    add_common_options(info, config);

    CLI::App* lower = app.add_subcommand("lower-bound", "Run the hard linear instance probe");
    add_common_options(lower, config);
    lower->add_option("--d", lb_dim, "Instance dimension")->check(CLI::Range(2, 64));
    lower->add_option("--policy", config.policy_spec, "Policy spec");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config, out_csv, out_svg, per_seed);
        if (compare->parsed()) return cmd_compare(config, policies, out_svg, out_csv_prefix);
        if (bound->parsed()) return cmd_bound(config, gamma_spec);
        if (info->parsed()) return cmd_info_gain(config);
        if (lower->parsed()) return cmd_lower_bound(config, lb_dim);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
