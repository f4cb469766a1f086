#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gpbandit/environments.hpp"
#include "gpbandit/policies.hpp"

namespace gpbandit {

/// Everything needed to reproduce one experiment. Negative noise_scale /
/// norm_bound mean "derive from the environment": R defaults to the noise
/// level, D to the largest absolute true reward over the candidate set.
struct RunConfig {
    std::string env_spec = "ackley";
    std::string kernel_spec = "rbf:0.2";
    std::string policy_spec = "simple-ucb";
    int rounds = 1000;
    int n_seeds = 25;
    std::uint64_t master_seed = 1;
    int n_arms = 50;
    double noise_sigma = 0.01;
    double noise_scale = -1.0;  // R
    double norm_bound = -1.0;   // D
    double delta = 0.1;         // failure level for igp-ucb / gp-ts
    int threads = 0;            // 0: BANDIT_THREADS env var, then hardware count
};

struct RoundRecord {
    int round = 0;
    int arm_index = 0;
    bool has_weight = false;
    double weight = 0.0;
    double reward = 0.0;
    double instant_regret = 0.0;
    double cumulative_regret = 0.0;
};

struct RunResult {
    std::vector<std::vector<RoundRecord>> per_seed;
    std::vector<double> mean_cumulative;  // across seeds, per round
    std::vector<double> std_cumulative;   // population standard deviation
};

/// Config with its strings resolved into live objects. The environment is
/// sampled from the master seed alone, so different policies compared under
/// the same master seed face the identical arm set.
struct ResolvedExperiment {
    Environment env;
    KernelSpec kernel;
    ConfidenceParams params;
    Policy policy;
    int rounds;
};

ResolvedExperiment resolve(const RunConfig& config);

/// One bandit run: select -> observe -> update for `rounds` rounds. Per-round
/// randomness comes from streams derived from (seed, purpose, round), so a
/// diagnostic draw inserted anywhere cannot shift later rounds. The policy
/// sees only the posterior state, the candidate list, the round index and its
/// rng; true rewards and regret stay on this side of the fence.
std::vector<RoundRecord> run_single(const Environment& env, const KernelSpec& kernel,
                                    const Policy& policy, int rounds, std::uint64_t seed);

/// Runs seeds master_seed+0 .. master_seed+n_seeds-1, optionally in parallel,
/// and aggregates. Parallel and serial execution produce identical results.
RunResult run_experiment(const ResolvedExperiment& experiment, int n_seeds,
                         std::uint64_t master_seed, int threads = 0);
RunResult run_experiment(const RunConfig& config);

/// Writes `round,mean_cum_regret,std_cum_regret` rows, fixed 12-digit decimal
/// formatting and '\n' line ends; re-emitting the same result is
/// byte-identical. With per_seed_columns, appends one cumulative-regret
/// column per seed.
void emit_csv(const RunResult& result, const std::string& path, bool per_seed_columns = false);

/// SVG overlay: one mean-cumulative-regret polyline per labelled result with
/// a +-1 std band, axes labelled round / cumulative regret, and a legend.
void emit_plot(const std::vector<std::pair<std::string, RunResult>>& results,
               const std::string& path);

/// True when the mean regret gained over the last `window` rounds is smaller
/// than over the first `window` rounds (empirical concavity of the curve).
bool sublinearity_probe(const RunResult& result, int window = 100);

struct LowerBoundProbe {
    double gap = 0.0;
    double floor = 0.0;                // 0.25 * gap * T * min_c1
    double terminal_mean_regret = 0.0;
    double loglog_slope = 0.0;         // fit over rounds [100, T]
    bool floor_ok = false;
    bool slope_ok = false;             // slope >= 0.4
};

/// Checks the hard-instance mechanism: regret at least a constant fraction of
/// gap * T * min_c1 and near-sqrt growth of the cumulative regret curve.
LowerBoundProbe lower_bound_probe(const RunResult& result, double gap, double min_c1);

}  // namespace gpbandit
