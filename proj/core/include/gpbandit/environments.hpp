#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gpbandit/rng.hpp"

namespace gpbandit {

struct StepResult {
    double reward_observed;  // f*(arm) + noise
    double instant_regret;   // optimum_value - f*(arm), always >= 0
};

/// Finite-arm reward environment: candidate points, true rewards (maximization
/// convention), and a Gaussian noise level. Candidates always live inside the
/// Euclidean unit ball, so every environment is admissible for the linear
/// kernel as well.
class Environment {
public:
    Environment(std::vector<Eigen::VectorXd> candidates, std::vector<double> rewards,
                double noise_sigma);

    /// Samples n_arms points uniformly from the named test function's standard
    /// box domain, negates the usual minimization form so higher is better,
    /// then affinely maps coordinates into [-1/sqrt(d), 1/sqrt(d)]^d.
    /// Valid (name, dim) pairs: holder-table(2), cross-in-tray(2), ackley(4),
    /// hartmann(6). Requires n_arms >= 2.
    static Environment synthetic(const std::string& name, int dim, int n_arms, RngStream& rng,
                                 double noise_sigma = 0.01);

    /// Hard linear instance: arms are the d standard basis vectors, the first
    /// arm pays gap() and the rest pay 0, rewards are noiseless. The gap is
    ///   (R sqrt(d/2) + D) / (2 sqrt(1 + T / (6 (d-1)))).
    /// Warns on stderr when the horizon is too short for the regime the
    /// construction targets.
    static Environment lower_bound_instance(int dim, int horizon, double noise_scale,
                                            double norm_bound);

    /// Loads a comma-separated table: header row, a column named "target"
    /// holding the reward, and at least three other numeric columns of which
    /// the first three become the features (rescaled into the unit ball).
    static Environment from_csv(const std::string& path, double noise_sigma = 0.01);

    const std::vector<Eigen::VectorXd>& candidates() const { return candidates_; }
    int n_arms() const { return static_cast<int>(candidates_.size()); }
    int dim() const { return candidates_.empty() ? 0 : static_cast<int>(candidates_[0].size()); }

    double true_reward(int arm) const;
    double noise_sigma() const { return noise_sigma_; }
    double optimum_value() const { return optimum_value_; }
    int optimum_index() const { return optimum_index_; }
    double max_abs_reward() const;

    /// Pulls an arm: observes reward + Gaussian(noise_sigma) noise and reports
    /// the (noise-free) instantaneous regret against the best candidate.
    StepResult step(int arm, RngStream& rng) const;

private:
    std::vector<Eigen::VectorXd> candidates_;
    std::vector<double> rewards_;
    double noise_sigma_;
    double optimum_value_;
    int optimum_index_;
};

/// Gap of the lower-bound instance, exposed for the regret-floor probe.
double lower_bound_gap(int dim, int horizon, double noise_scale, double norm_bound);

}  // namespace gpbandit
