#pragma once

#include <vector>

#include "gpbandit/exploration.hpp"
#include "gpbandit/kernels.hpp"

namespace gpbandit {

/// Ingredients of the regret guarantee.
struct BoundInputs {
    int horizon = 1;          // T
    double info_gain = 0.0;   // gamma, in nats
    double noise_scale = 0.0; // R
    double norm_bound = 1.0;  // D
    double c2 = 0.0;
    double c3 = 0.0;
};

/// Greedy estimate of the maximum information gain over `horizon` picks (with
/// repetition) from the candidate set: each step adds the candidate with the
/// largest posterior variance, i.e. the largest marginal increase of
/// 0.5 * log det(I + K). A lower estimate of the combinatorial supremum,
/// non-decreasing in the horizon.
double info_gain_greedy(const KernelSpec& kernel, const std::vector<Eigen::VectorXd>& candidates,
                        int horizon);

/// Cumulative-regret guarantee with all constants explicit:
///
///   2 (C2 + 2 C3) (sqrt(2 R^2 g + 2 R^2 ln 2)       + D) sqrt(T g)
/// + 2             (sqrt(2 R^2 g + 2 R^2 ln(2 T D^2)) + D) sqrt(T g) + 1
///
/// where g is the info-gain input. This is the closed form before any
/// O(.) simplification, so the calculator returns concrete numbers.
/// Throws std::invalid_argument for D <= 0 and std::domain_error when
/// the ln(2 T D^2) radicand goes negative.
double regret_bound_generic(const BoundInputs& inputs);

/// Plugs the schedule's analytic C2/C3 bounds into regret_bound_generic.
double regret_bound_for_schedule(const ExplorationSchedule& schedule, int horizon,
                                 double info_gain, double noise_scale, double norm_bound);

}  // namespace gpbandit
