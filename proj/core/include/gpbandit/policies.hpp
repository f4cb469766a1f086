#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gpbandit/exploration.hpp"
#include "gpbandit/posterior.hpp"

namespace gpbandit {

/// Outcome of one arm selection. arm_index maximizes `scores`, ties broken
/// toward the lowest index. exploration_weight is the scalar w drawn for the
/// round (absent for the deterministic and Thompson-sampling baselines).
struct SelectionRecord {
    int round = 0;
    int arm_index = 0;
    std::optional<double> exploration_weight;
    std::vector<double> scores;
};

/// Index of the largest entry; the lowest index wins ties.
int argmax_lowest_index(const Eigen::VectorXd& values);

/// Arm-selection rule over a finite candidate set.
///
/// generic_gp draws one scalar weight w_t per round from its schedule and
/// ranks candidates by mean(x) + w_t * g(x); the same w_t multiplies every
/// candidate's uncertainty, which is the whole point of the one-dimensional
/// randomization. igp_ucb and gp_ts are the classic confidence-bound and
/// posterior-sampling baselines with the information-gain proxy
/// gamma_hat = log_det / 2 estimated online.
class Policy {
public:
    static Policy generic_gp(ExplorationSchedule schedule, ConfidenceParams params);
    static Policy igp_ucb(ConfidenceParams params, double delta);
    static Policy gp_ts(ConfidenceParams params, double delta, int horizon);

    /// Named configurations:
    ///   simple-ucb          generic_gp with Ber(1) every round
    ///   simple-bernoulli    Ber(0.5) for t <= horizon/2, Ber(0.25) after
    ///   simple-gaussian     N(0,1) every round
    ///   simple-categorical  uniform categorical on {1/4, 2/4, 3/4, 1}
    ///   igp-ucb, gp-ts      baselines at failure level delta
    static Policy preset(const std::string& name, ConfidenceParams params, int horizon,
                         double delta = 0.1);

    /// preset() names plus optional parameter suffixes
    /// ("simple-bernoulli:p1,p2", "simple-categorical:K", "igp-ucb:delta",
    /// "gp-ts:delta") and "generic:<exploration spec>".
    static Policy parse(const std::string& spec, ConfidenceParams params, int horizon,
                        double delta = 0.1);

    static const std::vector<std::string>& preset_names();

    /// Selects an arm using cached per-candidate posterior quantities. The
    /// context is synced to the state first.
    SelectionRecord select_arm(const PosteriorState& state, SelectionContext& context, int round,
                               RngStream& rng) const;

    /// One-shot variant that builds a fresh context; same scoring path.
    SelectionRecord select_arm(const PosteriorState& state,
                               const std::vector<Eigen::VectorXd>& candidates, int round,
                               RngStream& rng) const;

    const std::string& name() const { return name_; }
    const ConfidenceParams& params() const { return params_; }

    /// The exploration schedule for generic_gp policies, nullptr otherwise.
    const ExplorationSchedule* schedule() const;

private:
    enum class Kind { generic, igp_ucb, gp_ts };

    Policy(Kind kind, ConfidenceParams params) : kind_(kind), params_(params) {}

    Kind kind_;
    ConfidenceParams params_;
    std::optional<ExplorationSchedule> schedule_;
    double delta_ = 0.1;
    int horizon_ = 1;
    std::string name_;
};

}  // namespace gpbandit
