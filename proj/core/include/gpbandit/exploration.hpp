#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "gpbandit/rng.hpp"

namespace gpbandit {

enum class ExplorationFamily { bernoulli, std_gaussian, categorical, mixture };

/// Scalar law of the per-round exploration weight w_t.
///
/// Variants:
///   bernoulli(p)        w in {0, 1}, P{w = 1} = p, p in (0, 1]
///   std_gaussian()      w ~ N(0, 1)
///   categorical(probs)  w in {1/K, ..., K/K} with the given masses
///   mixture(rho, sigma) w = 1 with probability rho, else w ~ N(0, sigma^2)
///
/// Every constructible variant has c1() = P{w >= 1} > 0, the optimism mass the
/// selection rule relies on.
class ExplorationDistribution {
public:
    static ExplorationDistribution bernoulli(double p);
    static ExplorationDistribution std_gaussian();
    static ExplorationDistribution categorical(std::vector<double> probs);
    static ExplorationDistribution mixture(double rho, double sigma);

    ExplorationFamily family() const { return family_; }

    double sample(RngStream& rng) const;

    /// Exact P{w >= 1}.
    double c1() const;

    // Parameters (meaningful for the matching family only).
    double bernoulli_p() const { return p_; }
    const std::vector<double>& probs() const { return probs_; }
    double rho() const { return rho_; }
    /// Sub-Gaussian scale of the Gaussian component (1 for std_gaussian).
    double sigma() const { return sigma_; }

private:
    ExplorationDistribution() = default;

    ExplorationFamily family_ = ExplorationFamily::bernoulli;
    double p_ = 1.0;
    std::vector<double> probs_;
    double rho_ = 0.0;
    double sigma_ = 0.0;
};

/// Gaussian upper tail P{N(0,1) > z}.
double normal_upper_tail(double z);

/// Summary of the run so far that a schedule rule may condition on. Rules see
/// only this digest, never past weight draws, so the drawn weights stay
/// independent across rounds.
struct HistorySummary {
    int round = 0;
    double reward_mean = 0.0;
};

/// Deterministic map from round index (plus an optional history digest) to the
/// exploration distribution used that round.
class ExplorationSchedule {
public:
    using Rule = std::function<ExplorationDistribution(int round, const HistorySummary&)>;

    static ExplorationSchedule constant(ExplorationDistribution dist);

    /// Ber(p_first) through switch_round inclusive, Ber(p_second) afterwards.
    static ExplorationSchedule bernoulli_two_phase(double p_first, double p_second,
                                                   int switch_round);

    /// History-aware rule; analytic C bounds reject these.
    static ExplorationSchedule from_rule(Rule rule, bool history_free);

    /// Parses "ucb", "bernoulli:p1,p2@t", "gaussian", "categorical:K:p1,...,pK"
    /// or "mixture:rho:sigma".
    static ExplorationSchedule parse(std::string_view text);

    ExplorationDistribution at(int round, const HistorySummary& summary = {}) const;
    bool history_free() const { return history_free_; }
    const std::string& label() const { return label_; }

private:
    ExplorationSchedule(Rule rule, bool history_free, std::string label)
        : rule_(std::move(rule)), history_free_(history_free), label_(std::move(label)) {}

    Rule rule_;
    bool history_free_;
    std::string label_;
};

/// Closed-form upper bounds on C2_T = E[max_t |w_t|] and
/// C3_T = E[max_t |w_t| / C1_t] + max_t E[|w_t| / C1_t].
struct CBoundPair {
    double c2 = 0.0;
    double c3 = 0.0;
};

/// Evaluates the per-family closed forms over rounds 1..horizon. Requires a
/// history-free schedule whose rounds all share one variant family; anything
/// else throws std::invalid_argument.
CBoundPair analytic_c_bounds(const ExplorationSchedule& schedule, int horizon);

struct MonteCarloCEstimate {
    double c2_hat = 0.0;
    double c2_se = 0.0;
    double c3_hat = 0.0;
    double c3_se = 0.0;
};

/// Estimates C2_T and C3_T from n_trials independent horizon-length weight
/// trajectories. n_trials must be >= 100.
MonteCarloCEstimate monte_carlo_c(const ExplorationSchedule& schedule, int horizon, int n_trials,
                                  RngStream& rng);

}  // namespace gpbandit
