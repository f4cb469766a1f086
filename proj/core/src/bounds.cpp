#include "gpbandit/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "gpbandit/posterior.hpp"

namespace gpbandit {

double info_gain_greedy(const KernelSpec& kernel, const std::vector<Eigen::VectorXd>& candidates,
                        int horizon) {
    if (candidates.empty()) throw std::invalid_argument("info_gain_greedy: empty candidate set");
    if (horizon < 1) throw std::invalid_argument("info_gain_greedy: horizon must be >= 1");

    PosteriorState state(kernel);
    SelectionContext context(kernel, candidates);
    for (int t = 0; t < horizon; ++t) {
        context.sync(state);
        const Eigen::VectorXd& wns = context.weighted_norms();
        int pick = 0;
        for (int j = 1; j < wns.size(); ++j) {
            if (wns(j) > wns(pick)) pick = j;
        }
        state.update(candidates[static_cast<std::size_t>(pick)], 0.0);
    }
    return 0.5 * state.log_det();
}

double regret_bound_generic(const BoundInputs& in) {
    if (in.horizon < 1) throw std::invalid_argument("regret bound: horizon must be >= 1");
    if (!(in.norm_bound > 0.0)) throw std::invalid_argument("regret bound: D must be > 0");
    if (in.info_gain < 0.0 || in.noise_scale < 0.0 || in.c2 < 0.0 || in.c3 < 0.0) {
        throw std::invalid_argument("regret bound: gamma, R, C2, C3 must be nonnegative");
    }

    const double t = static_cast<double>(in.horizon);
    const double g = in.info_gain;
    const double r2 = in.noise_scale * in.noise_scale;
    const double d = in.norm_bound;

    const double sqrt_tg = std::sqrt(t * g);
    const double width_exploration = std::sqrt(2.0 * r2 * g + 2.0 * r2 * std::log(2.0)) + d;

    const double radicand = 2.0 * r2 * g + 2.0 * r2 * std::log(2.0 * t * d * d);
    if (radicand < 0.0) {
        throw std::domain_error("regret bound: ln(2 T D^2) term is negative enough to make the "
                                "estimation width imaginary; D is too small for this horizon");
    }
    const double width_estimation = std::sqrt(radicand) + d;

    return 2.0 * (in.c2 + 2.0 * in.c3) * width_exploration * sqrt_tg +
           2.0 * width_estimation * sqrt_tg + 1.0;
}

double regret_bound_for_schedule(const ExplorationSchedule& schedule, int horizon,
                                 double info_gain, double noise_scale, double norm_bound) {
    const CBoundPair c = analytic_c_bounds(schedule, horizon);
    BoundInputs in;
    in.horizon = horizon;
    in.info_gain = info_gain;
    in.noise_scale = noise_scale;
    in.norm_bound = norm_bound;
    in.c2 = c.c2;
    in.c3 = c.c3;
    return regret_bound_generic(in);
}

}  // namespace gpbandit
