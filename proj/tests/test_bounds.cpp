#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gpbandit/bounds.hpp"
#include "gpbandit/posterior.hpp"
#include "gpbandit/rng.hpp"
#include "oracles.hpp"

using namespace gpbandit;

namespace {

std::vector<Eigen::VectorXd> basis(int dim) {
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < dim; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
        e(i) = 1.0;
        pts.push_back(std::move(e));
    }
    return pts;
}

// Exhaustive info gain: max over all candidate sequences of length `horizon`
// (with repetition) of 0.5 log det(I + K).
double info_gain_exhaustive(const KernelSpec& kernel,
                            const std::vector<Eigen::VectorXd>& candidates, int horizon) {
    const int m = static_cast<int>(candidates.size());
    double best = -1e300;
    std::vector<int> pick(static_cast<std::size_t>(horizon), 0);
    while (true) {
        std::vector<Eigen::VectorXd> sequence;
        for (int i : pick) sequence.push_back(candidates[static_cast<std::size_t>(i)]);
        const Eigen::MatrixXd k = gram(kernel, sequence);
        const Eigen::MatrixXd reg =
            k + Eigen::MatrixXd::Identity(horizon, horizon);
        best = std::max(best, 0.5 * std::log(reg.determinant()));

        int idx = horizon - 1;
        while (idx >= 0 && pick[static_cast<std::size_t>(idx)] == m - 1) {
            pick[static_cast<std::size_t>(idx)] = 0;
            --idx;
        }
        if (idx < 0) return best;
        ++pick[static_cast<std::size_t>(idx)];
    }
}

}  // namespace

TEST_CASE("single-pick info gain is half log 2 when K(x,x) = 1") {
    Eigen::VectorXd x(2);
    x << 0.4, 0.2;
    CHECK(info_gain_greedy(KernelSpec::rbf(0.5), {x}, 1) ==
          doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));
    CHECK(info_gain_greedy(KernelSpec::matern(2.5, 0.5), {x}, 1) ==
          doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("orthonormal linear arms: greedy finds the exhaustive optimum") {
    const auto arms = basis(3);
    const KernelSpec kernel = KernelSpec::linear();

    const double greedy3 = info_gain_greedy(kernel, arms, 3);
    CHECK(greedy3 == doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-10));
    CHECK(info_gain_exhaustive(kernel, arms, 3) == doctest::Approx(greedy3).epsilon(1e-10));

    // Balanced allocation is optimal for longer horizons as well.
    const double greedy6 = info_gain_greedy(kernel, arms, 6);
    CHECK(greedy6 == doctest::Approx(1.5 * std::log(3.0)).epsilon(1e-10));
}

TEST_CASE("greedy output dominates observed sequences on tiny instances") {
    // Fixed instance (seed 1): 4 candidates, horizon 4, 4^4 = 256 sequences.
    // Exhaustive search confirms greedy attains the maximum here, so any arm
    // sequence -- in particular one an actual run produces -- scores no higher
    // than the greedy estimate. (Greedy is not optimal on every instance;
    // dominance is only asserted where the enumeration verifies it.)
    RngStream rng(1);
    std::vector<Eigen::VectorXd> candidates;
    for (int i = 0; i < 4; ++i) {
        Eigen::VectorXd x(2);
        x << 2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0;
        if (x.norm() > 1.0) x /= x.norm() * 1.01;
        candidates.push_back(std::move(x));
    }
    for (const KernelSpec& kernel : {KernelSpec::rbf(0.6), KernelSpec::linear()}) {
        const double greedy = info_gain_greedy(kernel, candidates, 4);
        const double exhaustive = info_gain_exhaustive(kernel, candidates, 4);
        CHECK(exhaustive <= greedy + 1e-6);
        CHECK(greedy <= exhaustive + 1e-6);

        // Arm sequences from live posterior-driven pulls stay below greedy.
        RngStream run_rng(5);
        PosteriorState state(kernel);
        std::vector<Eigen::VectorXd> pulled;
        for (int t = 0; t < 4; ++t) {
            const auto& x =
                candidates[static_cast<std::size_t>(run_rng.next_u64() % candidates.size())];
            pulled.push_back(x);
            state.update(x, run_rng.gaussian());
        }
        const Eigen::MatrixXd k = gram(kernel, pulled);
        const Eigen::MatrixXd reg = k + Eigen::MatrixXd::Identity(4, 4);
        CHECK(0.5 * std::log(reg.determinant()) <= greedy + 1e-6);
        CHECK(0.5 * state.log_det() <= greedy + 1e-6);
    }
}

TEST_CASE("info gain is monotone in the horizon") {
    RngStream rng(11);
    std::vector<Eigen::VectorXd> candidates;
    for (int i = 0; i < 8; ++i) {
        Eigen::VectorXd x(3);
        for (int j = 0; j < 3; ++j) x(j) = (2.0 * rng.uniform() - 1.0) / std::sqrt(3.0);
        candidates.push_back(std::move(x));
    }
    const KernelSpec kernel = KernelSpec::rbf(0.4);
    double previous = 0.0;
    for (int horizon : {1, 2, 4, 8, 16, 32}) {
        const double gain = info_gain_greedy(kernel, candidates, horizon);
        CHECK(gain >= previous - 1e-12);
        previous = gain;
    }
}

TEST_CASE("regret bound evaluates the displayed expression") {
    BoundInputs in;
    in.horizon = 1000;
    in.info_gain = 10.0;
    in.noise_scale = 1.0;
    in.norm_bound = 1.0;
    in.c2 = 1.0;
    in.c3 = 2.0;
    CHECK(regret_bound_generic(in) ==
          doctest::Approx(oracles::regret_bound(1000, 10.0, 1.0, 1.0, 1.0, 2.0)).epsilon(1e-12));

    // Noise-free, no exploration constants: only the 2 D sqrt(T gamma) + 1
    // estimation term survives.
    BoundInputs slim;
    slim.horizon = 400;
    slim.info_gain = 4.0;
    slim.noise_scale = 0.0;
    slim.norm_bound = 2.0;
    slim.c2 = 0.0;
    slim.c3 = 0.0;
    CHECK(regret_bound_generic(slim) ==
          doctest::Approx(2.0 * 2.0 * std::sqrt(400.0 * 4.0) + 1.0).epsilon(1e-12));

    BoundInputs bad = in;
    bad.norm_bound = 0.0;
    CHECK_THROWS_AS(regret_bound_generic(bad), std::invalid_argument);
}

TEST_CASE("regret bound is monotone in every input") {
    BoundInputs base;
    base.horizon = 500;
    base.info_gain = 8.0;
    base.noise_scale = 0.7;
    base.norm_bound = 1.4;
    base.c2 = 1.5;
    base.c3 = 3.0;
    const double value = regret_bound_generic(base);

    auto bumped = [&](auto mutate) {
        BoundInputs copy = base;
        mutate(copy);
        return regret_bound_generic(copy);
    };
    CHECK(bumped([](BoundInputs& b) { b.horizon += 100; }) >= value);
    CHECK(bumped([](BoundInputs& b) { b.info_gain += 1.0; }) >= value);
    CHECK(bumped([](BoundInputs& b) { b.noise_scale += 0.1; }) >= value);
    CHECK(bumped([](BoundInputs& b) { b.norm_bound += 0.1; }) >= value);
    CHECK(bumped([](BoundInputs& b) { b.c2 += 0.5; }) >= value);
    CHECK(bumped([](BoundInputs& b) { b.c3 += 0.5; }) >= value);

    // Doubling T scales the leading terms by at least sqrt(2).
    BoundInputs doubled = base;
    doubled.horizon *= 2;
    CHECK(regret_bound_generic(doubled) - 1.0 >= std::sqrt(2.0) * (value - 1.0));
}

TEST_CASE("schedule-level bound composes the analytic constants") {
    const int horizon = 1000;
    const double gamma = 12.0, r = 1.0, d = 1.0;

    const auto ucb = ExplorationSchedule::constant(ExplorationDistribution::bernoulli(1.0));
    CHECK(regret_bound_for_schedule(ucb, horizon, gamma, r, d) ==
          doctest::Approx(oracles::regret_bound(horizon, gamma, r, d, 1.0, 2.0)).epsilon(1e-12));

    const auto gaussian = ExplorationSchedule::constant(ExplorationDistribution::std_gaussian());
    const double c2 = std::sqrt(2.0 * std::log(2.0 * horizon));
    const double c3 = (c2 + std::sqrt(2.0 * std::log(2.0))) /
                      ExplorationDistribution::std_gaussian().c1();
    CHECK(regret_bound_for_schedule(gaussian, horizon, gamma, r, d) ==
          doctest::Approx(oracles::regret_bound(horizon, gamma, r, d, c2, c3)).epsilon(1e-12));

    const auto mix = ExplorationSchedule::constant(ExplorationDistribution::mixture(0.5, 1.0));
    const double mix_c3 =
        2.0 * (1.0 + std::sqrt(2.0 * std::log(2.0 * horizon)) + std::sqrt(2.0 * std::log(2.0)));
    CHECK(regret_bound_for_schedule(mix, horizon, gamma, r, d) ==
          doctest::Approx(oracles::regret_bound(horizon, gamma, r, d,
                                                1.0 + std::sqrt(2.0 * std::log(2.0 * horizon)),
                                                mix_c3))
              .epsilon(1e-12));
}
