#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gpbandit/policies.hpp"
#include "gpbandit/rng.hpp"

using namespace gpbandit;

namespace {

std::vector<Eigen::VectorXd> ball_candidates(RngStream& rng, int n, int dim) {
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd x(dim);
        for (int j = 0; j < dim; ++j) x(j) = 2.0 * rng.uniform() - 1.0;
        if (x.norm() > 1.0) x /= x.norm() * 1.001;
        pts.push_back(std::move(x));
    }
    return pts;
}

// A reward function inside the kernel's function space: f(x) = sum c_j K(x, z_j)
// with norm^2 = c' K_zz c, so the norm bound passed to the policy is exact.
struct RkhsFunction {
    KernelSpec kernel;
    std::vector<Eigen::VectorXd> centers;
    Eigen::VectorXd coefficients;

    double operator()(const Eigen::VectorXd& x) const {
        double out = 0.0;
        for (std::size_t j = 0; j < centers.size(); ++j) {
            out += coefficients(static_cast<Eigen::Index>(j)) * eval_kernel(kernel, centers[j], x);
        }
        return out;
    }

    double norm() const {
        const Eigen::MatrixXd k = gram(kernel, centers);
        return std::sqrt(coefficients.dot(k * coefficients));
    }
};

}  // namespace

TEST_CASE("argmax breaks ties toward the lowest index and shifts do not matter") {
    Eigen::VectorXd v(4);
    v << 1.0, 3.0, 3.0, 2.0;
    CHECK(argmax_lowest_index(v) == 1);
    const int base = argmax_lowest_index(v);
    CHECK(argmax_lowest_index((v.array() + 17.5).matrix()) == base);
    CHECK(argmax_lowest_index((v.array() - 3.0).matrix()) == base);

    Eigen::VectorXd flat = Eigen::VectorXd::Constant(5, 2.0);
    CHECK(argmax_lowest_index(flat) == 0);
}

TEST_CASE("preset wiring") {
    const ConfidenceParams params(1.0, 1.0);

    const Policy ucb = Policy::preset("simple-ucb", params, 1000);
    REQUIRE(ucb.schedule() != nullptr);
    for (int t : {1, 500, 1000}) CHECK(ucb.schedule()->at(t).c1() == 1.0);

    const Policy bernoulli = Policy::preset("simple-bernoulli", params, 1000);
    REQUIRE(bernoulli.schedule() != nullptr);
    CHECK(bernoulli.schedule()->at(1).bernoulli_p() == 0.5);
    CHECK(bernoulli.schedule()->at(500).bernoulli_p() == 0.5);
    CHECK(bernoulli.schedule()->at(501).bernoulli_p() == 0.25);
    CHECK(bernoulli.schedule()->at(1000).bernoulli_p() == 0.25);

    const Policy gaussian = Policy::preset("simple-gaussian", params, 1000);
    for (int t : {1, 77, 1000}) {
        CHECK(gaussian.schedule()->at(t).family() == ExplorationFamily::std_gaussian);
    }

    const Policy categorical = Policy::preset("simple-categorical", params, 1000);
    CHECK(categorical.schedule()->at(9).probs() ==
          std::vector<double>{0.25, 0.25, 0.25, 0.25});

    CHECK(Policy::preset("igp-ucb", params, 1000, 0.05).schedule() == nullptr);
    CHECK(Policy::preset("gp-ts", params, 1000, 0.05).schedule() == nullptr);
    CHECK_THROWS_AS(Policy::preset("simple-exp3", params, 1000), std::invalid_argument);

    CHECK(Policy::parse("simple-bernoulli:0.9,0.1", params, 100).schedule()->at(51).bernoulli_p() ==
          0.1);
    CHECK(Policy::parse("generic:mixture:0.5:2", params, 100).schedule()->at(1).sigma() == 2.0);
    CHECK_THROWS_AS(Policy::parse("igp-ucb:1.5", params, 100), std::invalid_argument);
}

TEST_CASE("empty state ties resolve to candidate 0") {
    RngStream rng(5);
    const KernelSpec kernel = KernelSpec::rbf(0.5);
    const auto candidates = ball_candidates(rng, 8, 2);
    PosteriorState state(kernel);
    const Policy ucb = Policy::preset("simple-ucb", ConfidenceParams(1.0, 1.0), 10);

    RngStream policy_rng(77);
    const SelectionRecord record = ucb.select_arm(state, candidates, 1, policy_rng);
    CHECK(record.arm_index == 0);
    for (double s : record.scores) CHECK(s == doctest::Approx(record.scores[0]));
}

TEST_CASE("empty candidate set is rejected") {
    PosteriorState state(KernelSpec::rbf(0.5));
    const Policy ucb = Policy::preset("simple-ucb", ConfidenceParams(1.0, 1.0), 10);
    RngStream rng(1);
    CHECK_THROWS_AS(ucb.select_arm(state, {}, 1, rng), std::invalid_argument);
}

TEST_CASE("ucb preset equals the brute-force score-everything rule") {
    RngStream rng(9);
    const KernelSpec kernel = KernelSpec::rbf(0.5);
    const auto candidates = ball_candidates(rng, 10, 2);
    const ConfidenceParams params(0.5, 1.2);

    PosteriorState state(kernel);
    for (int s = 0; s < 15; ++s) {
        const auto& x = candidates[static_cast<std::size_t>(s) % candidates.size()];
        state.update(x, rng.gaussian());
    }

    const Policy ucb = Policy::generic_gp(
        ExplorationSchedule::constant(ExplorationDistribution::bernoulli(1.0)), params);
    RngStream policy_rng(3);
    const SelectionRecord record = ucb.select_arm(state, candidates, 16, policy_rng);

    int best = 0;
    double best_score = -1e300;
    for (std::size_t j = 0; j < candidates.size(); ++j) {
        const double score = state.mean(candidates[j]) + state.g_value(params, candidates[j]);
        if (score > best_score) {
            best_score = score;
            best = static_cast<int>(j);
        }
    }
    CHECK(record.arm_index == best);
    CHECK(record.scores[static_cast<std::size_t>(best)] ==
          doctest::Approx(best_score).epsilon(1e-8));
}

TEST_CASE("one scalar weight drives every candidate score") {
    RngStream rng(13);
    const KernelSpec kernel = KernelSpec::rbf(0.7);
    const auto candidates = ball_candidates(rng, 12, 2);
    const ConfidenceParams params(1.0, 1.0);

    PosteriorState state(kernel);
    for (int s = 0; s < 10; ++s) state.update(candidates[static_cast<std::size_t>(s)], rng.gaussian());

    const Policy gaussian = Policy::preset("simple-gaussian", params, 100);
    SelectionContext context(kernel, candidates);

    for (int rep = 0; rep < 25; ++rep) {
        RngStream policy_rng(1000 + static_cast<std::uint64_t>(rep));
        const SelectionRecord record = gaussian.select_arm(state, context, 11, policy_rng);
        REQUIRE(record.exploration_weight.has_value());
        const double w = *record.exploration_weight;
        for (std::size_t j = 0; j < candidates.size(); ++j) {
            const double expected = state.mean(candidates[j]) +
                                    w * state.g_value(params, candidates[j]);
            CHECK(record.scores[j] == doctest::Approx(expected).epsilon(1e-8));
        }
    }
}

TEST_CASE("bernoulli half-half selections split between the two pure cases") {
    RngStream rng(17);
    const KernelSpec kernel = KernelSpec::rbf(0.5);
    const auto candidates = ball_candidates(rng, 10, 2);
    const ConfidenceParams params(1.0, 1.0);

    PosteriorState state(kernel);
    for (int s = 0; s < 12; ++s) {
        state.update(candidates[static_cast<std::size_t>(s) % candidates.size()], rng.gaussian());
    }

    // The two deterministic cases the coin chooses between.
    SelectionContext probe(kernel, candidates);
    probe.sync(state);
    const int mean_argmax = argmax_lowest_index(probe.means());
    const int ucb_argmax = argmax_lowest_index(
        probe.means() + state.confidence_scale(params) * probe.weighted_norms());

    const Policy half = Policy::generic_gp(
        ExplorationSchedule::constant(ExplorationDistribution::bernoulli(0.5)), params);
    SelectionContext context(kernel, candidates);

    const int n = 10000;
    int ones = 0;
    for (int rep = 0; rep < n; ++rep) {
        RngStream policy_rng(50000 + static_cast<std::uint64_t>(rep));
        const SelectionRecord record = half.select_arm(state, context, 13, policy_rng);
        REQUIRE(record.exploration_weight.has_value());
        if (*record.exploration_weight == 1.0) {
            ++ones;
            CHECK(record.arm_index == ucb_argmax);
        } else {
            CHECK(*record.exploration_weight == 0.0);
            CHECK(record.arm_index == mean_argmax);
        }
    }
    const double se = std::sqrt(0.25 / n);
    CHECK(std::abs(ones / static_cast<double>(n) - 0.5) < 4.0 * se);
}

TEST_CASE("igp-ucb scoring formula") {
    RngStream rng(19);
    const KernelSpec kernel = KernelSpec::matern(1.5, 0.6);
    const auto candidates = ball_candidates(rng, 6, 2);
    const ConfidenceParams params(0.7, 1.5);
    const double delta = 0.05;

    PosteriorState state(kernel);
    for (int s = 0; s < 9; ++s) state.update(candidates[static_cast<std::size_t>(s) % 6], rng.gaussian());

    const Policy policy = Policy::igp_ucb(params, delta);
    RngStream policy_rng(4);
    const SelectionRecord record = policy.select_arm(state, candidates, 10, policy_rng);
    CHECK_FALSE(record.exploration_weight.has_value());

    const double gamma_hat = 0.5 * state.log_det();
    const double beta = 1.5 + 0.7 * std::sqrt(2.0 * (gamma_hat + 1.0 + std::log(1.0 / delta)));
    for (std::size_t j = 0; j < candidates.size(); ++j) {
        const double expected =
            state.mean(candidates[j]) + beta * state.weighted_norm(candidates[j]);
        CHECK(record.scores[j] == doctest::Approx(expected).epsilon(1e-8));
    }
}

TEST_CASE("gp-ts with zero noise scale degenerates to the mean argmax") {
    RngStream rng(23);
    const KernelSpec kernel = KernelSpec::rbf(0.5);
    const auto candidates = ball_candidates(rng, 9, 2);

    PosteriorState state(kernel);
    for (int s = 0; s < 14; ++s) {
        state.update(candidates[static_cast<std::size_t>(s) % candidates.size()], rng.gaussian());
    }

    // R = 0 makes v_t = 0, so the sampled vector is exactly the mean vector.
    const Policy ts = Policy::gp_ts(ConfidenceParams(0.0, 1.0), 0.1, 100);
    SelectionContext probe(kernel, candidates);
    probe.sync(state);
    const int mean_argmax = argmax_lowest_index(probe.means());

    for (int rep = 0; rep < 20; ++rep) {
        RngStream policy_rng(900 + static_cast<std::uint64_t>(rep));
        const SelectionRecord record = ts.select_arm(state, candidates, 15, policy_rng);
        CHECK(record.arm_index == mean_argmax);
    }
}

TEST_CASE("ucb trajectories on a noise-free environment are deterministic") {
    RngStream rng(29);
    const KernelSpec kernel = KernelSpec::rbf(0.5);
    const auto candidates = ball_candidates(rng, 6, 2);
    const ConfidenceParams params(0.1, 1.0);
    const Policy ucb = Policy::preset("simple-ucb", params, 30);

    auto run_trace = [&]() {
        PosteriorState state(kernel);
        SelectionContext context(kernel, candidates);
        std::vector<int> arms;
        for (int t = 1; t <= 30; ++t) {
            RngStream policy_rng(mix_seed(1, 2, static_cast<std::uint64_t>(t)));
            const SelectionRecord record = ucb.select_arm(state, context, t, policy_rng);
            arms.push_back(record.arm_index);
            // Reward is a fixed deterministic function of the arm.
            state.update(candidates[static_cast<std::size_t>(record.arm_index)],
                         0.3 * record.arm_index);
        }
        return arms;
    };
    CHECK(run_trace() == run_trace());
}

TEST_CASE("history-aware schedules see only the round digest") {
    RngStream rng(37);
    const KernelSpec kernel = KernelSpec::rbf(0.5);
    const auto candidates = ball_candidates(rng, 5, 2);
    const ConfidenceParams params(0.5, 1.0);

    // Exploration backs off once the observed rewards look good.
    const auto schedule = ExplorationSchedule::from_rule(
        [](int round, const HistorySummary& summary) {
            (void)round;
            return ExplorationDistribution::bernoulli(summary.reward_mean > 0.0 ? 0.25 : 0.75);
        },
        false);
    const Policy policy = Policy::generic_gp(schedule, params);

    PosteriorState state(kernel);
    SelectionContext context(kernel, candidates);
    for (int t = 1; t <= 20; ++t) {
        RngStream policy_rng(mix_seed(4, 5, static_cast<std::uint64_t>(t)));
        const SelectionRecord record = policy.select_arm(state, context, t, policy_rng);
        REQUIRE(record.exploration_weight.has_value());
        CHECK((*record.exploration_weight == 0.0 || *record.exploration_weight == 1.0));
        state.update(candidates[static_cast<std::size_t>(record.arm_index)], 1.0);
    }
    // Positive running rewards: later rounds must be governed by Ber(0.25).
    HistorySummary summary{21, state.rewards().mean()};
    CHECK(schedule.at(21, summary).bernoulli_p() == 0.25);
    CHECK_THROWS_AS(analytic_c_bounds(schedule, 20), std::invalid_argument);
}

TEST_CASE("optimism frequency at a fixed noise-free posterior") {
    RngStream rng(31);
    const KernelSpec kernel = KernelSpec::rbf(0.6);
    const auto candidates = ball_candidates(rng, 10, 2);

    RkhsFunction target{kernel, ball_candidates(rng, 3, 2), Eigen::VectorXd(3)};
    target.coefficients << 0.8, -0.5, 0.3;
    const ConfidenceParams params(0.25, target.norm());

    PosteriorState state(kernel);
    for (int s = 0; s < 8; ++s) {
        const auto& x = candidates[static_cast<std::size_t>(s)];
        state.update(x, target(x));  // exact rewards: the concentration event holds surely
    }

    double best_truth = -1e300;
    for (const auto& x : candidates) best_truth = std::max(best_truth, target(x));

    Eigen::VectorXd means(10), gs(10);
    for (int j = 0; j < 10; ++j) {
        means(j) = state.mean(candidates[static_cast<std::size_t>(j)]);
        gs(j) = state.g_value(params, candidates[static_cast<std::size_t>(j)]);
    }

    const ExplorationDistribution laws[] = {
        ExplorationDistribution::bernoulli(1.0),
        ExplorationDistribution::bernoulli(0.5),
        ExplorationDistribution::std_gaussian(),
        ExplorationDistribution::categorical({0.25, 0.25, 0.25, 0.25}),
    };
    const int n = 10000;
    RngStream draw_rng(314);
    for (const auto& law : laws) {
        int optimistic = 0;
        for (int i = 0; i < n; ++i) {
            const double w = law.sample(draw_rng);
            if ((means + w * gs).maxCoeff() >= best_truth) ++optimistic;
        }
        const double c1 = law.c1();
        const double se = std::sqrt(c1 * (1.0 - c1) / n + 1e-12);
        CHECK(optimistic / static_cast<double>(n) >= 0.5 * c1 - 4.0 * se);
    }
}
