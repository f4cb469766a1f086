#include <benchmark/benchmark.h>

#include "gpbandit/harness.hpp"

namespace {

using namespace gpbandit;

std::vector<Eigen::VectorXd> make_candidates(int n, int dim) {
    RngStream rng(1);
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd x(dim);
        for (int j = 0; j < dim; ++j) x(j) = (2.0 * rng.uniform() - 1.0) / std::sqrt(dim);
        pts.push_back(std::move(x));
    }
    return pts;
}

void BM_GramMatrix(benchmark::State& state) {
    const auto pts = make_candidates(static_cast<int>(state.range(0)), 4);
    const KernelSpec kernel = KernelSpec::rbf(0.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gram(kernel, pts));
    }
}
BENCHMARK(BM_GramMatrix)->Arg(50)->Arg(200);

// One incremental posterior update at a given history length.
void BM_PosteriorUpdate(benchmark::State& state) {
    const int t = static_cast<int>(state.range(0));
    const auto pts = make_candidates(t + 1, 4);
    const KernelSpec kernel = KernelSpec::rbf(0.2);
    PosteriorState base(kernel);
    RngStream rng(2);
    for (int s = 0; s < t; ++s) base.update(pts[static_cast<std::size_t>(s)], rng.gaussian());
    for (auto _ : state) {
        PosteriorState copy = base;
        copy.update(pts.back(), 0.5);
        benchmark::DoNotOptimize(copy.log_det());
    }
}
BENCHMARK(BM_PosteriorUpdate)->Arg(100)->Arg(400)->Arg(800);

// Full selection round over 50 candidates with a warm cache.
void BM_SelectRound(benchmark::State& state) {
    const int t = static_cast<int>(state.range(0));
    const auto candidates = make_candidates(50, 4);
    const KernelSpec kernel = KernelSpec::rbf(0.2);
    const Policy policy = Policy::preset("simple-gaussian", ConfidenceParams(0.01, 1.0), 1000);

    PosteriorState posterior(kernel);
    SelectionContext context(kernel, candidates);
    RngStream rng(3);
    for (int s = 0; s < t; ++s) {
        posterior.update(candidates[static_cast<std::size_t>(s) % candidates.size()],
                         rng.gaussian());
    }
    context.sync(posterior);

    std::uint64_t round = 0;
    for (auto _ : state) {
        RngStream policy_rng(mix_seed(9, 10, round++));
        benchmark::DoNotOptimize(
            policy.select_arm(posterior, context, t + 1, policy_rng));
    }
}
BENCHMARK(BM_SelectRound)->Arg(100)->Arg(500);

void BM_FullRun(benchmark::State& state) {
    RunConfig config;
    config.env_spec = "ackley";
    config.policy_spec = "simple-bernoulli";
    config.rounds = static_cast<int>(state.range(0));
    config.n_seeds = 1;
    for (auto _ : state) {
        const ResolvedExperiment experiment = resolve(config);
        benchmark::DoNotOptimize(
            run_single(experiment.env, experiment.kernel, experiment.policy, config.rounds, 1));
    }
}
BENCHMARK(BM_FullRun)->Unit(benchmark::kMillisecond)->Arg(200)->Arg(1000);

}  // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
