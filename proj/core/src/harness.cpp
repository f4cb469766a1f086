#include "gpbandit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace gpbandit {

namespace {

// Stream purposes. Environment sampling hangs off the master seed; policy and
// noise draws hang off the per-run seed and round index.
constexpr std::uint64_t kEnvTag = 0x656e76ULL;
constexpr std::uint64_t kPolicyTag = 0x706f6cULL;
constexpr std::uint64_t kNoiseTag = 0x6e7a65ULL;

int resolve_threads(int configured, int n_seeds) {
    int threads = configured;
    if (threads <= 0) {
        if (const char* env = std::getenv("BANDIT_THREADS")) {
            threads = std::atoi(env);
        }
    }
    if (threads <= 0) {
        const unsigned hc = std::thread::hardware_concurrency();
        threads = hc > 0 ? static_cast<int>(hc) : 1;
    }
    return std::clamp(threads, 1, std::max(1, n_seeds));
}

struct EnvParse {
    std::string name;
    std::string argument;
};

EnvParse split_env_spec(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string::npos) return {spec, ""};
    return {spec.substr(0, colon), spec.substr(colon + 1)};
}

void format_fixed(std::string& out, double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12f", value);
    out += buffer;
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration resolution
// ---------------------------------------------------------------------------

ResolvedExperiment resolve(const RunConfig& config) {
    if (config.rounds < 1) throw std::invalid_argument("rounds must be >= 1");
    if (config.n_seeds < 1) throw std::invalid_argument("n_seeds must be >= 1");

    const KernelSpec kernel = KernelSpec::parse(config.kernel_spec);
    RngStream env_rng(mix_seed(config.master_seed, kEnvTag));

    const EnvParse parsed = split_env_spec(config.env_spec);
    Environment env = [&]() -> Environment {
        if (parsed.name == "holder-table" || parsed.name == "cross-in-tray") {
            return Environment::synthetic(parsed.name, 2, config.n_arms, env_rng,
                                          config.noise_sigma);
        }
        if (parsed.name == "ackley") {
            return Environment::synthetic(parsed.name, 4, config.n_arms, env_rng,
                                          config.noise_sigma);
        }
        if (parsed.name == "hartmann") {
            return Environment::synthetic(parsed.name, 6, config.n_arms, env_rng,
                                          config.noise_sigma);
        }
        if (parsed.name == "lower-bound") {
            int dim = 2;
            if (!parsed.argument.empty()) {
                auto [ptr, ec] = std::from_chars(parsed.argument.data(),
                                                 parsed.argument.data() + parsed.argument.size(),
                                                 dim);
                if (ec != std::errc{} ||
                    ptr != parsed.argument.data() + parsed.argument.size()) {
                    throw std::invalid_argument("expected lower-bound:<dimension>");
                }
            }
            const double r = config.noise_scale >= 0.0 ? config.noise_scale : 1.0;
            const double d = config.norm_bound > 0.0 ? config.norm_bound : 1.0;
            return Environment::lower_bound_instance(dim, config.rounds, r, d);
        }
        if (parsed.name == "perovskite" || parsed.name == "csv") {
            if (parsed.argument.empty()) {
                throw std::invalid_argument("expected " + parsed.name + ":<path>");
            }
            return Environment::from_csv(parsed.argument, config.noise_sigma);
        }
        throw std::invalid_argument("unknown environment spec '" + config.env_spec + "'");
    }();

    const double r = config.noise_scale >= 0.0 ? config.noise_scale : env.noise_sigma();
    double d = config.norm_bound;
    if (!(d > 0.0)) {
        d = env.max_abs_reward();
        if (!(d > 0.0)) d = 1.0;  // degenerate all-zero reward table
    }
    const ConfidenceParams params(r, d);
    Policy policy = Policy::parse(config.policy_spec, params, config.rounds, config.delta);
    return ResolvedExperiment{std::move(env), kernel, params, std::move(policy), config.rounds};
}

// ---------------------------------------------------------------------------
// Runs
// ---------------------------------------------------------------------------

std::vector<RoundRecord> run_single(const Environment& env, const KernelSpec& kernel,
                                    const Policy& policy, int rounds, std::uint64_t seed) {
    PosteriorState state(kernel);
    SelectionContext context(kernel, env.candidates());
    std::vector<RoundRecord> records;
    records.reserve(static_cast<std::size_t>(rounds));

    double cumulative = 0.0;
    for (int t = 1; t <= rounds; ++t) {
        RngStream policy_rng(mix_seed(seed, kPolicyTag, static_cast<std::uint64_t>(t)));
        RngStream noise_rng(mix_seed(seed, kNoiseTag, static_cast<std::uint64_t>(t)));

        const SelectionRecord pick = policy.select_arm(state, context, t, policy_rng);
        const StepResult outcome = env.step(pick.arm_index, noise_rng);
        state.update(env.candidates()[static_cast<std::size_t>(pick.arm_index)],
                     outcome.reward_observed);

        cumulative += outcome.instant_regret;
        RoundRecord record;
        record.round = t;
        record.arm_index = pick.arm_index;
        record.has_weight = pick.exploration_weight.has_value();
        record.weight = pick.exploration_weight.value_or(0.0);
        record.reward = outcome.reward_observed;
        record.instant_regret = outcome.instant_regret;
        record.cumulative_regret = cumulative;
        records.push_back(record);
    }
    return records;
}

RunResult run_experiment(const ResolvedExperiment& experiment, int n_seeds,
                         std::uint64_t master_seed, int threads) {
    if (n_seeds < 1) throw std::invalid_argument("n_seeds must be >= 1");

    RunResult result;
    result.per_seed.resize(static_cast<std::size_t>(n_seeds));

    const int workers = resolve_threads(threads, n_seeds);
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;

    auto work = [&]() {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= n_seeds || failed.load()) return;
            try {
                result.per_seed[static_cast<std::size_t>(i)] =
                    run_single(experiment.env, experiment.kernel, experiment.policy,
                               experiment.rounds, master_seed + static_cast<std::uint64_t>(i));
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                failed.store(true);
                if (failure.empty()) {
                    failure = "seed " + std::to_string(master_seed + static_cast<std::uint64_t>(i)) +
                              " failed: " + e.what();
                }
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw std::runtime_error(failure);

    const int rounds = experiment.rounds;
    result.mean_cumulative.assign(static_cast<std::size_t>(rounds), 0.0);
    result.std_cumulative.assign(static_cast<std::size_t>(rounds), 0.0);
    for (int t = 0; t < rounds; ++t) {
        double sum = 0.0;
        for (const auto& seed_records : result.per_seed) {
            sum += seed_records[static_cast<std::size_t>(t)].cumulative_regret;
        }
        const double mean = sum / n_seeds;
        double var = 0.0;
        for (const auto& seed_records : result.per_seed) {
            const double diff = seed_records[static_cast<std::size_t>(t)].cumulative_regret - mean;
            var += diff * diff;
        }
        result.mean_cumulative[static_cast<std::size_t>(t)] = mean;
        result.std_cumulative[static_cast<std::size_t>(t)] = std::sqrt(var / n_seeds);
    }
    return result;
}

RunResult run_experiment(const RunConfig& config) {
    const ResolvedExperiment experiment = resolve(config);
    return run_experiment(experiment, config.n_seeds, config.master_seed, config.threads);
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

void emit_csv(const RunResult& result, const std::string& path, bool per_seed_columns) {
    std::string out = "round,mean_cum_regret,std_cum_regret";
    if (per_seed_columns) {
        for (std::size_t i = 0; i < result.per_seed.size(); ++i) {
            out += ",seed" + std::to_string(i) + "_cum_regret";
        }
    }
    out += '\n';

    const std::size_t rounds = result.mean_cumulative.size();
    for (std::size_t t = 0; t < rounds; ++t) {
        out += std::to_string(t + 1);
        out += ',';
        format_fixed(out, result.mean_cumulative[t]);
        out += ',';
        format_fixed(out, result.std_cumulative[t]);
        if (per_seed_columns) {
            for (const auto& seed_records : result.per_seed) {
                out += ',';
                format_fixed(out, seed_records[t].cumulative_regret);
            }
        }
        out += '\n';
    }

    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!file) throw std::runtime_error("write to '" + path + "' failed");
}

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

struct PlotFrame {
    double width = 860.0, height = 520.0;
    double left = 70.0, right = 830.0, top = 30.0, bottom = 470.0;
    double max_round = 1.0, max_value = 1.0;

    double x(double round) const {
        return left + (round - 1.0) / std::max(1.0, max_round - 1.0) * (right - left);
    }
    double y(double value) const { return bottom - value / max_value * (bottom - top); }
};

void append_number(std::string& svg, double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2f", v);
    svg += buffer;
}

}  // namespace

void emit_plot(const std::vector<std::pair<std::string, RunResult>>& results,
               const std::string& path) {
    if (results.empty()) throw std::invalid_argument("emit_plot: no results to plot");

    PlotFrame frame;
    for (const auto& [label, result] : results) {
        frame.max_round = std::max(frame.max_round,
                                   static_cast<double>(result.mean_cumulative.size()));
        for (std::size_t t = 0; t < result.mean_cumulative.size(); ++t) {
            frame.max_value =
                std::max(frame.max_value, result.mean_cumulative[t] + result.std_cumulative[t]);
        }
    }

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"860\" height=\"520\" "
           "viewBox=\"0 0 860 520\">\n";
    svg += "<rect width=\"860\" height=\"520\" fill=\"white\"/>\n";

    // Axes with a handful of ticks.
    svg += "<line x1=\"70\" y1=\"470\" x2=\"830\" y2=\"470\" stroke=\"black\"/>\n";
    svg += "<line x1=\"70\" y1=\"30\" x2=\"70\" y2=\"470\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double round = 1.0 + i * (frame.max_round - 1.0) / 4.0;
        const double value = i * frame.max_value / 4.0;
        svg += "<text x=\"";
        append_number(svg, frame.x(round));
        svg += "\" y=\"488\" font-size=\"12\" text-anchor=\"middle\">";
        svg += std::to_string(static_cast<long>(std::lround(round)));
        svg += "</text>\n<text x=\"62\" y=\"";
        append_number(svg, frame.y(value) + 4.0);
        svg += "\" font-size=\"12\" text-anchor=\"end\">";
        char buffer[32];
        std::snprintf(buffer, sizeof(buffer), "%.4g", value);
        svg += buffer;
        svg += "</text>\n";
    }
    svg += "<text x=\"450\" y=\"510\" font-size=\"14\" text-anchor=\"middle\">round</text>\n";
    svg += "<text x=\"16\" y=\"250\" font-size=\"14\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 16 250)\">cumulative regret</text>\n";

    for (std::size_t idx = 0; idx < results.size(); ++idx) {
        const auto& [label, result] = results[idx];
        const char* color = kPalette[idx % kPaletteSize];
        const std::size_t rounds = result.mean_cumulative.size();
        if (rounds == 0) continue;

        // +-1 std band as a closed polygon.
        svg += "<polygon fill=\"";
        svg += color;
        svg += "\" fill-opacity=\"0.15\" stroke=\"none\" points=\"";
        for (std::size_t t = 0; t < rounds; ++t) {
            append_number(svg, frame.x(static_cast<double>(t + 1)));
            svg += ',';
            append_number(svg, frame.y(result.mean_cumulative[t] + result.std_cumulative[t]));
            svg += ' ';
        }
        for (std::size_t t = rounds; t-- > 0;) {
            append_number(svg, frame.x(static_cast<double>(t + 1)));
            svg += ',';
            append_number(svg,
                          frame.y(std::max(0.0, result.mean_cumulative[t] -
                                                    result.std_cumulative[t])));
            svg += ' ';
        }
        svg += "\"/>\n";

        svg += "<polyline fill=\"none\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t t = 0; t < rounds; ++t) {
            append_number(svg, frame.x(static_cast<double>(t + 1)));
            svg += ',';
            append_number(svg, frame.y(result.mean_cumulative[t]));
            svg += ' ';
        }
        svg += "\"/>\n";

        // Legend entry.
        const double ly = 40.0 + 18.0 * static_cast<double>(idx);
        svg += "<line x1=\"90\" x2=\"118\" y1=\"";
        append_number(svg, ly);
        svg += "\" y2=\"";
        append_number(svg, ly);
        svg += "\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"2\"/>\n<text x=\"124\" y=\"";
        append_number(svg, ly + 4.0);
        svg += "\" font-size=\"12\">";
        svg += label;
        svg += "</text>\n";
    }
    svg += "</svg>\n";

    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    file.write(svg.data(), static_cast<std::streamsize>(svg.size()));
    if (!file) throw std::runtime_error("write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// Probes
// ---------------------------------------------------------------------------

bool sublinearity_probe(const RunResult& result, int window) {
    const int rounds = static_cast<int>(result.mean_cumulative.size());
    if (window < 1 || rounds < 2 * window) {
        throw std::invalid_argument("sublinearity probe needs at least 2*window rounds");
    }
    const double first = result.mean_cumulative[static_cast<std::size_t>(window - 1)];
    const double last = result.mean_cumulative[static_cast<std::size_t>(rounds - 1)] -
                        result.mean_cumulative[static_cast<std::size_t>(rounds - 1 - window)];
    return last < first;
}

LowerBoundProbe lower_bound_probe(const RunResult& result, double gap, double min_c1) {
    const int rounds = static_cast<int>(result.mean_cumulative.size());
    if (rounds < 100) throw std::invalid_argument("lower-bound probe needs >= 100 rounds");

    LowerBoundProbe probe;
    probe.gap = gap;
    probe.floor = 0.25 * gap * rounds * min_c1;
    probe.terminal_mean_regret = result.mean_cumulative.back();
    probe.floor_ok = probe.terminal_mean_regret >= probe.floor;

    // Least-squares slope of log(cum regret) against log(round) over the tail.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (int t = 100; t <= rounds; ++t) {
        const double value = result.mean_cumulative[static_cast<std::size_t>(t - 1)];
        if (value <= 0.0) continue;
        const double lx = std::log(static_cast<double>(t));
        const double ly = std::log(value);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n >= 2) {
        probe.loglog_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    probe.slope_ok = probe.loglog_slope >= 0.4;
    return probe;
}

}  // namespace gpbandit
