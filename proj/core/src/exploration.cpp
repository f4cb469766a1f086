#include "gpbandit/exploration.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gpbandit {

namespace {

constexpr std::uint64_t kTrialTag = 0x4d435452ULL;  // Monte-Carlo trial streams

double parse_double(std::string_view text, const char* what) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument(std::string("exploration spec: bad ") + what + " '" +
                                    std::string(text) + "'");
    }
    return value;
}

long parse_long(std::string_view text, const char* what) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument(std::string("exploration spec: bad ") + what + " '" +
                                    std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

// ---------------------------------------------------------------------------
// ExplorationDistribution
// ---------------------------------------------------------------------------

ExplorationDistribution ExplorationDistribution::bernoulli(double p) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::invalid_argument("bernoulli exploration requires p in (0, 1]");
    }
    ExplorationDistribution d;
    d.family_ = ExplorationFamily::bernoulli;
    d.p_ = p;
    return d;
}

ExplorationDistribution ExplorationDistribution::std_gaussian() {
    ExplorationDistribution d;
    d.family_ = ExplorationFamily::std_gaussian;
    d.sigma_ = 1.0;
    return d;
}

ExplorationDistribution ExplorationDistribution::categorical(std::vector<double> probs) {
    if (probs.empty()) throw std::invalid_argument("categorical exploration requires K >= 1");
    double sum = 0.0;
    for (double p : probs) {
        if (!(p > 0.0)) throw std::invalid_argument("categorical probabilities must be positive");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("categorical probabilities must sum to 1 (got " +
                                    std::to_string(sum) + ")");
    }
    ExplorationDistribution d;
    d.family_ = ExplorationFamily::categorical;
    d.probs_ = std::move(probs);
    return d;
}

ExplorationDistribution ExplorationDistribution::mixture(double rho, double sigma) {
    if (!(rho > 0.0 && rho <= 1.0)) {
        throw std::invalid_argument("mixture exploration requires rho in (0, 1]");
    }
    if (!(sigma > 0.0)) throw std::invalid_argument("mixture sigma must be positive");
    ExplorationDistribution d;
    d.family_ = ExplorationFamily::mixture;
    d.rho_ = rho;
    d.sigma_ = sigma;
    return d;
}

double ExplorationDistribution::sample(RngStream& rng) const {
    switch (family_) {
        case ExplorationFamily::bernoulli:
            return rng.uniform() < p_ ? 1.0 : 0.0;
        case ExplorationFamily::std_gaussian:
            return rng.gaussian();
        case ExplorationFamily::categorical: {
            const double u = rng.uniform();
            double acc = 0.0;
            const std::size_t k = probs_.size();
            for (std::size_t i = 0; i < k; ++i) {
                acc += probs_[i];
                if (u < acc) return static_cast<double>(i + 1) / static_cast<double>(k);
            }
            return 1.0;  // u landed in the rounding sliver past the last atom
        }
        case ExplorationFamily::mixture:
            return rng.uniform() < rho_ ? 1.0 : sigma_ * rng.gaussian();
    }
    throw std::logic_error("ExplorationDistribution::sample: unreachable");
}

double ExplorationDistribution::c1() const {
    switch (family_) {
        case ExplorationFamily::bernoulli:
            return p_;
        case ExplorationFamily::std_gaussian:
            return normal_upper_tail(1.0);
        case ExplorationFamily::categorical:
            return probs_.back();  // only the top atom K/K reaches 1
        case ExplorationFamily::mixture:
            return rho_ + (1.0 - rho_) * normal_upper_tail(1.0 / sigma_);
    }
    throw std::logic_error("ExplorationDistribution::c1: unreachable");
}

// ---------------------------------------------------------------------------
// ExplorationSchedule
// ---------------------------------------------------------------------------

ExplorationSchedule ExplorationSchedule::constant(ExplorationDistribution dist) {
    return ExplorationSchedule([dist](int, const HistorySummary&) { return dist; }, true,
                               "constant");
}

ExplorationSchedule ExplorationSchedule::bernoulli_two_phase(double p_first, double p_second,
                                                             int switch_round) {
    if (switch_round < 1) throw std::invalid_argument("switch round must be >= 1");
    auto first = ExplorationDistribution::bernoulli(p_first);
    auto second = ExplorationDistribution::bernoulli(p_second);
    return ExplorationSchedule(
        [first, second, switch_round](int round, const HistorySummary&) {
            return round <= switch_round ? first : second;
        },
        true, "bernoulli-two-phase");
}

ExplorationSchedule ExplorationSchedule::from_rule(Rule rule, bool history_free) {
    if (!rule) throw std::invalid_argument("schedule rule must be callable");
    return ExplorationSchedule(std::move(rule), history_free, "custom");
}

ExplorationSchedule ExplorationSchedule::parse(std::string_view text) {
    if (text == "ucb") return constant(ExplorationDistribution::bernoulli(1.0));
    if (text == "gaussian") return constant(ExplorationDistribution::std_gaussian());
    if (text.rfind("bernoulli:", 0) == 0) {
        const std::string_view rest = text.substr(10);
        const std::size_t at = rest.find('@');
        if (at == std::string_view::npos) {
            return constant(ExplorationDistribution::bernoulli(parse_double(rest, "p")));
        }
        const auto ps = split(rest.substr(0, at), ',');
        if (ps.size() != 2) {
            throw std::invalid_argument("expected bernoulli:p1,p2@switch_round");
        }
        return bernoulli_two_phase(parse_double(ps[0], "p1"), parse_double(ps[1], "p2"),
                                   static_cast<int>(parse_long(rest.substr(at + 1), "switch")));
    }
    if (text.rfind("categorical:", 0) == 0) {
        const std::string_view rest = text.substr(12);
        const std::size_t colon = rest.find(':');
        if (colon == std::string_view::npos) {
            throw std::invalid_argument("expected categorical:K:p1,...,pK");
        }
        const long k = parse_long(rest.substr(0, colon), "K");
        const auto parts = split(rest.substr(colon + 1), ',');
        if (static_cast<long>(parts.size()) != k) {
            throw std::invalid_argument("categorical spec lists " + std::to_string(parts.size()) +
                                        " probabilities but K=" + std::to_string(k));
        }
        std::vector<double> probs;
        probs.reserve(parts.size());
        for (const auto& p : parts) probs.push_back(parse_double(p, "probability"));
        return constant(ExplorationDistribution::categorical(std::move(probs)));
    }
    if (text.rfind("mixture:", 0) == 0) {
        const auto parts = split(text.substr(8), ':');
        if (parts.size() != 2) throw std::invalid_argument("expected mixture:rho:sigma");
        return constant(ExplorationDistribution::mixture(parse_double(parts[0], "rho"),
                                                         parse_double(parts[1], "sigma")));
    }
    throw std::invalid_argument("unknown exploration spec '" + std::string(text) + "'");
}

ExplorationDistribution ExplorationSchedule::at(int round, const HistorySummary& summary) const {
    if (round < 1) throw std::invalid_argument("round index starts at 1");
    return rule_(round, summary);
}

// ---------------------------------------------------------------------------
// C-constant bounds
// ---------------------------------------------------------------------------

CBoundPair analytic_c_bounds(const ExplorationSchedule& schedule, int horizon) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (!schedule.history_free()) {
        throw std::invalid_argument(
            "analytic_c_bounds: history-dependent schedules have no closed form");
    }

    std::vector<ExplorationDistribution> dists;
    dists.reserve(static_cast<std::size_t>(horizon));
    for (int t = 1; t <= horizon; ++t) dists.push_back(schedule.at(t));
    const ExplorationFamily family = dists.front().family();
    for (const auto& d : dists) {
        if (d.family() != family) {
            throw std::invalid_argument(
                "analytic_c_bounds: schedule mixes distribution families; no closed form");
        }
    }

    const double log_2t = std::log(2.0 * horizon);
    const double log_2 = std::log(2.0);

    switch (family) {
        case ExplorationFamily::bernoulli: {
            double min_p = 1.0;
            for (const auto& d : dists) min_p = std::min(min_p, d.bernoulli_p());
            return {1.0, 2.0 / min_p};
        }
        case ExplorationFamily::std_gaussian: {
            double min_c1 = 1.0;
            double max_sigma = 0.0;
            for (const auto& d : dists) {
                min_c1 = std::min(min_c1, d.c1());
                max_sigma = std::max(max_sigma, d.sigma());
            }
            const double c2 = max_sigma * std::sqrt(2.0 * log_2t);
            const double c3 =
                max_sigma * (std::sqrt(2.0 * log_2t) + std::sqrt(2.0 * log_2)) / min_c1;
            return {c2, c3};
        }
        case ExplorationFamily::categorical: {
            double min_top = 1.0;
            for (const auto& d : dists) min_top = std::min(min_top, d.probs().back());
            return {1.0, 2.0 / min_top};
        }
        case ExplorationFamily::mixture: {
            double min_rho = 1.0;
            double max_sigma = 0.0;
            for (const auto& d : dists) {
                min_rho = std::min(min_rho, d.rho());
                max_sigma = std::max(max_sigma, d.sigma());
            }
            const double c2 = 1.0 + max_sigma * std::sqrt(2.0 * log_2t);
            const double c3 =
                (1.0 + max_sigma * (std::sqrt(2.0 * log_2t) + std::sqrt(2.0 * log_2))) / min_rho;
            return {c2, c3};
        }
    }
    throw std::logic_error("analytic_c_bounds: unreachable");
}

MonteCarloCEstimate monte_carlo_c(const ExplorationSchedule& schedule, int horizon, int n_trials,
                                  RngStream& rng) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (n_trials < 100) throw std::invalid_argument("monte_carlo_c needs n_trials >= 100");

    std::vector<double> c1(static_cast<std::size_t>(horizon));
    for (int t = 1; t <= horizon; ++t) c1[static_cast<std::size_t>(t - 1)] = schedule.at(t).c1();

    // Trial accumulators for E[max |w|] and E[max |w|/c1], plus per-round
    // moments of |w|/c1 for the max-of-means term.
    double sum_abs = 0.0, sumsq_abs = 0.0;
    double sum_rel = 0.0, sumsq_rel = 0.0;
    std::vector<double> round_sum(static_cast<std::size_t>(horizon), 0.0);
    std::vector<double> round_sumsq(static_cast<std::size_t>(horizon), 0.0);

    // One word consumed from the caller's stream keys this whole estimation
    // session; repeated calls on the same stream draw fresh trajectories.
    const std::uint64_t session = rng.next_u64();
    for (int trial = 0; trial < n_trials; ++trial) {
        RngStream stream(mix_seed(session, kTrialTag, static_cast<std::uint64_t>(trial)));
        double max_abs = 0.0;
        double max_rel = 0.0;
        for (int t = 1; t <= horizon; ++t) {
            const double w = std::abs(schedule.at(t).sample(stream));
            const double rel = w / c1[static_cast<std::size_t>(t - 1)];
            max_abs = std::max(max_abs, w);
            max_rel = std::max(max_rel, rel);
            round_sum[static_cast<std::size_t>(t - 1)] += rel;
            round_sumsq[static_cast<std::size_t>(t - 1)] += rel * rel;
        }
        sum_abs += max_abs;
        sumsq_abs += max_abs * max_abs;
        sum_rel += max_rel;
        sumsq_rel += max_rel * max_rel;
    }

    const double n = static_cast<double>(n_trials);
    const auto standard_error = [n](double sum, double sumsq) {
        const double mean = sum / n;
        const double var = std::max(0.0, sumsq / n - mean * mean);
        return std::sqrt(var / n);
    };

    MonteCarloCEstimate est;
    est.c2_hat = sum_abs / n;
    est.c2_se = standard_error(sum_abs, sumsq_abs);

    double best_round_mean = 0.0;
    double best_round_se = 0.0;
    for (int t = 0; t < horizon; ++t) {
        const double mean = round_sum[static_cast<std::size_t>(t)] / n;
        if (mean > best_round_mean) {
            best_round_mean = mean;
            best_round_se = standard_error(round_sum[static_cast<std::size_t>(t)],
                                           round_sumsq[static_cast<std::size_t>(t)]);
        }
    }
    const double se_rel = standard_error(sum_rel, sumsq_rel);
    est.c3_hat = sum_rel / n + best_round_mean;
    est.c3_se = std::sqrt(se_rel * se_rel + best_round_se * best_round_se);
    return est;
}

}  // namespace gpbandit
