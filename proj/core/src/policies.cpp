#include "gpbandit/policies.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace gpbandit {

namespace {

constexpr double kTsJitter = 1e-8;

double parse_double(std::string_view text, const char* what) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument(std::string("policy spec: bad ") + what + " '" +
                                    std::string(text) + "'");
    }
    return value;
}

}  // namespace

int argmax_lowest_index(const Eigen::VectorXd& values) {
    if (values.size() == 0) throw std::invalid_argument("argmax over empty vector");
    int best = 0;
    for (int i = 1; i < values.size(); ++i) {
        if (values(i) > values(best)) best = i;
    }
    return best;
}

Policy Policy::generic_gp(ExplorationSchedule schedule, ConfidenceParams params) {
    Policy p(Kind::generic, params);
    p.schedule_ = std::move(schedule);
    p.name_ = "generic-gp";
    return p;
}

Policy Policy::igp_ucb(ConfidenceParams params, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    Policy p(Kind::igp_ucb, params);
    p.delta_ = delta;
    p.name_ = "igp-ucb";
    return p;
}

Policy Policy::gp_ts(ConfidenceParams params, double delta, int horizon) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    if (horizon < 1) throw std::invalid_argument("gp-ts horizon must be >= 1");
    Policy p(Kind::gp_ts, params);
    p.delta_ = delta;
    p.horizon_ = horizon;
    p.name_ = "gp-ts";
    return p;
}

const std::vector<std::string>& Policy::preset_names() {
    static const std::vector<std::string> names = {
        "simple-ucb",         "simple-bernoulli", "simple-gaussian",
        "simple-categorical", "igp-ucb",          "gp-ts",
    };
    return names;
}

Policy Policy::preset(const std::string& name, ConfidenceParams params, int horizon,
                      double delta) {
    if (horizon < 1) throw std::invalid_argument("preset horizon must be >= 1");
    if (name == "simple-ucb") {
        Policy p = generic_gp(ExplorationSchedule::constant(ExplorationDistribution::bernoulli(1.0)),
                              params);
        p.name_ = name;
        return p;
    }
    if (name == "simple-bernoulli") {
        Policy p = generic_gp(ExplorationSchedule::bernoulli_two_phase(0.5, 0.25, horizon / 2),
                              params);
        p.name_ = name;
        return p;
    }
    if (name == "simple-gaussian") {
        Policy p =
            generic_gp(ExplorationSchedule::constant(ExplorationDistribution::std_gaussian()),
                       params);
        p.name_ = name;
        return p;
    }
    if (name == "simple-categorical") {
        Policy p = generic_gp(ExplorationSchedule::constant(ExplorationDistribution::categorical(
                                  {0.25, 0.25, 0.25, 0.25})),
                              params);
        p.name_ = name;
        return p;
    }
    if (name == "igp-ucb") return igp_ucb(params, delta);
    if (name == "gp-ts") return gp_ts(params, delta, horizon);
    throw std::invalid_argument("unknown policy preset '" + name + "'");
}

Policy Policy::parse(const std::string& spec, ConfidenceParams params, int horizon, double delta) {
    const std::size_t colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);

    if (head == "generic") {
        if (rest.empty()) throw std::invalid_argument("expected generic:<exploration spec>");
        Policy p = generic_gp(ExplorationSchedule::parse(rest), params);
        p.name_ = spec;
        return p;
    }
    if (rest.empty()) return preset(head, params, horizon, delta);

    if (head == "simple-bernoulli") {
        const std::size_t comma = rest.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("expected simple-bernoulli:p1,p2");
        }
        const double p1 = parse_double(rest.substr(0, comma), "p1");
        const double p2 = parse_double(rest.substr(comma + 1), "p2");
        Policy p =
            generic_gp(ExplorationSchedule::bernoulli_two_phase(p1, p2, horizon / 2), params);
        p.name_ = spec;
        return p;
    }
    if (head == "simple-categorical") {
        const long k = static_cast<long>(parse_double(rest, "K"));
        if (k < 1) throw std::invalid_argument("simple-categorical K must be >= 1");
        std::vector<double> probs(static_cast<std::size_t>(k),
                                  1.0 / static_cast<double>(k));
        Policy p = generic_gp(
            ExplorationSchedule::constant(ExplorationDistribution::categorical(std::move(probs))),
            params);
        p.name_ = spec;
        return p;
    }
    if (head == "igp-ucb") return igp_ucb(params, parse_double(rest, "delta"));
    if (head == "gp-ts") return gp_ts(params, parse_double(rest, "delta"), horizon);
    throw std::invalid_argument("unknown policy spec '" + spec + "'");
}

const ExplorationSchedule* Policy::schedule() const {
    return schedule_.has_value() ? &*schedule_ : nullptr;
}

SelectionRecord Policy::select_arm(const PosteriorState& state, SelectionContext& context,
                                   int round, RngStream& rng) const {
    if (round < 1) throw std::invalid_argument("round index starts at 1");
    context.sync(state);

    const Eigen::VectorXd& means = context.means();
    const Eigen::VectorXd& wns = context.weighted_norms();
    Eigen::VectorXd scores;
    std::optional<double> weight;

    switch (kind_) {
        case Kind::generic: {
            HistorySummary summary;
            summary.round = round;
            summary.reward_mean = state.size() > 0 ? state.rewards().mean() : 0.0;
            const double w = schedule_->at(round, summary).sample(rng);
            scores = means + (w * state.confidence_scale(params_)) * wns;
            weight = w;
            break;
        }
        case Kind::igp_ucb: {
            const double gamma_hat = 0.5 * state.log_det();
            const double beta =
                params_.norm_bound +
                params_.noise_scale * std::sqrt(2.0 * (gamma_hat + 1.0 + std::log(1.0 / delta_)));
            scores = means + beta * wns;
            break;
        }
        case Kind::gp_ts: {
            const double gamma_hat = 0.5 * state.log_det();
            const double vt = params_.noise_scale *
                              std::sqrt(2.0 * (gamma_hat + 1.0 +
                                               std::log(static_cast<double>(horizon_) / delta_)));
            Eigen::MatrixXd cov = context.posterior_covariance();
            cov.diagonal().array() += kTsJitter;
            Eigen::LLT<Eigen::MatrixXd> llt(cov);
            if (llt.info() != Eigen::Success) {
                throw NumericalDegeneracyError(
                    "gp-ts: candidate covariance not factorizable even with jitter");
            }
            Eigen::VectorXd draw(means.size());
            for (int j = 0; j < draw.size(); ++j) draw(j) = rng.gaussian();
            scores = means + vt * (Eigen::MatrixXd(llt.matrixL()) * draw);
            break;
        }
    }

    SelectionRecord record;
    record.round = round;
    record.arm_index = argmax_lowest_index(scores);
    record.exploration_weight = weight;
    record.scores.assign(scores.data(), scores.data() + scores.size());
    return record;
}

SelectionRecord Policy::select_arm(const PosteriorState& state,
                                   const std::vector<Eigen::VectorXd>& candidates, int round,
                                   RngStream& rng) const {
    if (candidates.empty()) throw std::invalid_argument("select_arm: empty candidate set");
    SelectionContext context(state.kernel(), candidates);
    return select_arm(state, context, round, rng);
}

}  // namespace gpbandit
