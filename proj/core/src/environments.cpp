#include "gpbandit/environments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gpbandit {

namespace {

constexpr double kPi = 3.14159265358979323846;

// --------------------------- synthetic functions ---------------------------
// Standard black-box minimization test functions on their usual box domains.

double holder_table(const Eigen::VectorXd& x) {
    const double r = std::sqrt(x(0) * x(0) + x(1) * x(1));
    return -std::abs(std::sin(x(0)) * std::cos(x(1)) * std::exp(std::abs(1.0 - r / kPi)));
}

double cross_in_tray(const Eigen::VectorXd& x) {
    const double r = std::sqrt(x(0) * x(0) + x(1) * x(1));
    const double inner =
        std::abs(std::sin(x(0)) * std::sin(x(1)) * std::exp(std::abs(100.0 - r / kPi)));
    return -0.0001 * std::pow(inner + 1.0, 0.1);
}

double ackley(const Eigen::VectorXd& x) {
    const double d = static_cast<double>(x.size());
    const double a = 20.0, b = 0.2, c = 2.0 * kPi;
    double sum_sq = 0.0, sum_cos = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        sum_sq += x(i) * x(i);
        sum_cos += std::cos(c * x(i));
    }
    return -a * std::exp(-b * std::sqrt(sum_sq / d)) - std::exp(sum_cos / d) + a + std::exp(1.0);
}

double hartmann6(const Eigen::VectorXd& x) {
    static const double alpha[4] = {1.0, 1.2, 3.0, 3.2};
    static const double A[4][6] = {
        {10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
        {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
        {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
        {17.0, 8.0, 0.05, 10.0, 0.1, 14.0},
    };
    static const double P[4][6] = {
        {0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
        {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
        {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
        {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381},
    };
    double outer = 0.0;
    for (int i = 0; i < 4; ++i) {
        double inner = 0.0;
        for (int j = 0; j < 6; ++j) {
            const double diff = x(j) - P[i][j];
            inner += A[i][j] * diff * diff;
        }
        outer += alpha[i] * std::exp(-inner);
    }
    return -outer;
}

struct SyntheticTask {
    const char* name;
    int dim;
    double lo, hi;  // box domain per coordinate
    double (*objective)(const Eigen::VectorXd&);
};

const SyntheticTask kTasks[] = {
    {"holder-table", 2, -10.0, 10.0, holder_table},
    {"cross-in-tray", 2, -10.0, 10.0, cross_in_tray},
    {"ackley", 4, -32.768, 32.768, ackley},
    {"hartmann", 6, 0.0, 1.0, hartmann6},
};

const SyntheticTask& find_task(const std::string& name, int dim) {
    for (const auto& task : kTasks) {
        if (name == task.name) {
            if (dim != task.dim) {
                throw std::invalid_argument("environment '" + name + "' has dimension " +
                                            std::to_string(task.dim) + ", not " +
                                            std::to_string(dim));
            }
            return task;
        }
    }
    throw std::invalid_argument("unknown synthetic environment '" + name + "'");
}

// Affine map of one coordinate from [lo, hi] into [-1/sqrt(d), 1/sqrt(d)].
double to_ball_coordinate(double v, double lo, double hi, double dim) {
    const double unit = hi > lo ? 2.0 * (v - lo) / (hi - lo) - 1.0 : 0.0;
    return unit / std::sqrt(dim);
}

// ------------------------------- CSV parsing -------------------------------

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

double parse_cell(const std::string& cell, int row_number) {
    std::size_t begin = cell.find_first_not_of(" \t");
    std::size_t end = cell.find_last_not_of(" \t\r");
    if (begin == std::string::npos) {
        throw std::runtime_error("csv row " + std::to_string(row_number) + ": empty cell");
    }
    double value = 0.0;
    const char* first = cell.data() + begin;
    const char* last = cell.data() + end + 1;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw std::runtime_error("csv row " + std::to_string(row_number) + ": non-numeric cell '" +
                                 cell + "'");
    }
    return value;
}

}  // namespace

// ---------------------------------------------------------------------------
// Environment
// ---------------------------------------------------------------------------

Environment::Environment(std::vector<Eigen::VectorXd> candidates, std::vector<double> rewards,
                         double noise_sigma)
    : candidates_(std::move(candidates)), rewards_(std::move(rewards)),
      noise_sigma_(noise_sigma) {
    if (candidates_.size() != rewards_.size()) {
        throw std::invalid_argument("environment: candidates and rewards differ in length");
    }
    if (candidates_.empty()) throw std::invalid_argument("environment: empty candidate set");
    if (!(noise_sigma_ >= 0.0)) throw std::invalid_argument("noise sigma must be >= 0");
    const Eigen::Index dim = candidates_.front().size();
    for (const auto& c : candidates_) {
        if (c.size() != dim) throw std::invalid_argument("environment: mixed arm dimensions");
        if (c.norm() > 1.0 + 1e-9) {
            throw std::invalid_argument(
                "environment: candidate outside the unit ball (norm " + std::to_string(c.norm()) +
                "); rescale arms before constructing the environment");
        }
    }
    optimum_index_ = 0;
    for (std::size_t i = 1; i < rewards_.size(); ++i) {
        if (rewards_[i] > rewards_[optimum_index_]) optimum_index_ = static_cast<int>(i);
    }
    optimum_value_ = rewards_[static_cast<std::size_t>(optimum_index_)];
}

Environment Environment::synthetic(const std::string& name, int dim, int n_arms, RngStream& rng,
                                   double noise_sigma) {
    const SyntheticTask& task = find_task(name, dim);
    if (n_arms < 2) throw std::invalid_argument("synthetic environment needs n_arms >= 2");

    std::vector<Eigen::VectorXd> scaled;
    std::vector<double> rewards;
    scaled.reserve(static_cast<std::size_t>(n_arms));
    rewards.reserve(static_cast<std::size_t>(n_arms));
    for (int i = 0; i < n_arms; ++i) {
        Eigen::VectorXd original(task.dim);
        for (int j = 0; j < task.dim; ++j) {
            original(j) = task.lo + rng.uniform() * (task.hi - task.lo);
        }
        // Rewards are evaluated at the original coordinates; the rescaled copy
        // only changes the kernel's view of the arm, not its payoff.
        rewards.push_back(-task.objective(original));
        Eigen::VectorXd ball(task.dim);
        for (int j = 0; j < task.dim; ++j) {
            ball(j) = to_ball_coordinate(original(j), task.lo, task.hi,
                                         static_cast<double>(task.dim));
        }
        scaled.push_back(std::move(ball));
    }
    return Environment(std::move(scaled), std::move(rewards), noise_sigma);
}

double lower_bound_gap(int dim, int horizon, double noise_scale, double norm_bound) {
    if (dim < 2) throw std::invalid_argument("lower-bound instance needs dimension >= 2");
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    const double beta = 1.0 / 6.0;
    return (noise_scale * std::sqrt(0.5 * dim) + norm_bound) /
           (2.0 * std::sqrt(1.0 + beta * horizon / (dim - 1.0)));
}

Environment Environment::lower_bound_instance(int dim, int horizon, double noise_scale,
                                              double norm_bound) {
    const double gap = lower_bound_gap(dim, horizon, noise_scale, norm_bound);

    const double alpha_minus_beta = 5.1 / 6.0 - 1.0 / 6.0;
    if (static_cast<double>(horizon) <= std::exp(static_cast<double>(dim)) / alpha_minus_beta) {
        std::cerr << "warning: lower-bound instance with T=" << horizon << ", d=" << dim
                  << " is below the horizon regime the construction targets\n";
    }

    std::vector<Eigen::VectorXd> arms;
    std::vector<double> rewards(static_cast<std::size_t>(dim), 0.0);
    arms.reserve(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
        e(i) = 1.0;
        arms.push_back(std::move(e));
    }
    rewards[0] = gap;
    return Environment(std::move(arms), std::move(rewards), 0.0);
}

Environment Environment::from_csv(const std::string& path, double noise_sigma) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open csv file '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv file '" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const std::vector<std::string> header = split_csv_line(line);
    int target_col = -1;
    std::vector<int> feature_cols;
    for (std::size_t i = 0; i < header.size(); ++i) {
        std::string name = header[i];
        name.erase(name.find_last_not_of(" \t\r") + 1);
        name.erase(0, name.find_first_not_of(" \t"));
        if (name == "target") {
            target_col = static_cast<int>(i);
        } else if (feature_cols.size() < 3) {
            feature_cols.push_back(static_cast<int>(i));
        }
    }
    if (target_col < 0) {
        throw std::runtime_error("csv file '" + path + "' has no 'target' column");
    }
    if (feature_cols.size() < 3) {
        throw std::runtime_error("csv file '" + path + "' needs three feature columns");
    }

    std::vector<Eigen::VectorXd> features;
    std::vector<double> rewards;
    int row_number = 1;
    while (std::getline(in, line)) {
        ++row_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (static_cast<int>(cells.size()) <= target_col ||
            static_cast<int>(cells.size()) <= feature_cols.back()) {
            throw std::runtime_error("csv row " + std::to_string(row_number) +
                                     ": too few columns");
        }
        Eigen::VectorXd x(3);
        for (int j = 0; j < 3; ++j) {
            x(j) = parse_cell(cells[static_cast<std::size_t>(feature_cols[j])], row_number);
        }
        features.push_back(std::move(x));
        rewards.push_back(parse_cell(cells[static_cast<std::size_t>(target_col)], row_number));
    }
    if (features.size() < 2) {
        throw std::runtime_error("csv file '" + path + "' has fewer than 2 data rows");
    }

    // Per-coordinate min/max rescale into the unit ball.
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(3, std::numeric_limits<double>::infinity());
    Eigen::VectorXd hi = Eigen::VectorXd::Constant(3, -std::numeric_limits<double>::infinity());
    for (const auto& x : features) {
        lo = lo.cwiseMin(x);
        hi = hi.cwiseMax(x);
    }
    for (auto& x : features) {
        for (int j = 0; j < 3; ++j) x(j) = to_ball_coordinate(x(j), lo(j), hi(j), 3.0);
    }
    return Environment(std::move(features), std::move(rewards), noise_sigma);
}

double Environment::true_reward(int arm) const {
    if (arm < 0 || arm >= n_arms()) {
        throw std::invalid_argument("arm index " + std::to_string(arm) + " out of range [0, " +
                                    std::to_string(n_arms()) + ")");
    }
    return rewards_[static_cast<std::size_t>(arm)];
}

double Environment::max_abs_reward() const {
    double best = 0.0;
    for (double r : rewards_) best = std::max(best, std::abs(r));
    return best;
}

StepResult Environment::step(int arm, RngStream& rng) const {
    const double reward = true_reward(arm);
    const double noise = noise_sigma_ > 0.0 ? noise_sigma_ * rng.gaussian() : 0.0;
    return {reward + noise, optimum_value_ - reward};
}

}  // namespace gpbandit
