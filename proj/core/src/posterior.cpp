#include "gpbandit/posterior.hpp"

#include <algorithm>
#include <cmath>

namespace gpbandit {

namespace {

// Pivot floor for the incremental Cholesky. The true pivot is
// 1 + weighted_norm^2 >= 1 for any valid kernel, so hitting the floor means
// the kernel broke its own positive-definiteness contract.
constexpr double kJitterFloor = 1e-10;

constexpr int kInitialCapacity = 16;

}  // namespace

// ---------------------------------------------------------------------------
// PosteriorState
// ---------------------------------------------------------------------------

PosteriorState::PosteriorState(KernelSpec kernel) : kernel_(std::move(kernel)) {
    ensure_capacity(kInitialCapacity);
}

void PosteriorState::ensure_capacity(int needed) {
    if (needed <= capacity_) return;
    int next = std::max(capacity_, kInitialCapacity);
    while (next < needed) next *= 2;

    Eigen::MatrixXd chol = Eigen::MatrixXd::Zero(next, next);
    Eigen::VectorXd rewards = Eigen::VectorXd::Zero(next);
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(next);
    Eigen::VectorXd zvec = Eigen::VectorXd::Zero(next);
    if (rounds_ > 0) {
        chol.topLeftCorner(rounds_, rounds_) = chol_.topLeftCorner(rounds_, rounds_);
        rewards.head(rounds_) = rewards_.head(rounds_);
        alpha.head(rounds_) = alpha_.head(rounds_);
        zvec.head(rounds_) = zvec_.head(rounds_);
    }
    chol_ = std::move(chol);
    rewards_ = std::move(rewards);
    alpha_ = std::move(alpha);
    zvec_ = std::move(zvec);
    capacity_ = next;
}

Eigen::VectorXd PosteriorState::cross_kernel(const Eigen::VectorXd& x) const {
    Eigen::VectorXd k(rounds_);
    for (int s = 0; s < rounds_; ++s) k(s) = eval_kernel(kernel_, points_[s], x);
    return k;
}

void PosteriorState::update(const Eigen::VectorXd& x, double y) {
    const int t = rounds_;
    ensure_capacity(t + 1);

    const double kxx = eval_kernel(kernel_, x, x);
    const Eigen::VectorXd k = cross_kernel(x);

    // New Cholesky row: solve L l = k, pivot d = sqrt(kxx + 1 - |l|^2).
    Eigen::VectorXd l(t);
    if (t > 0) {
        l = chol_.topLeftCorner(t, t).triangularView<Eigen::Lower>().solve(k);
    }
    const double pivot_sq = kxx + 1.0 - l.squaredNorm();
    if (!(pivot_sq > kJitterFloor)) {
        throw NumericalDegeneracyError(
            "posterior update: Cholesky pivot " + std::to_string(pivot_sq) +
            " fell below the jitter floor; the kernel is not positive definite");
    }
    const double pivot = std::sqrt(pivot_sq);

    chol_.row(t).head(t) = l.transpose();
    chol_(t, t) = pivot;
    rewards_(t) = y;
    zvec_(t) = (y - l.dot(zvec_.head(t))) / pivot;
    logdet_ += 2.0 * std::log(pivot);
    points_.push_back(x);
    rounds_ = t + 1;

    // alpha = L^{-T} z, refreshed in full; z itself extends incrementally.
    alpha_.head(rounds_) = chol_.topLeftCorner(rounds_, rounds_)
                               .triangularView<Eigen::Lower>()
                               .transpose()
                               .solve(zvec_.head(rounds_));
}

double PosteriorState::mean(const Eigen::VectorXd& x) const {
    if (rounds_ == 0) return 0.0;
    return cross_kernel(x).dot(alpha_.head(rounds_));
}

double PosteriorState::weighted_norm(const Eigen::VectorXd& x) const {
    const double kxx = eval_kernel(kernel_, x, x);
    if (rounds_ == 0) return std::sqrt(std::max(0.0, kxx));
    const Eigen::VectorXd v =
        chol_.topLeftCorner(rounds_, rounds_).triangularView<Eigen::Lower>().solve(cross_kernel(x));
    return std::sqrt(std::max(0.0, kxx - v.squaredNorm()));
}

double PosteriorState::confidence_scale(const ConfidenceParams& params) const {
    const double r = params.noise_scale;
    const double log_two_sqrt_det = std::log(2.0) + 0.5 * logdet_;
    return std::sqrt(2.0 * r * r * log_two_sqrt_det) + params.norm_bound;
}

double PosteriorState::g_value(const ConfidenceParams& params, const Eigen::VectorXd& x) const {
    return confidence_scale(params) * weighted_norm(x);
}

double PosteriorState::f_tilde(const ConfidenceParams& params, double w,
                               const Eigen::VectorXd& x) const {
    return mean(x) + w * g_value(params, x);
}

// ---------------------------------------------------------------------------
// SelectionContext
// ---------------------------------------------------------------------------

SelectionContext::SelectionContext(KernelSpec kernel, std::vector<Eigen::VectorXd> candidates)
    : kernel_(std::move(kernel)), candidates_(std::move(candidates)) {
    if (candidates_.empty()) {
        throw std::invalid_argument("SelectionContext: candidate set must be nonempty");
    }
    const Eigen::Index m = static_cast<Eigen::Index>(candidates_.size());
    prior_gram_ = gram(kernel_, candidates_);
    cross_sq_ = Eigen::MatrixXd::Zero(m, m);
    col_sq_ = Eigen::VectorXd::Zero(m);
    means_ = Eigen::VectorXd::Zero(m);
    wns_ = prior_gram_.diagonal().cwiseMax(0.0).cwiseSqrt();
    ensure_capacity(kInitialCapacity);
}

void SelectionContext::ensure_capacity(int needed) {
    if (needed <= capacity_) return;
    int next = std::max(capacity_, kInitialCapacity);
    while (next < needed) next *= 2;
    Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(next, static_cast<Eigen::Index>(candidates_.size()));
    if (rounds_ > 0) rows.topRows(rounds_) = solved_rows_.topRows(rounds_);
    solved_rows_ = std::move(rows);
    capacity_ = next;
}

void SelectionContext::sync(const PosteriorState& state) {
    if (state.kernel() != kernel_) {
        throw std::invalid_argument("SelectionContext::sync: kernel mismatch");
    }
    if (state.size() < rounds_) {
        throw std::invalid_argument("SelectionContext::sync: state shrank since last sync");
    }
    if (state.size() == rounds_) return;

    const Eigen::Index m = static_cast<Eigen::Index>(candidates_.size());
    ensure_capacity(state.size());
    const Eigen::MatrixXd& chol = state.cholesky_storage();
    const Eigen::VectorXd z = state.forward_solved_rewards();

    for (int s = rounds_; s < state.size(); ++s) {
        const Eigen::VectorXd& x = state.points()[s];
        Eigen::RowVectorXd row(m);
        for (Eigen::Index j = 0; j < m; ++j) row(j) = eval_kernel(kernel_, x, candidates_[j]);
        if (s > 0) row.noalias() -= chol.row(s).head(s) * solved_rows_.topRows(s);
        row /= chol(s, s);
        solved_rows_.row(s) = row;
        col_sq_ += row.transpose().cwiseAbs2();
        cross_sq_.noalias() += row.transpose() * row;
        means_.noalias() += z(s) * row.transpose();
    }
    rounds_ = state.size();
    wns_ = (prior_gram_.diagonal() - col_sq_).cwiseMax(0.0).cwiseSqrt();

    // means_ accumulates sum_s z_s * row_s = (L^{-1} K_cross)' L^{-1} y, which
    // equals K_cross' (K + I)^{-1} y; no full re-solve is needed.
}

}  // namespace gpbandit
