#pragma once

#include <stdexcept>
#include <vector>

#include "gpbandit/kernels.hpp"

namespace gpbandit {

/// Sub-Gaussian noise scale R and RKHS norm bound D of the target function.
struct ConfidenceParams {
    double noise_scale;  // R >= 0
    double norm_bound;   // D > 0

    ConfidenceParams(double r, double d) : noise_scale(r), norm_bound(d) {
        if (!(r >= 0.0)) throw std::invalid_argument("noise scale R must be >= 0");
        if (!(d > 0.0)) throw std::invalid_argument("norm bound D must be > 0");
    }
};

/// Raised when a Cholesky pivot falls below the jitter floor. With a bounded
/// kernel every pivot is >= 1 mathematically, so this signals a kernel bug
/// rather than a recoverable condition.
struct NumericalDegeneracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Regularized kernel posterior over the observations (X_1,Y_1),...,(X_t,Y_t),
/// maintained incrementally. Internally keeps the lower Cholesky factor L of
/// (K_t + I) extended by one row per observation, the solve products needed
/// for queries, and log det(K_t + I).
///
/// Queries:
///   mean(x)          = k_t(x)' (K_t + I)^{-1} y       (0 at t = 0)
///   weighted_norm(x) = sqrt(K(x,x) - k_t(x)' (K_t + I)^{-1} k_t(x))
///   log_det()        = log det(K_t + I)
///   g_value(x)       = (sqrt(2 R^2 (log 2 + log_det/2)) + D) * weighted_norm(x)
///   f_tilde(w, x)    = mean(x) + w * g_value(x)
///
/// The confidence width is evaluated in log space throughout; the determinant
/// itself would overflow a double near t ~ 1e3.
class PosteriorState {
public:
    explicit PosteriorState(KernelSpec kernel);

    /// Appends one observation. O(t^2): one forward solve for the new Cholesky
    /// row plus one backward solve to refresh alpha = (K_t + I)^{-1} y.
    void update(const Eigen::VectorXd& x, double y);

    double mean(const Eigen::VectorXd& x) const;
    double weighted_norm(const Eigen::VectorXd& x) const;
    double log_det() const { return logdet_; }
    double g_value(const ConfidenceParams& params, const Eigen::VectorXd& x) const;
    double f_tilde(const ConfidenceParams& params, double w, const Eigen::VectorXd& x) const;

    /// Multiplier applied to weighted_norm inside g_value; depends on the
    /// state only through log_det.
    double confidence_scale(const ConfidenceParams& params) const;

    int size() const { return rounds_; }
    const KernelSpec& kernel() const { return kernel_; }
    const std::vector<Eigen::VectorXd>& points() const { return points_; }

    /// Observed rewards y_1..y_t.
    Eigen::VectorXd rewards() const { return rewards_.head(rounds_); }

    // Read-only views of the factorization, used by SelectionContext and by
    // the test suites. Only the top-left size() x size() block of the Cholesky
    // storage is meaningful; entries above the diagonal are zero.
    const Eigen::MatrixXd& cholesky_storage() const { return chol_; }
    Eigen::VectorXd alpha() const { return alpha_.head(rounds_); }
    Eigen::VectorXd forward_solved_rewards() const { return zvec_.head(rounds_); }

private:
    void ensure_capacity(int needed);
    Eigen::VectorXd cross_kernel(const Eigen::VectorXd& x) const;

    KernelSpec kernel_;
    std::vector<Eigen::VectorXd> points_;
    Eigen::VectorXd rewards_;  // capacity-managed; head(rounds_) valid
    Eigen::MatrixXd chol_;     // lower-triangular in the top-left block
    Eigen::VectorXd alpha_;    // (K_t + I)^{-1} y
    Eigen::VectorXd zvec_;     // L^{-1} y
    double logdet_ = 0.0;
    int rounds_ = 0;
    int capacity_ = 0;
};

/// Per-candidate posterior quantities over a fixed arm set, kept in sync with
/// a growing PosteriorState at O(t * n_candidates) per round instead of the
/// O(t^2 * n_candidates) cost of solving from scratch. sync() consumes the new
/// Cholesky rows of the state; the cached means and weighted norms match the
/// state's per-point queries to solver precision.
class SelectionContext {
public:
    SelectionContext(KernelSpec kernel, std::vector<Eigen::VectorXd> candidates);

    /// Advances the caches to state.size(). The state must use the same kernel
    /// and must only have grown since the previous sync.
    void sync(const PosteriorState& state);

    int synced_rounds() const { return rounds_; }
    const std::vector<Eigen::VectorXd>& candidates() const { return candidates_; }

    const Eigen::VectorXd& means() const { return means_; }
    const Eigen::VectorXd& weighted_norms() const { return wns_; }

    /// Posterior covariance over the candidate set (no jitter applied).
    Eigen::MatrixXd posterior_covariance() const { return prior_gram_ - cross_sq_; }

private:
    void ensure_capacity(int needed);

    KernelSpec kernel_;
    std::vector<Eigen::VectorXd> candidates_;
    Eigen::MatrixXd prior_gram_;   // K over candidates
    Eigen::MatrixXd solved_rows_;  // rows 0..t-1 = L^{-1} K_cross
    Eigen::MatrixXd cross_sq_;     // solved_rows' * solved_rows
    Eigen::VectorXd col_sq_;       // diagonal of cross_sq_
    Eigen::VectorXd means_;
    Eigen::VectorXd wns_;
    int rounds_ = 0;
    int capacity_ = 0;
};

}  // namespace gpbandit
