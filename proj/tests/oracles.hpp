// Test-only reference implementations, kept independent of the library code
// paths they check: explicit feature-space ridge regression for the linear
// kernel, dense from-scratch posterior recomputation, second transcriptions of
// the synthetic objectives and of the regret-bound formula.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

namespace oracles {

// ---------------------------------------------------------------------------
// Explicit feature-space ridge regression (linear kernel only).
// With features phi(x) = x, the regularized estimator is
//   mean(x)  = x' (I_d + sum x_s x_s')^{-1} sum y_s x_s
//   wn(x)^2  = x' (I_d + sum x_s x_s')^{-1} x
//   log det(I_d + sum x_s x_s')
// ---------------------------------------------------------------------------

inline Eigen::MatrixXd feature_design(const std::vector<Eigen::VectorXd>& points, int dim) {
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(dim, dim);
    for (const auto& x : points) v += x * x.transpose();
    return v;
}

inline double feature_mean(const std::vector<Eigen::VectorXd>& points, const Eigen::VectorXd& y,
                           const Eigen::VectorXd& query) {
    const int dim = static_cast<int>(query.size());
    Eigen::VectorXd b = Eigen::VectorXd::Zero(dim);
    for (std::size_t s = 0; s < points.size(); ++s) b += y(static_cast<Eigen::Index>(s)) * points[s];
    return query.dot(feature_design(points, dim).ldlt().solve(b));
}

inline double feature_weighted_norm_sq(const std::vector<Eigen::VectorXd>& points,
                                       const Eigen::VectorXd& query) {
    const int dim = static_cast<int>(query.size());
    return query.dot(feature_design(points, dim).ldlt().solve(query));
}

inline double feature_log_det(const std::vector<Eigen::VectorXd>& points, int dim) {
    return std::log(feature_design(points, dim).determinant());
}

// ---------------------------------------------------------------------------
// Dense kernel-space recomputation from scratch for any kernel function,
// checking the incremental updates. The kernel is passed as a callable so this
// header stays decoupled from the library types.
// ---------------------------------------------------------------------------

template <typename KernelFn>
struct DensePosterior {
    Eigen::MatrixXd regularized;  // K + I
    Eigen::LLT<Eigen::MatrixXd> llt;
    std::vector<Eigen::VectorXd> points;
    Eigen::VectorXd y;
    KernelFn kernel;

    DensePosterior(KernelFn k, std::vector<Eigen::VectorXd> pts, Eigen::VectorXd rewards)
        : points(std::move(pts)), y(std::move(rewards)), kernel(std::move(k)) {
        const Eigen::Index n = static_cast<Eigen::Index>(points.size());
        regularized.resize(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                regularized(i, j) = kernel(points[static_cast<std::size_t>(i)],
                                           points[static_cast<std::size_t>(j)]);
            }
        }
        regularized += Eigen::MatrixXd::Identity(n, n);
        llt.compute(regularized);
    }

    Eigen::VectorXd cross(const Eigen::VectorXd& x) const {
        Eigen::VectorXd k(static_cast<Eigen::Index>(points.size()));
        for (std::size_t s = 0; s < points.size(); ++s) {
            k(static_cast<Eigen::Index>(s)) = kernel(points[s], x);
        }
        return k;
    }

    double mean(const Eigen::VectorXd& x) const {
        if (points.empty()) return 0.0;
        return cross(x).dot(llt.solve(y));
    }

    double weighted_norm(const Eigen::VectorXd& x) const {
        const double kxx = kernel(x, x);
        if (points.empty()) return std::sqrt(kxx);
        const Eigen::VectorXd k = cross(x);
        return std::sqrt(std::max(0.0, kxx - k.dot(llt.solve(k))));
    }

    double log_det() const {
        if (points.empty()) return 0.0;
        double out = 0.0;
        const Eigen::MatrixXd l = llt.matrixL();
        for (Eigen::Index i = 0; i < l.rows(); ++i) out += 2.0 * std::log(l(i, i));
        return out;
    }
};

// ---------------------------------------------------------------------------
// Second transcriptions of the synthetic objectives (minimization forms).
// Written against the published formulas, structured differently from the
// library (std::hypot, index loops) on purpose.
// ---------------------------------------------------------------------------

inline double holder_table(double x1, double x2) {
    const double term = std::sin(x1) * std::cos(x2);
    const double bump = std::exp(std::fabs(1.0 - std::hypot(x1, x2) / M_PI));
    return -std::fabs(term * bump);
}

inline double cross_in_tray(double x1, double x2) {
    const double term = std::sin(x1) * std::sin(x2);
    const double bump = std::exp(std::fabs(100.0 - std::hypot(x1, x2) / M_PI));
    return -0.0001 * std::pow(std::fabs(term * bump) + 1.0, 0.1);
}

inline double ackley(const std::vector<double>& x) {
    const double d = static_cast<double>(x.size());
    double sq = 0.0;
    double cs = 0.0;
    for (double xi : x) {
        sq += xi * xi;
        cs += std::cos(2.0 * M_PI * xi);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / d)) - std::exp(cs / d) + 20.0 + M_E;
}

inline double hartmann6(const std::vector<double>& x) {
    static const double alpha[4] = {1.0, 1.2, 3.0, 3.2};
    static const double a[4][6] = {{10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
                                   {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
                                   {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
                                   {17.0, 8.0, 0.05, 10.0, 0.1, 14.0}};
    static const double p[4][6] = {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                                   {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                                   {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
                                   {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};
    double total = 0.0;
    for (int i = 0; i < 4; ++i) {
        double expo = 0.0;
        for (int j = 0; j < 6; ++j) expo -= a[i][j] * (x[static_cast<std::size_t>(j)] - p[i][j]) *
                                            (x[static_cast<std::size_t>(j)] - p[i][j]);
        total += alpha[i] * std::exp(expo);
    }
    return -total;
}

// ---------------------------------------------------------------------------
// Independent re-evaluation of the regret-bound expression.
// ---------------------------------------------------------------------------

inline double regret_bound(double t, double gamma, double r, double d, double c2, double c3) {
    const double explore_width = std::sqrt(2.0 * r * r * (gamma + std::log(2.0))) + d;
    const double estimate_width =
        std::sqrt(2.0 * r * r * (gamma + std::log(2.0 * t * d * d))) + d;
    const double root = std::sqrt(t * gamma);
    return 2.0 * (c2 + 2.0 * c3) * explore_width * root + 2.0 * estimate_width * root + 1.0;
}

}  // namespace oracles
