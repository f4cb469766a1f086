#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

namespace gpbandit {

enum class KernelFamily { rbf, matern, linear };

/// Immutable description of a positive-definite kernel with K(x,x) <= 1.
///
/// Supported variants:
///   rbf       K(x,y) = exp(-|x-y|^2 / (2 l^2))
///   matern    half-integer smoothness nu in {1/2, 3/2, 5/2}, closed forms
///   linear    K(x,y) = x.y, restricted to the unit ball so K(x,x) <= 1
class KernelSpec {
public:
    static KernelSpec rbf(double lengthscale);
    static KernelSpec matern(double nu, double lengthscale);
    static KernelSpec linear();

    /// Parses "rbf:<lengthscale>", "matern:<nu>:<lengthscale>" or "linear".
    static KernelSpec parse(std::string_view text);

    KernelFamily family() const { return family_; }
    double lengthscale() const { return lengthscale_; }
    double nu() const { return nu_; }
    std::string to_string() const;

    bool operator==(const KernelSpec& other) const = default;

private:
    KernelSpec(KernelFamily family, double nu, double lengthscale)
        : family_(family), nu_(nu), lengthscale_(lengthscale) {}

    KernelFamily family_;
    double nu_;
    double lengthscale_;
};

/// Evaluates K(x, y). Throws std::invalid_argument on dimension mismatch and
/// std::domain_error when a linear-kernel input lies outside the unit ball.
double eval_kernel(const KernelSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Dense Gram matrix over `points`; symmetric positive semidefinite.
Eigen::MatrixXd gram(const KernelSpec& spec, const std::vector<Eigen::VectorXd>& points);

}  // namespace gpbandit
