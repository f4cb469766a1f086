#include "gpbandit/kernels.hpp"

#include <cmath>
#include <charconv>
#include <stdexcept>

namespace gpbandit {

namespace {

// Admissibility slack for the linear kernel's unit-ball check; absorbs the
// rounding of affine rescaling without letting genuinely bad inputs through.
constexpr double kBallSlack = 1e-9;

double parse_positive(std::string_view text, const char* what) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || !(value > 0.0)) {
        throw std::invalid_argument(std::string("kernel spec: bad ") + what + " '" +
                                    std::string(text) + "'");
    }
    return value;
}

void check_unit_ball(const Eigen::VectorXd& v) {
    if (v.norm() > 1.0 + kBallSlack) {
        throw std::domain_error("linear kernel requires inputs with Euclidean norm <= 1 (got " +
                                std::to_string(v.norm()) + ")");
    }
}

}  // namespace

KernelSpec KernelSpec::rbf(double lengthscale) {
    if (!(lengthscale > 0.0)) throw std::invalid_argument("rbf lengthscale must be positive");
    return KernelSpec(KernelFamily::rbf, 0.0, lengthscale);
}

KernelSpec KernelSpec::matern(double nu, double lengthscale) {
    if (nu != 0.5 && nu != 1.5 && nu != 2.5) {
        throw std::invalid_argument("matern nu must be one of 0.5, 1.5, 2.5");
    }
    if (!(lengthscale > 0.0)) throw std::invalid_argument("matern lengthscale must be positive");
    return KernelSpec(KernelFamily::matern, nu, lengthscale);
}

KernelSpec KernelSpec::linear() { return KernelSpec(KernelFamily::linear, 0.0, 0.0); }

KernelSpec KernelSpec::parse(std::string_view text) {
    if (text == "linear") return linear();
    if (text.rfind("rbf:", 0) == 0) return rbf(parse_positive(text.substr(4), "lengthscale"));
    if (text.rfind("matern:", 0) == 0) {
        const std::string_view rest = text.substr(7);
        const std::size_t colon = rest.find(':');
        if (colon == std::string_view::npos) {
            throw std::invalid_argument("kernel spec: expected matern:<nu>:<lengthscale>");
        }
        const double nu = parse_positive(rest.substr(0, colon), "nu");
        return matern(nu, parse_positive(rest.substr(colon + 1), "lengthscale"));
    }
    throw std::invalid_argument("unknown kernel spec '" + std::string(text) +
                                "' (expected rbf:<l>, matern:<nu>:<l>, or linear)");
}

std::string KernelSpec::to_string() const {
    switch (family_) {
        case KernelFamily::rbf:
            return "rbf:" + std::to_string(lengthscale_);
        case KernelFamily::matern:
            return "matern:" + std::to_string(nu_) + ":" + std::to_string(lengthscale_);
        case KernelFamily::linear:
            return "linear";
    }
    return "?";
}

double eval_kernel(const KernelSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("eval_kernel: dimension mismatch (" + std::to_string(x.size()) +
                                    " vs " + std::to_string(y.size()) + ")");
    }
    switch (spec.family()) {
        case KernelFamily::rbf: {
            const double l = spec.lengthscale();
            return std::exp(-(x - y).squaredNorm() / (2.0 * l * l));
        }
        case KernelFamily::matern: {
            const double r = (x - y).norm() / spec.lengthscale();
            if (spec.nu() == 0.5) return std::exp(-r);
            if (spec.nu() == 1.5) {
                const double a = std::sqrt(3.0) * r;
                return (1.0 + a) * std::exp(-a);
            }
            const double a = std::sqrt(5.0) * r;
            return (1.0 + a + a * a / 3.0) * std::exp(-a);
        }
        case KernelFamily::linear: {
            check_unit_ball(x);
            check_unit_ball(y);
            return x.dot(y);
        }
    }
    throw std::logic_error("eval_kernel: unreachable");
}

Eigen::MatrixXd gram(const KernelSpec& spec, const std::vector<Eigen::VectorXd>& points) {
    const Eigen::Index n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v = eval_kernel(spec, points[i], points[j]);
            out(i, j) = v;
            out(j, i) = v;
        }
    }
    return out;
}

}  // namespace gpbandit
