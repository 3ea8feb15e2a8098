#pragma once

#include <Eigen/Core>
#include <variant>

namespace raincorr::numerics {

/// Matérn covariance restricted to the closed-form smoothness values
/// nu in {0.5, 1.5, 2.5}.
struct Matern {
    double nu = 1.5;
    double sigma2 = 1.0;  ///< signal variance
    double rho = 1.0;     ///< length scale
    friend bool operator==(const Matern&, const Matern&) = default;
};

/// Squared-exponential covariance v2 * exp(-d^2 / (2 lambda^2)).
struct Rbf {
    double v2 = 1.0;
    double lambda = 1.0;
    friend bool operator==(const Rbf&, const Rbf&) = default;
};

using KernelSpec = std::variant<Matern, Rbf>;

/// Throws DomainError for non-positive parameters or an unsupported nu.
void validate(const KernelSpec& spec);

/// Covariance as a function of the Euclidean distance d >= 0.
double kernel_at_distance(const KernelSpec& spec, double d);

double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y);

/// Gram matrix between the rows of `a` and the rows of `b`.
Eigen::MatrixXd gram(const KernelSpec& spec, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
Eigen::MatrixXd gram(const KernelSpec& spec, const Eigen::MatrixXd& a);

/// Prior variance k(x, x).
double kernel_variance(const KernelSpec& spec);

}  // namespace raincorr::numerics
