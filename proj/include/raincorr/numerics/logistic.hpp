#pragma once

#include <Eigen/Core>

namespace raincorr::numerics {

struct LogisticFit {
    Eigen::VectorXd coefficients;
    double log_likelihood = 0.0;
    int iterations = 0;
};

/// Bernoulli maximum likelihood by iteratively reweighted least squares.
///
/// Stops when the log-likelihood changes by less than 1e-8 (at most 100
/// iterations). Throws DomainError for a rank-deficient design or a
/// non-binary response, and SeparationError when the response is constant
/// or the coefficients diverge.
LogisticFit irls_logistic(const Eigen::MatrixXd& design, const Eigen::VectorXd& response);

double inverse_logit(double eta);

}  // namespace raincorr::numerics
