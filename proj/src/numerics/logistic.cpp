#include "raincorr/numerics/logistic.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <cmath>
#include <string>

#include "raincorr/errors.hpp"

namespace raincorr::numerics {

namespace {

constexpr int kMaxIterations = 100;
constexpr double kTolerance = 1e-8;
// |coef| beyond this means fitted probabilities within ~1e-13 of 0 or 1.
constexpr double kDivergence = 30.0;

double log1p_exp(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double log_likelihood(const Eigen::VectorXd& eta, const Eigen::VectorXd& y) {
    double ll = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) ll += y[i] * eta[i] - log1p_exp(eta[i]);
    return ll;
}

}  // namespace

double inverse_logit(double eta) {
    if (eta >= 0.0) return 1.0 / (1.0 + std::exp(-eta));
    const double e = std::exp(eta);
    return e / (1.0 + e);
}

LogisticFit irls_logistic(const Eigen::MatrixXd& design, const Eigen::VectorXd& response) {
    const Eigen::Index n = design.rows();
    const Eigen::Index p = design.cols();
    if (response.size() != n) throw DomainError("logistic regression: response length mismatch");
    if (n == 0 || p == 0) throw DomainError("logistic regression: empty design");

    double ones = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (response[i] != 0.0 && response[i] != 1.0)
            throw DomainError("logistic regression: response must be 0 or 1");
        ones += response[i];
    }
    if (ones == 0.0 || ones == static_cast<double>(n))
        throw SeparationError("logistic regression: response is constant (" +
                              std::string(ones == 0.0 ? "all 0" : "all 1") + "), no finite MLE");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < p) throw DomainError("logistic regression: design matrix is rank deficient");

    LogisticFit fit;
    fit.coefficients = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd eta = Eigen::VectorXd::Zero(n);
    double ll = log_likelihood(eta, response);

    for (int it = 1; it <= kMaxIterations; ++it) {
        Eigen::VectorXd mu(n), w(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            mu[i] = inverse_logit(eta[i]);
            w[i] = mu[i] * (1.0 - mu[i]);
        }
        const Eigen::VectorXd score = design.transpose() * (response - mu);
        const Eigen::MatrixXd info = design.transpose() * w.asDiagonal() * design;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(info);
        if (ldlt.info() != Eigen::Success || ldlt.isNegative())
            throw SeparationError("logistic regression: information matrix became singular");
        Eigen::VectorXd step = ldlt.solve(score);

        // Step halving guards the rare non-monotone Newton step.
        double new_ll = ll;
        Eigen::VectorXd beta = fit.coefficients;
        for (int half = 0; half < 30; ++half) {
            beta = fit.coefficients + step;
            eta = design * beta;
            new_ll = log_likelihood(eta, response);
            if (new_ll >= ll - 1e-12) break;
            step *= 0.5;
        }
        fit.coefficients = beta;
        fit.iterations = it;
        if (fit.coefficients.cwiseAbs().maxCoeff() > kDivergence)
            throw SeparationError("logistic regression: coefficients diverge (max |coef| = " +
                                  std::to_string(fit.coefficients.cwiseAbs().maxCoeff()) +
                                  "), response is separable");
        const double change = std::fabs(new_ll - ll);
        ll = new_ll;
        if (change < kTolerance) {
            fit.log_likelihood = ll;
            return fit;
        }
    }
    throw ConvergenceError("logistic regression did not converge in " +
                           std::to_string(kMaxIterations) + " iterations");
}

}  // namespace raincorr::numerics
