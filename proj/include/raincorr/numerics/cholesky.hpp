#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace raincorr::numerics {

/// Cholesky factor of a symmetric positive-definite matrix, with diagonal
/// jitter escalated from 1e-10 to 1e-4 times the mean diagonal (x10 per
/// step) until the factorisation succeeds.
class Cholesky {
public:
    /// Throws FactorizationError if the matrix is not PD at maximum jitter.
    explicit Cholesky(const Eigen::MatrixXd& a);

    Eigen::MatrixXd solve(const Eigen::MatrixXd& b) const { return llt_.solve(b); }
    Eigen::VectorXd solve(const Eigen::VectorXd& b) const { return llt_.solve(b); }

    /// L^{-1} b
    Eigen::MatrixXd solve_lower(const Eigen::MatrixXd& b) const {
        return llt_.matrixL().solve(b);
    }
    Eigen::MatrixXd matrix_l() const { return llt_.matrixL(); }
    double log_determinant() const;
    /// Diagonal jitter added to obtain the factor (0 when none was needed).
    double jitter() const noexcept { return jitter_; }
    Eigen::Index size() const noexcept { return llt_.rows(); }

private:
    Eigen::LLT<Eigen::MatrixXd> llt_;
    double jitter_ = 0.0;
};

/// Solves A X = B for symmetric positive-definite A.
Eigen::MatrixXd cholesky_solve(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace raincorr::numerics
