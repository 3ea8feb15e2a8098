#include "raincorr/numerics/cholesky.hpp"

#include <cmath>

#include "raincorr/errors.hpp"

namespace raincorr::numerics {

Cholesky::Cholesky(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw FactorizationError("Cholesky of a non-square matrix");
    if (a.rows() == 0) throw FactorizationError("Cholesky of an empty matrix");
    if (!a.allFinite()) throw FactorizationError("Cholesky of a non-finite matrix");

    llt_.compute(a);
    if (llt_.info() == Eigen::Success) return;

    const double mean_diag = a.trace() / static_cast<double>(a.rows());
    const double base = mean_diag > 0.0 ? mean_diag : 1.0;
    for (double factor = 1e-10; factor <= 1e-4 * (1.0 + 1e-9); factor *= 10.0) {
        Eigen::MatrixXd shifted = a;
        shifted.diagonal().array() += factor * base;
        llt_.compute(shifted);
        if (llt_.info() == Eigen::Success) {
            jitter_ = factor * base;
            return;
        }
    }
    throw FactorizationError("matrix is not positive definite after maximum jitter");
}

double Cholesky::log_determinant() const {
    return 2.0 * llt_.matrixLLT().diagonal().array().log().sum();
}

Eigen::MatrixXd cholesky_solve(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (b.rows() != a.rows()) throw DomainError("cholesky_solve: dimension mismatch");
    return Cholesky(a).solve(b);
}

}  // namespace raincorr::numerics
