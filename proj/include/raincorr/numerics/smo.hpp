#pragma once

#include <Eigen/Core>

namespace raincorr::numerics {

struct SmoOptions {
    /// Stop once the maximal KKT violation m(beta) - M(beta) drops below this.
    double tolerance = 1e-3;
    /// Iteration cap, in multiples of the number of training points.
    long max_passes = 10000;
};

struct SmoSolution {
    Eigen::VectorXd alpha;
    Eigen::VectorXd alpha_star;
    double b = 0.0;
    long iterations = 0;
    double kkt_residual = 0.0;

    Eigen::VectorXd dual_coefficients() const { return alpha - alpha_star; }
};

/// Solves the epsilon-SVR dual
///
///   min 1/2 (a - a*)' K (a - a*) + eps * sum(a + a*) - y' (a - a*)
///   s.t. sum(a - a*) = 0,  0 <= a, a* <= C
///
/// by sequential minimal optimisation over the 2n stacked multipliers with
/// a maximal violator paired with a second-order choice of partner. The full Gram matrix is
/// held in memory. Throws ConvergenceError at the iteration cap.
SmoSolution smo_solve(const Eigen::MatrixXd& kernel, const Eigen::VectorXd& targets, double c,
                      double epsilon, const SmoOptions& options = {});

/// Dual objective above (minimisation form) for arbitrary multipliers.
double svr_dual_objective(const Eigen::MatrixXd& kernel, const Eigen::VectorXd& targets,
                          double epsilon, const Eigen::VectorXd& alpha,
                          const Eigen::VectorXd& alpha_star);

/// Maximal KKT violation of a feasible point (0 when optimal).
double svr_kkt_residual(const Eigen::MatrixXd& kernel, const Eigen::VectorXd& targets, double c,
                        double epsilon, const Eigen::VectorXd& alpha,
                        const Eigen::VectorXd& alpha_star);

}  // namespace raincorr::numerics
