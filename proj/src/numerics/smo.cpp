#include "raincorr/numerics/smo.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "raincorr/errors.hpp"

namespace raincorr::numerics {

namespace {

constexpr double kTau = 1e-12;

// Stacked view of the 2n-variable problem: index t < n is alpha_t with
// label +1, t >= n is alpha*_{t-n} with label -1.
struct Stacked {
    const Eigen::MatrixXd& k;
    Eigen::Index n;

    Eigen::Index src(Eigen::Index t) const { return t < n ? t : t - n; }
    double label(Eigen::Index t) const { return t < n ? 1.0 : -1.0; }
    double q(Eigen::Index s, Eigen::Index t) const { return label(s) * label(t) * k(src(s), src(t)); }
};

bool in_up(double z, double beta, double c) { return (z > 0 && beta < c) || (z < 0 && beta > 0); }
bool in_low(double z, double beta, double c) { return (z > 0 && beta > 0) || (z < 0 && beta < c); }

struct Violation {
    Eigen::Index i = -1, j = -1;
    double gmax = -std::numeric_limits<double>::infinity();
    double gmin = std::numeric_limits<double>::infinity();
};

Violation max_violating_pair(const Stacked& s, const std::vector<double>& beta,
                             const std::vector<double>& grad, double c) {
    Violation v;
    for (Eigen::Index t = 0; t < 2 * s.n; ++t) {
        const double z = s.label(t);
        const double score = -z * grad[t];
        if (in_up(z, beta[t], c) && score >= v.gmax) {
            v.gmax = score;
            v.i = t;
        }
        if (in_low(z, beta[t], c) && score <= v.gmin) {
            v.gmin = score;
            v.j = t;
        }
    }
    return v;
}

// Second-order working set selection (Fan, Chen and Lin, 2005): i is the
// maximal violator, j maximises the guaranteed decrease of the objective.
Violation select_working_set(const Stacked& s, const std::vector<double>& beta,
                             const std::vector<double>& grad, const std::vector<double>& diag, double c) {
    Violation v;
    for (Eigen::Index t = 0; t < 2 * s.n; ++t) {
        const double z = s.label(t);
        if (in_up(z, beta[t], c) && -z * grad[t] >= v.gmax) {
            v.gmax = -z * grad[t];
            v.i = t;
        }
    }
    if (v.i < 0) return v;
    const Eigen::Index n = s.n;
    const double* ki = s.k.col(s.src(v.i)).data();
    const double kii = ki[s.src(v.i)];
    double best = std::numeric_limits<double>::infinity();
    auto consider = [&](Eigen::Index t, Eigen::Index u, double z) {
        const double score = -z * grad[t];
        if (score <= v.gmin) v.gmin = score;
        const double b = v.gmax - score;
        if (b > 0.0) {
            // Curvature along the pair direction reduces to K_ii + K_uu - 2 K_iu.
            double a = kii + diag[u] - 2.0 * ki[u];
            if (a <= 0.0) a = kTau;
            const double gain = -(b * b) / a;
            if (gain <= best) {
                best = gain;
                v.j = t;
            }
        }
    };
    for (Eigen::Index u = 0; u < n; ++u) {
        if (beta[u] > 0.0) consider(u, u, 1.0);
    }
    for (Eigen::Index u = 0; u < n; ++u) {
        if (beta[u + n] < c) consider(u + n, u, -1.0);
    }
    return v;
}

std::vector<double> gradient(const Stacked& s, const Eigen::VectorXd& y, double eps,
                             const std::vector<double>& beta) {
    std::vector<double> g(2 * s.n);
    for (Eigen::Index t = 0; t < 2 * s.n; ++t) {
        g[t] = t < s.n ? eps - y[t] : eps + y[t - s.n];
        for (Eigen::Index u = 0; u < 2 * s.n; ++u) {
            if (beta[u] != 0.0) g[t] += s.q(t, u) * beta[u];
        }
    }
    return g;
}

void check_inputs(const Eigen::MatrixXd& kernel, const Eigen::VectorXd& targets) {
    if (kernel.rows() != kernel.cols() || kernel.rows() != targets.size())
        throw DomainError("smo_solve: kernel/target dimension mismatch");
}

}  // namespace

SmoSolution smo_solve(const Eigen::MatrixXd& kernel, const Eigen::VectorXd& targets, double c,
                      double epsilon, const SmoOptions& options) {
    check_inputs(kernel, targets);
    if (!(c > 0.0)) throw DomainError("smo_solve: C must be positive");
    if (!(epsilon >= 0.0)) throw DomainError("smo_solve: epsilon must be non-negative");
    const Eigen::Index n = targets.size();
    if (n == 0) throw DomainError("smo_solve: no training points");

    const Stacked s{kernel, n};
    const Eigen::Index l = 2 * n;
    std::vector<double> beta(l, 0.0);
    std::vector<double> grad(l);
    for (Eigen::Index t = 0; t < l; ++t) grad[t] = t < n ? epsilon - targets[t] : epsilon + targets[t - n];

    std::vector<double> diag(n);
    for (Eigen::Index t = 0; t < n; ++t) diag[t] = kernel(t, t);

    const long max_iter = options.max_passes * static_cast<long>(std::max<Eigen::Index>(n, 1));
    SmoSolution sol;
    long iter = 0;
    Violation v;
    while (true) {
        v = select_working_set(s, beta, grad, diag, c);
        if (v.i < 0 || v.j < 0 || v.gmax - v.gmin < options.tolerance) break;
        if (iter >= max_iter)
            throw ConvergenceError("SMO reached " + std::to_string(max_iter) +
                                   " iterations with KKT violation " +
                                   std::to_string(v.gmax - v.gmin));
        ++iter;

        const Eigen::Index i = v.i, j = v.j;
        const double zi = s.label(i), zj = s.label(j);
        const double qii = s.q(i, i), qjj = s.q(j, j), qij = s.q(i, j);
        const double old_i = beta[i], old_j = beta[j];
        double& ai = beta[i];
        double& aj = beta[j];

        if (zi != zj) {
            double quad = qii + qjj + 2.0 * qij;
            if (quad <= 0.0) quad = kTau;
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = ai - aj;
            ai += delta;
            aj += delta;
            if (diff > 0.0) {
                if (aj < 0.0) {
                    aj = 0.0;
                    ai = diff;
                }
            } else if (ai < 0.0) {
                ai = 0.0;
                aj = -diff;
            }
            if (diff > 0.0) {
                if (ai > c) {
                    ai = c;
                    aj = c - diff;
                }
            } else if (aj > c) {
                aj = c;
                ai = c + diff;
            }
        } else {
            double quad = qii + qjj - 2.0 * qij;
            if (quad <= 0.0) quad = kTau;
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = ai + aj;
            ai -= delta;
            aj += delta;
            if (sum > c) {
                if (ai > c) {
                    ai = c;
                    aj = sum - c;
                }
            } else if (aj < 0.0) {
                aj = 0.0;
                ai = sum;
            }
            if (sum > c) {
                if (aj > c) {
                    aj = c;
                    ai = sum - c;
                }
            } else if (ai < 0.0) {
                ai = 0.0;
                aj = sum;
            }
        }

        // Variables t and t+n share kernel row t with opposite labels.
        const double wi = zi * (ai - old_i), wj = zj * (aj - old_j);
        const double* ki = kernel.col(s.src(i)).data();
        const double* kj = kernel.col(s.src(j)).data();
        for (Eigen::Index t = 0; t < n; ++t) {
            const double f = ki[t] * wi + kj[t] * wj;
            grad[t] += f;
            grad[t + n] -= f;
        }
    }

    // Offset from the free multipliers, or the midpoint of the feasible
    // interval when none are free.
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    double free_sum = 0.0;
    long free_count = 0;
    for (Eigen::Index t = 0; t < l; ++t) {
        const double z = s.label(t);
        const double yg = z * grad[t];
        if (beta[t] >= c) {
            if (z < 0) ub = std::min(ub, yg);
            else lb = std::max(lb, yg);
        } else if (beta[t] <= 0.0) {
            if (z > 0) ub = std::min(ub, yg);
            else lb = std::max(lb, yg);
        } else {
            ++free_count;
            free_sum += yg;
        }
    }
    const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count) : 0.5 * (ub + lb);

    sol.alpha = Eigen::Map<const Eigen::VectorXd>(beta.data(), n);
    sol.alpha_star = Eigen::Map<const Eigen::VectorXd>(beta.data() + n, n);
    sol.b = -rho;
    sol.iterations = iter;
    sol.kkt_residual = std::max(0.0, v.gmax - v.gmin);
    return sol;
}

double svr_dual_objective(const Eigen::MatrixXd& kernel, const Eigen::VectorXd& targets,
                          double epsilon, const Eigen::VectorXd& alpha,
                          const Eigen::VectorXd& alpha_star) {
    check_inputs(kernel, targets);
    const Eigen::VectorXd d = alpha - alpha_star;
    return 0.5 * d.dot(kernel * d) + epsilon * (alpha.sum() + alpha_star.sum()) - targets.dot(d);
}

double svr_kkt_residual(const Eigen::MatrixXd& kernel, const Eigen::VectorXd& targets, double c,
                        double epsilon, const Eigen::VectorXd& alpha,
                        const Eigen::VectorXd& alpha_star) {
    check_inputs(kernel, targets);
    const Eigen::Index n = targets.size();
    const Stacked s{kernel, n};
    std::vector<double> beta(2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        beta[i] = alpha[i];
        beta[i + n] = alpha_star[i];
    }
    const auto g = gradient(s, targets, epsilon, beta);
    const auto v = max_violating_pair(s, beta, g, c);
    if (v.i < 0 || v.j < 0) return 0.0;
    return std::max(0.0, v.gmax - v.gmin);
}

}  // namespace raincorr::numerics
