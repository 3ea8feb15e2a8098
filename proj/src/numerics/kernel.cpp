#include "raincorr/numerics/kernel.hpp"

#include <cmath>

#include "raincorr/errors.hpp"

namespace raincorr::numerics {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

void validate(const KernelSpec& spec) {
    std::visit(overloaded{
                   [](const Matern& m) {
                       if (!(m.sigma2 > 0.0 && m.rho > 0.0))
                           throw DomainError("Matern parameters must be positive");
                       if (m.nu != 0.5 && m.nu != 1.5 && m.nu != 2.5)
                           throw DomainError("Matern nu must be 0.5, 1.5 or 2.5");
                   },
                   [](const Rbf& r) {
                       if (!(r.v2 > 0.0 && r.lambda > 0.0))
                           throw DomainError("RBF parameters must be positive");
                   },
               },
               spec);
}

double kernel_at_distance(const KernelSpec& spec, double d) {
    return std::visit(overloaded{
                          [d](const Matern& m) {
                              const double r = d / m.rho;
                              if (m.nu == 0.5) return m.sigma2 * std::exp(-r);
                              if (m.nu == 1.5) {
                                  const double a = std::sqrt(3.0) * r;
                                  return m.sigma2 * (1.0 + a) * std::exp(-a);
                              }
                              const double a = std::sqrt(5.0) * r;
                              return m.sigma2 * (1.0 + a + a * a / 3.0) * std::exp(-a);
                          },
                          [d](const Rbf& k) {
                              return k.v2 * std::exp(-d * d / (2.0 * k.lambda * k.lambda));
                          },
                      },
                      spec);
}

double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y) {
    return kernel_at_distance(spec, (x - y).norm());
}

Eigen::MatrixXd gram(const KernelSpec& spec, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd k(a.rows(), b.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < b.rows(); ++j)
            k(i, j) = kernel_at_distance(spec, (a.row(i) - b.row(j)).norm());
    return k;
}

Eigen::MatrixXd gram(const KernelSpec& spec, const Eigen::MatrixXd& a) {
    const Eigen::Index n = a.rows();
    Eigen::MatrixXd k(n, n);
    const double diag = kernel_variance(spec);
    for (Eigen::Index i = 0; i < n; ++i) {
        k(i, i) = diag;
        for (Eigen::Index j = 0; j < i; ++j) {
            const double v = kernel_at_distance(spec, (a.row(i) - a.row(j)).norm());
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

double kernel_variance(const KernelSpec& spec) { return kernel_at_distance(spec, 0.0); }

}  // namespace raincorr::numerics
