#pragma once

#include <cstddef>
#include <span>

namespace raincorr::numerics {

/// Gamma distribution in the shape/scale parameterisation.
class GammaDist {
public:
    /// Throws DomainError unless both parameters are finite and positive.
    GammaDist(double shape, double scale);

    double shape() const noexcept { return shape_; }
    double scale() const noexcept { return scale_; }
    double mean() const noexcept { return shape_ * scale_; }

    friend bool operator==(const GammaDist&, const GammaDist&) = default;

private:
    double shape_;
    double scale_;
};

/// Smallest sample accepted by gamma_mle.
inline constexpr std::size_t kGammaMinSample = 10;

struct GammaFit {
    GammaDist dist;
    int iterations = 0;
};

/// Method-of-moments estimate: shape = m^2/v, scale = v/m (population v).
GammaDist gamma_moments(std::span<const double> sample);

/// Maximum-likelihood fit by Newton iteration on log(k) - digamma(k) = s,
/// started from the moments estimate. Throws FitError for samples smaller
/// than kGammaMinSample, with non-positive values, or with zero variance.
GammaFit gamma_mle(std::span<const double> sample);

/// Regularised lower incomplete gamma P(shape, x/scale). x >= 0.
double gamma_cdf(const GammaDist& d, double x);
double gamma_pdf(const GammaDist& d, double x);

/// Inverse of gamma_cdf for p in (0,1); bracketing bisection refined by
/// Newton until the step is below 1e-12 relative.
double gamma_quantile(const GammaDist& d, double p);

}  // namespace raincorr::numerics
