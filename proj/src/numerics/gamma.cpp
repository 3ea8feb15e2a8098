#include "raincorr/numerics/gamma.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>

#include "raincorr/errors.hpp"

namespace raincorr::numerics {

GammaDist::GammaDist(double shape, double scale) : shape_(shape), scale_(scale) {
    if (!(std::isfinite(shape) && shape > 0.0 && std::isfinite(scale) && scale > 0.0))
        throw DomainError("gamma parameters must be finite and positive");
}

GammaDist gamma_moments(std::span<const double> sample) {
    if (sample.size() < 2) throw FitError("moments estimate needs at least two values");
    double mean = 0.0;
    for (double v : sample) mean += v;
    mean /= static_cast<double>(sample.size());
    double var = 0.0;
    for (double v : sample) var += (v - mean) * (v - mean);
    var /= static_cast<double>(sample.size());
    if (!(mean > 0.0) || !(var > 0.0)) throw FitError("gamma fit of a zero-variance sample");
    return GammaDist(mean * mean / var, var / mean);
}

GammaFit gamma_mle(std::span<const double> sample) {
    if (sample.size() < kGammaMinSample)
        throw FitError("gamma fit needs at least " + std::to_string(kGammaMinSample) + " values");
    double mean = 0.0, mean_log = 0.0;
    for (double v : sample) {
        if (!(v > 0.0) || !std::isfinite(v)) throw FitError("gamma fit requires positive values");
        mean += v;
        mean_log += std::log(v);
    }
    const double n = static_cast<double>(sample.size());
    mean /= n;
    mean_log /= n;

    const GammaDist start = gamma_moments(sample);
    // s > 0 by Jensen unless the sample is constant; the moments check above
    // already rejected that case.
    const double s = std::log(mean) - mean_log;
    if (!(s > 0.0)) throw FitError("gamma fit of a zero-variance sample");

    using boost::math::digamma;
    using boost::math::trigamma;
    double k = start.shape();
    constexpr int kMaxIter = 100;
    for (int it = 1; it <= kMaxIter; ++it) {
        const double f = std::log(k) - digamma(k) - s;
        const double df = 1.0 / k - trigamma(k);
        double next = k - f / df;
        // f is decreasing and convex in k; keep the iterate positive.
        if (!(next > 0.0)) next = 0.5 * k;
        const bool done = std::fabs(next - k) < 1e-10 * std::fabs(k);
        k = next;
        if (done) return {GammaDist(k, mean / k), it};
    }
    throw FitError("gamma MLE did not converge");
}

double gamma_cdf(const GammaDist& d, double x) {
    if (!(x >= 0.0)) throw DomainError("gamma CDF of a negative value");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return boost::math::gamma_p(d.shape(), x / d.scale());
}

double gamma_pdf(const GammaDist& d, double x) {
    if (x < 0.0) return 0.0;
    return boost::math::gamma_p_derivative(d.shape(), x / d.scale()) / d.scale();
}

double gamma_quantile(const GammaDist& d, double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("gamma quantile probability outside (0,1)");

    double lo = 0.0;
    double hi = d.mean() > 0.0 ? d.mean() : 1.0;
    while (gamma_cdf(d, hi) < p) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) throw DomainError("gamma quantile bracket overflow");
    }

    // Bisection to a reasonable bracket, then Newton with bisection fallback.
    for (int i = 0; i < 60 && (hi - lo) > 1e-3 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (gamma_cdf(d, mid) < p ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 200; ++i) {
        const double f = gamma_cdf(d, x) - p;
        if (f < 0.0)
            lo = x;
        else
            hi = x;
        const double dens = gamma_pdf(d, x);
        double next = dens > 0.0 ? x - f / dens : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::fabs(next - x);
        x = next;
        if (step <= 1e-12 * x || hi - lo <= 1e-15 * hi) break;
    }
    return x;
}

}  // namespace raincorr::numerics
