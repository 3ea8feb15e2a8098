#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace raincorr::numerics {

/// Empirical CDF with Hazen plotting positions (i - 0.5)/n.
///
/// Tied sample values collapse onto one knot whose probability is the
/// midpoint of the tied block's positions, so the knots are strictly
/// increasing in both value and probability. Between knots the curve is
/// linear; outside the sample range it is clamped to the extreme knots,
/// which keeps every probability inside [0.5/n, 1 - 0.5/n].
class EmpiricalCdf {
public:
    EmpiricalCdf() = default;

    const std::vector<double>& values() const noexcept { return values_; }
    const std::vector<double>& positions() const noexcept { return positions_; }
    std::size_t sample_size() const noexcept { return n_; }

    double eval(double x) const;
    /// Functional inverse of eval() on the interpolated curve. p in [0,1].
    double quantile(double p) const;

    /// Rebuilds a CDF from stored knots. Throws DomainError unless both
    /// knot sequences are strictly increasing and positions lie in (0,1).
    static EmpiricalCdf from_knots(std::vector<double> values, std::vector<double> positions,
                                   std::size_t sample_size);

private:
    friend EmpiricalCdf ecdf_fit(std::span<const double> sample);

    std::vector<double> values_;
    std::vector<double> positions_;
    std::size_t n_ = 0;
};

/// Throws DomainError on an empty or non-finite sample.
EmpiricalCdf ecdf_fit(std::span<const double> sample);

inline double ecdf_eval(const EmpiricalCdf& cdf, double x) { return cdf.eval(x); }
inline double ecdf_quantile(const EmpiricalCdf& cdf, double p) { return cdf.quantile(p); }

}  // namespace raincorr::numerics
