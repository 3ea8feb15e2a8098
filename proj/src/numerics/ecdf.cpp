#include "raincorr/numerics/ecdf.hpp"

#include <algorithm>
#include <cmath>

#include "raincorr/errors.hpp"

namespace raincorr::numerics {

EmpiricalCdf ecdf_fit(std::span<const double> sample) {
    if (sample.empty()) throw DomainError("empirical CDF of an empty sample");
    std::vector<double> sorted(sample.begin(), sample.end());
    for (double v : sorted) {
        if (!std::isfinite(v)) throw DomainError("empirical CDF of a non-finite sample");
    }
    std::sort(sorted.begin(), sorted.end());

    EmpiricalCdf cdf;
    const auto n = sorted.size();
    cdf.n_ = n;
    const double dn = static_cast<double>(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
        // Hazen positions of ranks i+1..j+1, midpoint of the tied block.
        const double first = (static_cast<double>(i) + 0.5) / dn;
        const double last = (static_cast<double>(j) + 0.5) / dn;
        cdf.values_.push_back(sorted[i]);
        cdf.positions_.push_back(0.5 * (first + last));
        i = j + 1;
    }
    return cdf;
}

EmpiricalCdf EmpiricalCdf::from_knots(std::vector<double> values, std::vector<double> positions,
                                      std::size_t sample_size) {
    if (values.empty() || values.size() != positions.size() || sample_size < values.size())
        throw DomainError("inconsistent empirical CDF knots");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(positions[i] > 0.0 && positions[i] < 1.0)) throw DomainError("knot position outside (0,1)");
        if (i > 0 && !(values[i] > values[i - 1] && positions[i] > positions[i - 1]))
            throw DomainError("empirical CDF knots not strictly increasing");
    }
    EmpiricalCdf cdf;
    cdf.values_ = std::move(values);
    cdf.positions_ = std::move(positions);
    cdf.n_ = sample_size;
    return cdf;
}

double EmpiricalCdf::eval(double x) const {
    if (x <= values_.front()) return positions_.front();
    if (x >= values_.back()) return positions_.back();
    const auto hi = static_cast<std::size_t>(
        std::upper_bound(values_.begin(), values_.end(), x) - values_.begin());
    const auto lo = hi - 1;
    const double t = (x - values_[lo]) / (values_[hi] - values_[lo]);
    return positions_[lo] + t * (positions_[hi] - positions_[lo]);
}

double EmpiricalCdf::quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile probability outside [0,1]");
    if (p <= positions_.front()) return values_.front();
    if (p >= positions_.back()) return values_.back();
    const auto hi = static_cast<std::size_t>(
        std::upper_bound(positions_.begin(), positions_.end(), p) - positions_.begin());
    const auto lo = hi - 1;
    const double t = (p - positions_[lo]) / (positions_[hi] - positions_[lo]);
    return values_[lo] + t * (values_[hi] - values_[lo]);
}

}  // namespace raincorr::numerics
