#pragma once

#include <array>
#include <span>

#include "raincorr/core.hpp"

namespace raincorr {

/// Smallest per-month wet-day count (in both gauge and SRE) for a monthly
/// LOCI or QM fit; sparser months use the pooled annual estimate.
inline constexpr std::size_t kMinMonthlyWetDays = 10;

/// SRE threshold whose exceedance probability matches that of `t_gauge` in
/// the gauge sample: F_sre^{-1}(F_gauge(t_gauge)) on Hazen empirical CDFs.
/// Throws DomainError on an empty sample.
double match_threshold(std::span<const double> gauge, std::span<const double> sre, double t_gauge);

struct LociMonth {
    MonthlyThreshold threshold;
    double scale = 1.0;
    /// Set when the month borrowed the pooled annual threshold and scale.
    bool fallback = false;
    friend bool operator==(const LociMonth&, const LociMonth&) = default;
};

/// Per-calendar-month thresholds and scale factors of local intensity
/// scaling, estimated on the training partition.
struct LociModel {
    double t_gauge = kWetThreshold;
    std::array<LociMonth, 12> months{};
    LociMonth annual;

    const LociMonth& month(unsigned m) const { return months.at(m - 1); }
    friend bool operator==(const LociModel&, const LociModel&) = default;
};

/// Scale factor (mean(x | x >= tx) - tx) / (mean(y | y >= ty) - ty), or
/// nullopt when either sample has fewer than `min_wet` wet days or the
/// denominator is not positive.
std::optional<double> loci_scale(std::span<const double> gauge, std::span<const double> sre,
                                 double t_gauge, double t_sre, std::size_t min_wet = kMinMonthlyWetDays);

/// Throws FitError if the training partition is empty or even the pooled
/// annual estimate is undefined.
LociModel loci_fit(const PairedSeries& pair, double t_gauge = kWetThreshold);

/// 0 when sre_value <= T^y, otherwise T^x + s (sre_value - T^y).
double loci_apply(const LociModel& model, double sre_value, unsigned month);

/// Splits the training partition into per-month (gauge, sre) samples.
struct MonthlySamples {
    std::array<std::vector<double>, 12> gauge;
    std::array<std::vector<double>, 12> sre;
};
MonthlySamples training_samples_by_month(const PairedSeries& pair);

}  // namespace raincorr
