#pragma once

#include <array>
#include <optional>

#include "raincorr/core.hpp"
#include "raincorr/numerics/ecdf.hpp"
#include "raincorr/numerics/gamma.hpp"

namespace raincorr {

/// Probabilities passed to the gauge quantile function are clamped to
/// [kQmProbabilityClamp, 1 - kQmProbabilityClamp].
inline constexpr double kQmProbabilityClamp = 1e-6;

struct QmMonth {
    MonthlyThreshold threshold;
    std::optional<numerics::GammaDist> gauge_dist;  ///< F_o
    std::optional<numerics::GammaDist> sre_dist;    ///< F_SRE
    /// Set when the month maps through the pooled empirical CDFs instead.
    bool fallback = false;
    friend bool operator==(const QmMonth&, const QmMonth&) = default;
};

struct QmModel {
    double t_gauge = kWetThreshold;
    std::array<QmMonth, 12> months{};
    /// Pooled (all-month) SRE threshold and wet-day empirical CDFs used by
    /// fallback months.
    double pooled_t_sre = 0.0;
    numerics::EmpiricalCdf gauge_wet;
    numerics::EmpiricalCdf sre_wet;

    const QmMonth& month(unsigned m) const { return months.at(m - 1); }
};

/// Gamma-to-gamma quantile mapping per calendar month after wet-day
/// frequency adjustment with the matched threshold. Months with fewer than
/// kMinMonthlyWetDays wet days in either source, or a failed gamma fit,
/// fall back to empirical mapping over pooled wet days.
/// Throws FitError when the training partition has no wet days at all.
QmModel qm_fit(const PairedSeries& pair, double t_gauge = kWetThreshold);

/// 0 below the SRE threshold (and for zero input); otherwise
/// max(T^x, F_o^{-1}(clamp(F_SRE(value)))).
double qm_apply(const QmModel& model, double sre_value, unsigned month);

/// Gamma mapping of one wet value between two fitted distributions.
double gamma_map(const numerics::GammaDist& from, const numerics::GammaDist& to, double value);

}  // namespace raincorr
