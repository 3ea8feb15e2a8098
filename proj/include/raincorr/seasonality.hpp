#pragma once

#include <Eigen/Core>
#include <map>
#include <optional>
#include <span>

#include "raincorr/core.hpp"

namespace raincorr {

inline constexpr double kYearLength = 365.25;

/// Zero-order Markov occurrence model: logit P(wet | doy) is an intercept
/// plus H sine/cosine pairs of period 365.25 days.
struct OccurrenceModel {
    int harmonics = 2;
    double threshold = kWetThreshold;
    /// intercept, then (sin h, cos h) for h = 1..H
    Eigen::VectorXd coefficients;
};

/// Fourier design row for a (possibly fractional) day of year.
Eigen::VectorXd fourier_row(double doy, int harmonics);

/// Needs at least two years of valid days; harmonics in 1..4. Throws
/// SeparationError when the response is constant or separable.
OccurrenceModel fit_occurrence(const DailySeries& series, double threshold = kWetThreshold,
                               int harmonics = 2);

double occurrence_probability(const OccurrenceModel& model, double doy);
/// Probability for an integer day of year in 1..366.
double occurrence_curve(const OccurrenceModel& model, unsigned doy);

struct SeasonStats {
    int season = 0;
    std::size_t rainy_days = 0;
    /// All rain in the season, including sub-threshold days.
    double total_mm = 0.0;
    /// total / rainy_days; empty without rainy days.
    std::optional<double> mean_per_rainy_day;
    std::size_t valid_days = 0;
};

/// Seasons (keyed by season_year) with at most 10% of their calendar days
/// missing; rainy days are those with value >= threshold.
std::vector<SeasonStats> annual_stats(const DailySeries& series, double threshold = kWetThreshold,
                                      unsigned season_start_month = 1);

inline constexpr double kMaxSeasonMissingFraction = 0.10;

}  // namespace raincorr
