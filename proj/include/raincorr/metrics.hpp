#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "raincorr/core.hpp"

namespace raincorr {

/// Verification scores of predictions P against observations O. Metrics
/// that are undefined for the sample (zero variance) are empty. Standard
/// deviations use the population convention (divide by n).
struct MetricReport {
    std::size_t n = 0;
    double me = 0.0;
    std::optional<double> corr;
    std::optional<double> rsd;
    double rmse = 0.0;
    double mae = 0.0;
    std::optional<double> nse;
};

/// Throws DomainError on a length mismatch or fewer than two pairs.
MetricReport compute_metrics(std::span<const double> predicted, std::span<const double> observed);

struct Contingency {
    std::size_t hits = 0;
    std::size_t misses = 0;
    std::size_t false_alarms = 0;
    std::size_t correct_negatives = 0;

    std::size_t total() const noexcept { return hits + misses + false_alarms + correct_negatives; }
    /// Events predicted in the category, hits plus false alarms.
    std::size_t predicted_events() const noexcept { return hits + false_alarms; }
    std::size_t observed_events() const noexcept { return hits + misses; }
};

Contingency contingency(std::span<const double> predicted, std::span<const double> observed,
                        EventCategory category);

/// hits / (hits + misses); empty when no event was observed.
std::optional<double> pod(const Contingency& c);

/// |me| < 0.2 * observed mean daily rainfall. Throws DomainError for a
/// non-positive mean.
bool acceptable_me(double me, double observed_mean_daily);

}  // namespace raincorr
