#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace raincorr {

using Day = std::chrono::sys_days;

/// Rain-day threshold in mm/day shared by every method and by the event
/// categories.
inline constexpr double kWetThreshold = 0.85;

/// Default train/test boundary: training strictly before this date.
inline constexpr Day kDefaultSplit = std::chrono::year{2001} / std::chrono::January / 1;

/// Parses YYYY-MM-DD. Throws DomainError on anything else.
Day parse_date(std::string_view text);
std::string format_date(Day day);

unsigned month_of(Day day);
/// 1-based ordinal day within the calendar year (1..366).
unsigned day_of_year(Day day);

/// Label of the rainfall season containing `day` when seasons start on the
/// first of `season_start_month`. Days before the start month belong to the
/// season that began in the previous calendar year.
int season_year(Day day, unsigned season_start_month);

/// Date-indexed daily rainfall with explicit missing values.
class DailySeries {
public:
    DailySeries() = default;
    /// Throws DomainError if dates are not strictly increasing, sizes differ,
    /// or a present value is negative or non-finite.
    DailySeries(std::string station_id, std::vector<Day> dates,
                std::vector<std::optional<double>> values);

    const std::string& station_id() const noexcept { return station_id_; }
    const std::vector<Day>& dates() const noexcept { return dates_; }
    const std::vector<std::optional<double>>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return dates_.size(); }
    bool empty() const noexcept { return dates_.empty(); }

    /// Value on `day`, or nullopt when the date is absent or missing.
    std::optional<double> at(Day day) const;

    friend bool operator==(const DailySeries&, const DailySeries&) = default;

private:
    std::string station_id_;
    std::vector<Day> dates_;
    std::vector<std::optional<double>> values_;
};

/// Gauge and SRE values on their common valid dates, with the train/test
/// boundary. No missing values remain.
class PairedSeries {
public:
    PairedSeries() = default;
    PairedSeries(std::string station_id, std::vector<Day> dates, std::vector<double> gauge,
                 std::vector<double> sre, Day split = kDefaultSplit);

    const std::string& station_id() const noexcept { return station_id_; }
    const std::vector<Day>& dates() const noexcept { return dates_; }
    const std::vector<double>& gauge() const noexcept { return gauge_; }
    const std::vector<double>& sre() const noexcept { return sre_; }
    Day split() const noexcept { return split_; }
    std::size_t size() const noexcept { return dates_.size(); }

    /// Number of leading rows dated before the split (the training rows).
    std::size_t train_size() const noexcept { return train_size_; }
    std::size_t test_size() const noexcept { return dates_.size() - train_size_; }
    bool has_valid_partition() const noexcept { return train_size() > 0 && test_size() > 0; }

    DailySeries gauge_series() const;
    DailySeries sre_series() const;

    /// Same dates and gauge values with the SRE column replaced.
    PairedSeries with_sre(std::vector<double> sre) const;
    PairedSeries with_split(Day split) const;

    friend bool operator==(const PairedSeries&, const PairedSeries&) = default;

private:
    std::string station_id_;
    std::vector<Day> dates_;
    std::vector<double> gauge_;
    std::vector<double> sre_;
    Day split_ = kDefaultSplit;
    std::size_t train_size_ = 0;
};

/// Pairwise deletion onto the dates where both series hold a value.
/// Throws AlignmentError when that intersection is empty.
PairedSeries align(const DailySeries& gauge, const DailySeries& sre, Day split = kDefaultSplit);

/// Previous-day value for each row; 0 where the preceding calendar day is
/// not the previous row (first row, or a gap).
std::vector<double> previous_day_values(std::span<const Day> dates, std::span<const double> values);

struct MonthlyThreshold {
    unsigned month = 1;
    double t_gauge = kWetThreshold;
    double t_sre = 0.0;
    friend bool operator==(const MonthlyThreshold&, const MonthlyThreshold&) = default;
};

/// Half-open rainfall intensity range [lower, upper); no upper bound when
/// `upper` is empty.
struct IntensityClass {
    double lower = kWetThreshold;
    std::optional<double> upper;

    bool contains(double value) const noexcept {
        return value >= lower && (!upper || value < *upper);
    }
    friend bool operator==(const IntensityClass&, const IntensityClass&) = default;
};

/// [0.85,5), [5,20), [20,40), [40,inf)
std::vector<IntensityClass> default_intensity_classes();

/// Builds classes from ascending boundaries; the last class is unbounded.
std::vector<IntensityClass> classes_from_bounds(std::span<const double> bounds);

/// Throws DomainError unless the classes tile [first lower, inf) without gaps.
void validate_partition(std::span<const IntensityClass> classes);

std::optional<std::size_t> find_class(std::span<const IntensityClass> classes, double value);

enum class EventCategory { Dry, Light, Heavy, Violent };

/// Dry < 0.85 <= Light < 25 <= Heavy < 40 <= Violent. Throws DomainError
/// for negative input.
EventCategory classify_event(double value);

std::string_view to_string(EventCategory category);
EventCategory event_category_from_string(std::string_view name);

}  // namespace raincorr
