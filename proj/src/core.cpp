#include "raincorr/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "raincorr/errors.hpp"

namespace raincorr {

using namespace std::chrono;

namespace {

int parse_int(std::string_view text, std::string_view whole) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw DomainError("invalid date '" + std::string(whole) + "'");
    return value;
}

}  // namespace

Day parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        throw DomainError("invalid date '" + std::string(text) + "', expected YYYY-MM-DD");
    const int y = parse_int(text.substr(0, 4), text);
    const int m = parse_int(text.substr(5, 2), text);
    const int d = parse_int(text.substr(8, 2), text);
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) throw DomainError("invalid date '" + std::string(text) + "'");
    return sys_days{ymd};
}

std::string format_date(Day d) {
    const year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

unsigned month_of(Day d) { return static_cast<unsigned>(year_month_day{d}.month()); }

unsigned day_of_year(Day d) {
    const year_month_day ymd{d};
    const sys_days jan1{ymd.year() / January / 1};
    return static_cast<unsigned>((d - jan1).count()) + 1;
}

int season_year(Day d, unsigned season_start_month) {
    if (season_start_month < 1 || season_start_month > 12)
        throw DomainError("season start month must be in 1..12");
    const year_month_day ymd{d};
    const int y = static_cast<int>(ymd.year());
    return static_cast<unsigned>(ymd.month()) >= season_start_month ? y : y - 1;
}

// ---------------------------------------------------------------------------

DailySeries::DailySeries(std::string station_id, std::vector<Day> dates,
                         std::vector<std::optional<double>> values)
    : station_id_(std::move(station_id)), dates_(std::move(dates)), values_(std::move(values)) {
    if (dates_.size() != values_.size())
        throw DomainError("series '" + station_id_ + "': date and value counts differ");
    for (std::size_t i = 1; i < dates_.size(); ++i) {
        if (dates_[i] <= dates_[i - 1])
            throw DomainError("series '" + station_id_ + "': dates not strictly increasing at " +
                              format_date(dates_[i]));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] && (!std::isfinite(*values_[i]) || *values_[i] < 0.0))
            throw DomainError("series '" + station_id_ + "': invalid rainfall value on " +
                              format_date(dates_[i]));
    }
}

std::optional<double> DailySeries::at(Day d) const {
    auto it = std::lower_bound(dates_.begin(), dates_.end(), d);
    if (it == dates_.end() || *it != d) return std::nullopt;
    return values_[static_cast<std::size_t>(it - dates_.begin())];
}

PairedSeries::PairedSeries(std::string station_id, std::vector<Day> dates, std::vector<double> gauge,
                           std::vector<double> sre, Day split)
    : station_id_(std::move(station_id)),
      dates_(std::move(dates)),
      gauge_(std::move(gauge)),
      sre_(std::move(sre)),
      split_(split) {
    if (gauge_.size() != dates_.size() || sre_.size() != dates_.size())
        throw DomainError("paired series '" + station_id_ + "': column lengths differ");
    for (std::size_t i = 1; i < dates_.size(); ++i) {
        if (dates_[i] <= dates_[i - 1])
            throw DomainError("paired series '" + station_id_ + "': dates not strictly increasing");
    }
    for (std::size_t i = 0; i < dates_.size(); ++i) {
        if (!(gauge_[i] >= 0.0) || !(sre_[i] >= 0.0) || !std::isfinite(gauge_[i]) ||
            !std::isfinite(sre_[i]))
            throw DomainError("paired series '" + station_id_ + "': invalid value on " +
                              format_date(dates_[i]));
    }
    train_size_ = static_cast<std::size_t>(
        std::lower_bound(dates_.begin(), dates_.end(), split_) - dates_.begin());
}

DailySeries PairedSeries::gauge_series() const {
    return DailySeries(station_id_, dates_, {gauge_.begin(), gauge_.end()});
}

DailySeries PairedSeries::sre_series() const {
    return DailySeries(station_id_, dates_, {sre_.begin(), sre_.end()});
}

PairedSeries PairedSeries::with_sre(std::vector<double> sre) const {
    return PairedSeries(station_id_, dates_, gauge_, std::move(sre), split_);
}

PairedSeries PairedSeries::with_split(Day split) const {
    return PairedSeries(station_id_, dates_, gauge_, sre_, split);
}

PairedSeries align(const DailySeries& gauge, const DailySeries& sre, Day split) {
    if (gauge.empty() || sre.empty())
        throw AlignmentError("cannot align empty series for station '" + gauge.station_id() + "'");
    std::vector<Day> dates;
    std::vector<double> g, s;
    const auto& gd = gauge.dates();
    const auto& sd = sre.dates();
    std::size_t i = 0, j = 0;
    while (i < gd.size() && j < sd.size()) {
        if (gd[i] < sd[j]) {
            ++i;
        } else if (sd[j] < gd[i]) {
            ++j;
        } else {
            const auto& gv = gauge.values()[i];
            const auto& sv = sre.values()[j];
            if (gv && sv) {
                dates.push_back(gd[i]);
                g.push_back(*gv);
                s.push_back(*sv);
            }
            ++i;
            ++j;
        }
    }
    if (dates.empty())
        throw AlignmentError("no concurrent valid days for station '" + gauge.station_id() + "'");
    return PairedSeries(gauge.station_id(), std::move(dates), std::move(g), std::move(s), split);
}

std::vector<double> previous_day_values(std::span<const Day> dates, std::span<const double> values) {
    std::vector<double> prev(values.size(), 0.0);
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (dates[i] - dates[i - 1] == days{1}) prev[i] = values[i - 1];
    }
    return prev;
}

// ---------------------------------------------------------------------------

std::vector<IntensityClass> default_intensity_classes() {
    const double bounds[] = {kWetThreshold, 5.0, 20.0, 40.0};
    return classes_from_bounds(bounds);
}

std::vector<IntensityClass> classes_from_bounds(std::span<const double> bounds) {
    if (bounds.empty()) throw DomainError("intensity classes need at least one bound");
    std::vector<IntensityClass> classes;
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        IntensityClass c{bounds[i], std::nullopt};
        if (i + 1 < bounds.size()) c.upper = bounds[i + 1];
        classes.push_back(c);
    }
    validate_partition(classes);
    return classes;
}

void validate_partition(std::span<const IntensityClass> classes) {
    if (classes.empty()) throw DomainError("empty intensity class partition");
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& c = classes[i];
        if (!std::isfinite(c.lower) || c.lower <= 0.0)
            throw DomainError("intensity class lower bound must be positive");
        const bool last = i + 1 == classes.size();
        if (last != !c.upper.has_value())
            throw DomainError("only the last intensity class may be unbounded");
        if (!last) {
            if (!(*c.upper > c.lower)) throw DomainError("empty intensity class");
            if (classes[i + 1].lower != *c.upper)
                throw DomainError("intensity classes leave a gap or overlap");
        }
    }
}

std::optional<std::size_t> find_class(std::span<const IntensityClass> classes, double value) {
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i].contains(value)) return i;
    }
    return std::nullopt;
}

EventCategory classify_event(double value) {
    if (!(value >= 0.0)) throw DomainError("rainfall must be non-negative");
    if (value < kWetThreshold) return EventCategory::Dry;
    if (value < 25.0) return EventCategory::Light;
    if (value < 40.0) return EventCategory::Heavy;
    return EventCategory::Violent;
}

std::string_view to_string(EventCategory category) {
    switch (category) {
        case EventCategory::Dry: return "dry";
        case EventCategory::Light: return "light";
        case EventCategory::Heavy: return "heavy";
        case EventCategory::Violent: return "violent";
    }
    return "?";
}

EventCategory event_category_from_string(std::string_view name) {
    for (auto c : {EventCategory::Dry, EventCategory::Light, EventCategory::Heavy,
                   EventCategory::Violent}) {
        if (to_string(c) == name) return c;
    }
    throw DomainError("unknown event category '" + std::string(name) + "'");
}

}  // namespace raincorr
