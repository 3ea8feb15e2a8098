#include "raincorr/seasonality.hpp"

#include <cmath>
#include <numbers>

#include "raincorr/errors.hpp"
#include "raincorr/numerics/logistic.hpp"

namespace raincorr {

using namespace std::chrono;

Eigen::VectorXd fourier_row(double doy, int harmonics) {
    Eigen::VectorXd row(1 + 2 * harmonics);
    row[0] = 1.0;
    for (int h = 1; h <= harmonics; ++h) {
        const double angle = 2.0 * std::numbers::pi * h * doy / kYearLength;
        row[2 * h - 1] = std::sin(angle);
        row[2 * h] = std::cos(angle);
    }
    return row;
}

OccurrenceModel fit_occurrence(const DailySeries& series, double threshold, int harmonics) {
    if (harmonics < 1 || harmonics > 4) throw DomainError("harmonics must be in 1..4");
    if (!(threshold > 0.0)) throw DomainError("occurrence threshold must be positive");
    std::size_t valid = 0;
    for (const auto& v : series.values()) valid += v.has_value();
    if (valid < 730)
        throw FitError("occurrence model needs at least two years of data for station '" +
                       series.station_id() + "'");

    Eigen::MatrixXd design(static_cast<Eigen::Index>(valid), 1 + 2 * harmonics);
    Eigen::VectorXd response(static_cast<Eigen::Index>(valid));
    Eigen::Index r = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& v = series.values()[i];
        if (!v) continue;
        design.row(r) = fourier_row(day_of_year(series.dates()[i]), harmonics).transpose();
        response[r] = *v >= threshold ? 1.0 : 0.0;
        ++r;
    }
    OccurrenceModel model;
    model.harmonics = harmonics;
    model.threshold = threshold;
    model.coefficients = numerics::irls_logistic(design, response).coefficients;
    return model;
}

double occurrence_probability(const OccurrenceModel& model, double doy) {
    return numerics::inverse_logit(fourier_row(doy, model.harmonics).dot(model.coefficients));
}

double occurrence_curve(const OccurrenceModel& model, unsigned doy) {
    if (doy < 1 || doy > 366) throw DomainError("day of year must be in 1..366");
    return occurrence_probability(model, static_cast<double>(doy));
}

std::vector<SeasonStats> annual_stats(const DailySeries& series, double threshold,
                                      unsigned season_start_month) {
    if (season_start_month < 1 || season_start_month > 12)
        throw DomainError("season start month must be in 1..12");
    std::map<int, SeasonStats> by_season;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& v = series.values()[i];
        if (!v) continue;
        const int season = season_year(series.dates()[i], season_start_month);
        auto& s = by_season[season];
        s.season = season;
        ++s.valid_days;
        s.total_mm += *v;
        if (*v >= threshold) ++s.rainy_days;
    }
    std::vector<SeasonStats> out;
    for (auto& [season, s] : by_season) {
        const sys_days start{year{season} / month{season_start_month} / 1};
        const sys_days end{year{season + 1} / month{season_start_month} / 1};
        const auto length = static_cast<double>((end - start).count());
        const double missing = 1.0 - static_cast<double>(s.valid_days) / length;
        if (missing > kMaxSeasonMissingFraction) continue;
        if (s.rainy_days > 0) s.mean_per_rainy_day = s.total_mm / static_cast<double>(s.rainy_days);
        out.push_back(s);
    }
    return out;
}

}  // namespace raincorr
