#include "raincorr/loci.hpp"

#include "raincorr/errors.hpp"
#include "raincorr/numerics/ecdf.hpp"

namespace raincorr {

double match_threshold(std::span<const double> gauge, std::span<const double> sre, double t_gauge) {
    if (gauge.empty() || sre.empty()) throw DomainError("threshold matching needs non-empty samples");
    const auto f_gauge = numerics::ecdf_fit(gauge);
    const auto f_sre = numerics::ecdf_fit(sre);
    return f_sre.quantile(f_gauge.eval(t_gauge));
}

std::optional<double> loci_scale(std::span<const double> gauge, std::span<const double> sre,
                                 double t_gauge, double t_sre, std::size_t min_wet) {
    auto exceedance = [](std::span<const double> v, double t) {
        double sum = 0.0;
        std::size_t n = 0;
        for (double x : v) {
            if (x >= t) {
                sum += x;
                ++n;
            }
        }
        return std::pair{n, n ? sum / static_cast<double>(n) - t : 0.0};
    };
    const auto [ng, num] = exceedance(gauge, t_gauge);
    const auto [ns, den] = exceedance(sre, t_sre);
    if (ng < min_wet || ns < min_wet || !(den > 0.0) || !(num > 0.0)) return std::nullopt;
    return num / den;
}

MonthlySamples training_samples_by_month(const PairedSeries& pair) {
    MonthlySamples out;
    for (std::size_t i = 0; i < pair.train_size(); ++i) {
        const unsigned m = month_of(pair.dates()[i]);
        out.gauge[m - 1].push_back(pair.gauge()[i]);
        out.sre[m - 1].push_back(pair.sre()[i]);
    }
    return out;
}

LociModel loci_fit(const PairedSeries& pair, double t_gauge) {
    if (!(t_gauge > 0.0)) throw DomainError("gauge threshold must be positive");
    if (pair.train_size() == 0)
        throw FitError("LOCI: empty training partition for station '" + pair.station_id() + "'");

    LociModel model;
    model.t_gauge = t_gauge;

    const std::span<const double> gauge_train(pair.gauge().data(), pair.train_size());
    const std::span<const double> sre_train(pair.sre().data(), pair.train_size());
    const double pooled_t_sre = match_threshold(gauge_train, sre_train, t_gauge);
    const auto pooled_scale = loci_scale(gauge_train, sre_train, t_gauge, pooled_t_sre);

    const auto samples = training_samples_by_month(pair);
    bool need_pooled = false;
    for (unsigned m = 1; m <= 12; ++m) {
        LociMonth& month = model.months[m - 1];
        month.threshold = {m, t_gauge, pooled_t_sre};
        const auto& g = samples.gauge[m - 1];
        const auto& s = samples.sre[m - 1];
        if (!g.empty() && !s.empty()) {
            const double t_sre = match_threshold(g, s, t_gauge);
            if (const auto scale = loci_scale(g, s, t_gauge, t_sre)) {
                month.threshold.t_sre = t_sre;
                month.scale = *scale;
                continue;
            }
        }
        month.fallback = true;
        need_pooled = true;
    }

    if (pooled_scale) {
        model.annual = {{0, t_gauge, pooled_t_sre}, *pooled_scale, false};
    } else if (need_pooled) {
        throw FitError("LOCI: too few wet days for station '" + pair.station_id() + "'");
    } else {
        model.annual = {{0, t_gauge, pooled_t_sre}, 1.0, true};
    }
    for (auto& month : model.months) {
        if (month.fallback) month.scale = model.annual.scale;
    }
    return model;
}

double loci_apply(const LociModel& model, double sre_value, unsigned month) {
    const LociMonth& m = model.month(month);
    const double t_sre = m.threshold.t_sre;
    if (sre_value <= t_sre) return 0.0;
    return m.threshold.t_gauge + m.scale * (sre_value - t_sre);
}

}  // namespace raincorr
