#include "raincorr/qm.hpp"

#include <algorithm>

#include "raincorr/errors.hpp"
#include "raincorr/loci.hpp"

namespace raincorr {

namespace {

std::vector<double> at_or_above(std::span<const double> v, double t) {
    std::vector<double> out;
    for (double x : v) {
        if (x >= t) out.push_back(x);
    }
    return out;
}

}  // namespace

double gamma_map(const numerics::GammaDist& from, const numerics::GammaDist& to, double value) {
    const double p = std::clamp(numerics::gamma_cdf(from, value), kQmProbabilityClamp,
                                1.0 - kQmProbabilityClamp);
    return numerics::gamma_quantile(to, p);
}

QmModel qm_fit(const PairedSeries& pair, double t_gauge) {
    if (!(t_gauge > 0.0)) throw DomainError("gauge threshold must be positive");
    if (pair.train_size() == 0)
        throw FitError("QM: empty training partition for station '" + pair.station_id() + "'");

    QmModel model;
    model.t_gauge = t_gauge;

    const std::span<const double> gauge_train(pair.gauge().data(), pair.train_size());
    const std::span<const double> sre_train(pair.sre().data(), pair.train_size());
    model.pooled_t_sre = match_threshold(gauge_train, sre_train, t_gauge);
    const auto gauge_wet = at_or_above(gauge_train, t_gauge);
    // Strictly positive SRE values only: a zero is never a wet day.
    auto sre_wet = at_or_above(sre_train, std::max(model.pooled_t_sre, 0.0));
    std::erase(sre_wet, 0.0);

    const auto samples = training_samples_by_month(pair);
    bool need_pooled = false;
    for (unsigned m = 1; m <= 12; ++m) {
        QmMonth& month = model.months[m - 1];
        month.threshold = {m, t_gauge, model.pooled_t_sre};
        const auto& g = samples.gauge[m - 1];
        const auto& s = samples.sre[m - 1];
        if (!g.empty() && !s.empty()) {
            const double t_sre = match_threshold(g, s, t_gauge);
            const auto gw = at_or_above(g, t_gauge);
            const auto sw = at_or_above(s, t_sre);
            if (gw.size() >= kMinMonthlyWetDays && sw.size() >= kMinMonthlyWetDays) {
                try {
                    month.gauge_dist = numerics::gamma_mle(gw).dist;
                    month.sre_dist = numerics::gamma_mle(sw).dist;
                    month.threshold.t_sre = t_sre;
                    continue;
                } catch (const FitError&) {
                    month.gauge_dist.reset();
                    month.sre_dist.reset();
                }
            }
        }
        month.fallback = true;
        need_pooled = true;
    }

    if (need_pooled && (gauge_wet.empty() || sre_wet.empty()))
        throw FitError("QM: no wet days for station '" + pair.station_id() + "'");
    if (!gauge_wet.empty() && !sre_wet.empty()) {
        model.gauge_wet = numerics::ecdf_fit(gauge_wet);
        model.sre_wet = numerics::ecdf_fit(sre_wet);
    }
    return model;
}

double qm_apply(const QmModel& model, double sre_value, unsigned month) {
    const QmMonth& m = model.month(month);
    if (sre_value <= 0.0 || sre_value < m.threshold.t_sre) return 0.0;
    double mapped;
    if (m.fallback) {
        mapped = model.gauge_wet.quantile(model.sre_wet.eval(sre_value));
    } else {
        mapped = gamma_map(*m.sre_dist, *m.gauge_dist, sre_value);
    }
    return std::max(m.threshold.t_gauge, mapped);
}

}  // namespace raincorr
