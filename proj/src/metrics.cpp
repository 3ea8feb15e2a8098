#include "raincorr/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "raincorr/errors.hpp"

namespace raincorr {

MetricReport compute_metrics(std::span<const double> predicted, std::span<const double> observed) {
    if (predicted.size() != observed.size()) throw DomainError("metrics: length mismatch");
    if (predicted.size() < 2) throw DomainError("metrics: need at least two pairs");

    MetricReport r;
    r.n = predicted.size();
    const double n = static_cast<double>(r.n);

    double p_mean = 0.0, o_mean = 0.0, err = 0.0, abs_err = 0.0, sq_err = 0.0;
    for (std::size_t i = 0; i < r.n; ++i) {
        p_mean += predicted[i];
        o_mean += observed[i];
        const double d = predicted[i] - observed[i];
        err += d;
        abs_err += std::fabs(d);
        sq_err += d * d;
    }
    p_mean /= n;
    o_mean /= n;

    double spp = 0.0, soo = 0.0, spo = 0.0;
    for (std::size_t i = 0; i < r.n; ++i) {
        const double dp = predicted[i] - p_mean;
        const double dobs = observed[i] - o_mean;
        spp += dp * dp;
        soo += dobs * dobs;
        spo += dp * dobs;
    }

    r.me = err / n;
    r.rmse = std::sqrt(sq_err / n);
    r.mae = abs_err / n;
    if (spp > 0.0 && soo > 0.0) {
        r.corr = std::clamp(spo / std::sqrt(spp * soo), -1.0, 1.0);
        r.rsd = std::sqrt(spp / n) / std::sqrt(soo / n);
    }
    if (soo > 0.0) r.nse = 1.0 - sq_err / soo;
    return r;
}

Contingency contingency(std::span<const double> predicted, std::span<const double> observed,
                        EventCategory category) {
    if (predicted.size() != observed.size()) throw DomainError("contingency: length mismatch");
    Contingency c;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const bool p = classify_event(predicted[i]) == category;
        const bool o = classify_event(observed[i]) == category;
        if (p && o) ++c.hits;
        else if (o) ++c.misses;
        else if (p) ++c.false_alarms;
        else ++c.correct_negatives;
    }
    return c;
}

std::optional<double> pod(const Contingency& c) {
    const auto denom = c.hits + c.misses;
    if (denom == 0) return std::nullopt;
    return static_cast<double>(c.hits) / static_cast<double>(denom);
}

bool acceptable_me(double me, double observed_mean_daily) {
    if (!(observed_mean_daily > 0.0)) throw DomainError("acceptable_me: observed mean must be positive");
    return std::fabs(me) < 0.2 * observed_mean_daily;
}

}  // namespace raincorr
