#include "raincorr/methods.hpp"

#include <string>

#include "raincorr/errors.hpp"

namespace raincorr {

std::string_view to_string(Method method) {
    switch (method) {
        case Method::Loci: return "LOCI";
        case Method::Qm: return "QM";
        case Method::Gpr: return "GPR";
        case Method::Svr: return "SVR";
        case Method::LociGpr: return "LOCI-GPR";
        case Method::QmGpr: return "QM-GPR";
    }
    return "?";
}

Method method_from_string(std::string_view name) {
    for (Method m : kAllMethods) {
        if (to_string(m) == name) return m;
    }
    throw ConfigError("unknown method '" + std::string(name) + "'");
}

CorrectionModel fit_method(Method method, const PairedSeries& pair, const FitOptions& options,
                           std::uint64_t seed) {
    GprOptions gpr = options.gpr;
    gpr.seed = seed;
    SvrOptions svr = options.svr;
    svr.seed = seed;
    switch (method) {
        case Method::Loci: return loci_fit(pair, options.t_gauge);
        case Method::Qm: return qm_fit(pair, options.t_gauge);
        case Method::Gpr: return gpr_fit(pair, gpr);
        case Method::Svr: return svr_fit(pair, svr);
        case Method::LociGpr: return hybrid_fit(pair, HybridVariant::Loci, options.t_gauge, gpr);
        case Method::QmGpr: return hybrid_fit(pair, HybridVariant::Qm, options.t_gauge, gpr);
    }
    throw ConfigError("unknown method");
}

std::vector<double> apply_model(const CorrectionModel& model, std::span<const Day> dates,
                                std::span<const double> sre) {
    if (dates.size() != sre.size()) throw DomainError("apply_model: length mismatch");
    const auto prev = previous_day_values(dates, sre);
    std::vector<double> out(sre.size());
    for (std::size_t i = 0; i < sre.size(); ++i) {
        const unsigned month = month_of(dates[i]);
        out[i] = std::visit(
            [&](const auto& m) -> double {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, LociModel>) {
                    return loci_apply(m, sre[i], month);
                } else if constexpr (std::is_same_v<T, QmModel>) {
                    return qm_apply(m, sre[i], month);
                } else if constexpr (std::is_same_v<T, HybridModel>) {
                    // A gap leaves prev = 0, whose previous month is immaterial.
                    const unsigned prev_month = i > 0 ? month_of(dates[i - 1]) : month;
                    return hybrid_predict(m, sre[i], month, prev[i], prev_month);
                } else {
                    return m.predict(sre[i], prev[i]);
                }
            },
            model);
    }
    return out;
}

}  // namespace raincorr
