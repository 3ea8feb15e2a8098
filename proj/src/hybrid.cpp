#include "raincorr/hybrid.hpp"

namespace raincorr {

double stage1_apply(const StatisticalModel& stage1, double sre_value, unsigned month) {
    if (const auto* loci = std::get_if<LociModel>(&stage1)) return loci_apply(*loci, sre_value, month);
    return qm_apply(std::get<QmModel>(stage1), sre_value, month);
}

PairedSeries stage1_corrected(const PairedSeries& pair, const StatisticalModel& stage1) {
    std::vector<double> corrected(pair.size());
    for (std::size_t i = 0; i < pair.size(); ++i)
        corrected[i] = stage1_apply(stage1, pair.sre()[i], month_of(pair.dates()[i]));
    return pair.with_sre(std::move(corrected));
}

HybridModel hybrid_fit(const PairedSeries& pair, HybridVariant variant, double t_gauge,
                       const GprOptions& options) {
    StatisticalModel stage1 = variant == HybridVariant::Loci
                                  ? StatisticalModel{loci_fit(pair, t_gauge)}
                                  : StatisticalModel{qm_fit(pair, t_gauge)};
    GprModel stage2 = gpr_fit(stage1_corrected(pair, stage1), options);
    return {std::move(stage1), std::move(stage2)};
}

double hybrid_predict(const HybridModel& model, double x_t, unsigned month_t, double x_tm1,
                      unsigned month_tm1) {
    const double c_t = stage1_apply(model.stage1, x_t, month_t);
    const double c_tm1 = stage1_apply(model.stage1, x_tm1, month_tm1);
    return gpr_predict(model.stage2, c_t, c_tm1);
}

}  // namespace raincorr
