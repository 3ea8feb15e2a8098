#pragma once

#include <variant>

#include "raincorr/gpr.hpp"
#include "raincorr/loci.hpp"
#include "raincorr/qm.hpp"

namespace raincorr {

enum class HybridVariant { Loci, Qm };

using StatisticalModel = std::variant<LociModel, QmModel>;

/// Statistical correction (stage 1) followed by a GPR fitted on the
/// stage-1 corrected SRE (stage 2).
struct HybridModel {
    StatisticalModel stage1;
    GprModel stage2;
};

double stage1_apply(const StatisticalModel& stage1, double sre_value, unsigned month);

/// Stage 1 is fitted on the training partition and applied to the whole
/// series; stage 2 is fitted on the corrected training partition.
HybridModel hybrid_fit(const PairedSeries& pair, HybridVariant variant,
                       double t_gauge = kWetThreshold, const GprOptions& options = {});

/// Stage-1 corrected copy of the pair (all dates).
PairedSeries stage1_corrected(const PairedSeries& pair, const StatisticalModel& stage1);

/// Each feature is corrected with its own day's month, then passed to the
/// stage-2 GPR.
double hybrid_predict(const HybridModel& model, double x_t, unsigned month_t, double x_tm1,
                      unsigned month_tm1);

}  // namespace raincorr
