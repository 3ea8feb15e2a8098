#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "raincorr/gpr.hpp"
#include "raincorr/hybrid.hpp"
#include "raincorr/loci.hpp"
#include "raincorr/qm.hpp"
#include "raincorr/svr.hpp"

namespace raincorr {

enum class Method { Loci, Qm, Gpr, Svr, LociGpr, QmGpr };

inline constexpr Method kAllMethods[] = {Method::Loci, Method::Qm,      Method::Gpr,
                                         Method::Svr,  Method::LociGpr, Method::QmGpr};

/// "LOCI", "QM", "GPR", "SVR", "LOCI-GPR", "QM-GPR"
std::string_view to_string(Method method);
Method method_from_string(std::string_view name);

using CorrectionModel = std::variant<LociModel, QmModel, GprModel, SvrModel, HybridModel>;

struct FitOptions {
    double t_gauge = kWetThreshold;
    GprOptions gpr;
    SvrOptions svr;
};

/// Fits `method` on the training partition of `pair`. `seed` drives every
/// random subsample of the ML methods.
CorrectionModel fit_method(Method method, const PairedSeries& pair, const FitOptions& options,
                           std::uint64_t seed);

/// Corrects a dated SRE series; previous-day features come from the same
/// series (0 after a gap).
std::vector<double> apply_model(const CorrectionModel& model, std::span<const Day> dates,
                                std::span<const double> sre);

}  // namespace raincorr
