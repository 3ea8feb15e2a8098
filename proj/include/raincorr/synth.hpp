#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "raincorr/ingest.hpp"

namespace raincorr {

/// Parameters of a synthetic gauge/SRE benchmark.
///
/// Gauge occurrence follows p(doy) = base + amplitude sin(2 pi doy/365.25)
/// + amplitude2 cos(4 pi doy/365.25); wet amounts are threshold + Gamma.
/// The SRE keeps every gauge wet day (amount times multiplier times
/// mean-one lognormal noise) and turns extra gauge-dry days wet so that the
/// expected wet-day count grows by `wet_inflation`; those extra days get
/// small amounts drawn uniformly from [threshold, extra_max].
struct SynthSpec {
    int stations = 20;
    int start_year = 1981;
    int years = 30;
    double wet_base = 0.3;
    double wet_amplitude = 0.2;
    double wet_amplitude2 = 0.0;
    double gamma_shape = 0.8;
    double gamma_scale = 10.0;
    /// Chance that a gauge-dry day records a trace amount below threshold.
    double drizzle_probability = 0.2;
    double wet_inflation = 1.5;
    double intensity_multiplier = 1.3;
    double noise_sigma = 0.3;
    double extra_max = 3.0;
    double missing_fraction = 0.0;
    std::uint64_t seed = 42;
    std::string station_prefix = "ST";
};

/// Throws DomainError for out-of-range parameters.
void validate(const SynthSpec& spec);

struct SynthData {
    SeriesMap gauge;
    SeriesMap sre;
};

SynthData synth_generate(const SynthSpec& spec);
void synth_write(const SynthSpec& spec, const std::filesystem::path& gauge_file,
                 const std::filesystem::path& sre_file);

/// Wet-day probability of the synthetic gauge on a given day of year.
double synth_wet_probability(const SynthSpec& spec, double doy);

}  // namespace raincorr
