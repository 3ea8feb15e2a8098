#include "raincorr/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "raincorr/errors.hpp"
#include "raincorr/features.hpp"

namespace raincorr {

using namespace std::chrono;

void validate(const SynthSpec& spec) {
    if (spec.stations < 1 || spec.years < 1) throw DomainError("synth: need at least one station and year");
    if (!(spec.gamma_shape > 0.0 && spec.gamma_scale > 0.0)) throw DomainError("synth: gamma parameters must be positive");
    if (!(spec.wet_inflation >= 1.0)) throw DomainError("synth: wet-day inflation must be >= 1");
    if (!(spec.intensity_multiplier > 0.0)) throw DomainError("synth: intensity multiplier must be positive");
    if (!(spec.noise_sigma >= 0.0)) throw DomainError("synth: noise scale must be non-negative");
    if (!(spec.extra_max >= kWetThreshold)) throw DomainError("synth: extra_max below the wet threshold");
    if (!(spec.drizzle_probability >= 0.0 && spec.drizzle_probability <= 1.0))
        throw DomainError("synth: drizzle probability outside [0,1]");
    if (!(spec.missing_fraction >= 0.0 && spec.missing_fraction < 1.0))
        throw DomainError("synth: missing fraction outside [0,1)");
    for (int doy = 1; doy <= 366; ++doy) {
        const double p = synth_wet_probability(spec, doy);
        if (!(p > 0.0 && p < 1.0)) throw DomainError("synth: wet probability curve leaves (0,1)");
    }
}

double synth_wet_probability(const SynthSpec& spec, double doy) {
    const double w = 2.0 * std::numbers::pi * doy / 365.25;
    return spec.wet_base + spec.wet_amplitude * std::sin(w) + spec.wet_amplitude2 * std::cos(2.0 * w);
}

SynthData synth_generate(const SynthSpec& spec) {
    validate(spec);
    SynthData out;
    const sys_days first{year{spec.start_year} / January / 1};
    const sys_days end{year{spec.start_year + spec.years} / January / 1};

    for (int s = 0; s < spec.stations; ++s) {
        char id[64];
        std::snprintf(id, sizeof id, "%s%03d", spec.station_prefix.c_str(), s + 1);
        std::mt19937_64 rng(derive_seed(spec.seed, id));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::gamma_distribution<double> amount(spec.gamma_shape, spec.gamma_scale);
        std::normal_distribution<double> normal(0.0, 1.0);

        std::vector<Day> dates;
        std::vector<std::optional<double>> gauge, sre;
        for (sys_days d = first; d < end; d += days{1}) {
            const double p = synth_wet_probability(spec, day_of_year(d));
            // Draw every variate unconditionally so the stream position does
            // not depend on the distortion parameters.
            const double u_wet = unif(rng);
            const double g_amount = kWetThreshold + amount(rng);
            const double u_drizzle = unif(rng);
            const double drizzle = kWetThreshold * unif(rng);
            const double u_extra = unif(rng);
            const double extra = kWetThreshold + (spec.extra_max - kWetThreshold) * unif(rng);
            const double z = normal(rng);
            const double u_miss_g = unif(rng);
            const double u_miss_s = unif(rng);

            double g = 0.0, y = 0.0;
            if (u_wet < p) {
                g = g_amount;
                const double noise = spec.noise_sigma > 0.0
                                         ? std::exp(spec.noise_sigma * z - 0.5 * spec.noise_sigma * spec.noise_sigma)
                                         : 1.0;
                y = g * spec.intensity_multiplier * noise;
            } else {
                if (u_drizzle < spec.drizzle_probability) g = drizzle;
                const double q = std::min(1.0, (spec.wet_inflation - 1.0) * p / (1.0 - p));
                y = u_extra < q ? extra : g;
            }
            dates.push_back(d);
            gauge.push_back(u_miss_g < spec.missing_fraction ? std::nullopt : std::optional<double>(g));
            sre.push_back(u_miss_s < spec.missing_fraction ? std::nullopt : std::optional<double>(y));
        }
        out.gauge.emplace(id, DailySeries(id, dates, std::move(gauge)));
        out.sre.emplace(id, DailySeries(id, std::move(dates), std::move(sre)));
    }
    return out;
}

void synth_write(const SynthSpec& spec, const std::filesystem::path& gauge_file,
                 const std::filesystem::path& sre_file) {
    const auto data = synth_generate(spec);
    for (const auto& p : {gauge_file, sre_file}) {
        if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    }
    write_series(gauge_file, data.gauge);
    write_series(sre_file, data.sre);
}

}  // namespace raincorr
