#include <doctest.h>

#include <random>

#include "raincorr/hybrid.hpp"
#include "support.hpp"

using namespace raincorr;

namespace {

PairedSeries small_pair(std::uint64_t seed) {
    SynthSpec spec;
    spec.years = 14;
    spec.start_year = 1990;
    spec.seed = seed;
    return testing::synth_pair(spec);
}

GprOptions small_gpr() {
    GprOptions opt;
    opt.max_rows = 250;
    opt.selection_rows = 150;
    opt.seed = 9;
    return opt;
}

}  // namespace

TEST_CASE("hybrid prediction is the composition of its stages") {
    const auto pair = small_pair(21);
    for (auto variant : {HybridVariant::Loci, HybridVariant::Qm}) {
        const auto h = hybrid_fit(pair, variant, kWetThreshold, small_gpr());
        for (double x = 0.0; x < 90.0; x += 0.73) {
            for (unsigned m : {1u, 6u, 12u}) {
                const double c_t = stage1_apply(h.stage1, x, m);
                const double c_p = stage1_apply(h.stage1, 0.5 * x, m == 1 ? 12u : m - 1);
                CHECK(hybrid_predict(h, x, m, 0.5 * x, m == 1 ? 12u : m - 1) == gpr_predict(h.stage2, c_t, c_p));
            }
        }
        // Dry chain: stage 1 maps to zero and stage 2 passes zero through.
        CHECK(hybrid_predict(h, 0.0, 3, 0.0, 3) == 0.0);
        CHECK(hybrid_predict(h, 0.3, 3, 5.0, 3) == 0.0);
    }
}

TEST_CASE("stage 1 is the plain statistical method and stage 2 is GPR on its output") {
    const auto pair = small_pair(22);
    const auto loci = loci_fit(pair);
    const auto h = hybrid_fit(pair, HybridVariant::Loci, kWetThreshold, small_gpr());
    REQUIRE(std::holds_alternative<LociModel>(h.stage1));
    CHECK(std::get<LociModel>(h.stage1) == loci);
    const auto corrected = stage1_corrected(pair, h.stage1);
    for (std::size_t i = 0; i < pair.size(); ++i)
        CHECK(corrected.sre()[i] == loci_apply(loci, pair.sre()[i], month_of(pair.dates()[i])));
    CHECK(corrected.gauge() == pair.gauge());

    const auto stage2 = gpr_fit(corrected, small_gpr());
    for (double x = 0.9; x < 60; x += 1.1) CHECK(gpr_predict(stage2, x, 1.0) == gpr_predict(h.stage2, x, 1.0));

    const auto qm = qm_fit(pair);
    const auto hq = hybrid_fit(pair, HybridVariant::Qm, kWetThreshold, small_gpr());
    for (double x = 0.0; x < 60; x += 0.9)
        CHECK(stage1_apply(hq.stage1, x, 7) == qm_apply(qm, x, 7));
}

TEST_CASE("stage-2 pass-through classes return the stage-1 value") {
    const auto pair = small_pair(23);
    auto opt = small_gpr();
    opt.min_rows = 5;
    const auto h = hybrid_fit(pair, HybridVariant::Loci, kWetThreshold, opt);
    for (std::size_t k = 0; k < h.stage2.classes().size(); ++k) {
        if (!h.stage2.classes()[k].is_passthrough()) continue;
        const auto& cls = h.stage2.classes()[k].intensity_class();
        const double target = cls.lower + 0.5;
        // Find an SRE value whose stage-1 output falls in the pass-through class.
        for (double x = 0.9; x < 400; x += 0.25) {
            const double c = stage1_apply(h.stage1, x, 5);
            if (cls.contains(c) && c >= target) {
                CHECK(hybrid_predict(h, x, 5, 0.0, 4) == c);
                break;
            }
        }
    }
}

TEST_CASE("an identity stage 1 reduces the hybrid to plain GPR on wet days") {
    const auto pair = small_pair(24);
    LociModel identity;
    for (auto& m : identity.months) m.threshold = {1, kWetThreshold, kWetThreshold};
    identity.annual.threshold = {1, kWetThreshold, kWetThreshold};
    for (unsigned m = 1; m <= 12; ++m) identity.months[m - 1].threshold.month = m;
    const auto gpr = gpr_fit(pair, small_gpr());
    const HybridModel h{identity, gpr};
    for (double x = 0.86; x < 150; x *= 1.07)
        CHECK(hybrid_predict(h, x, 8, 2.0, 8) == doctest::Approx(gpr_predict(gpr, x, 2.0)).epsilon(1e-9));
    CHECK(hybrid_predict(h, 0.5, 8, 2.0, 8) == 0.0);
}

TEST_CASE("wet-day frequency follows stage 1 when stage-2 targets stay wet") {
    std::vector<double> sre(4000), gauge(4000);
    std::mt19937_64 rng(25);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = 0; i < sre.size(); ++i) {
        const bool wet = u(rng) < 0.35;
        sre[i] = wet ? 0.85 + 30.0 * u(rng) * u(rng) : 0.4 * u(rng);
        gauge[i] = 10.0 + 1.5 * sre[i];
    }
    const auto pair = testing::paired(gauge, sre, 3000);
    const auto h = hybrid_fit(pair, HybridVariant::Loci, kWetThreshold, small_gpr());
    const auto prev = previous_day_values(pair.dates(), pair.sre());
    std::size_t wet_stage1 = 0, wet_hybrid = 0;
    for (std::size_t i = 0; i < pair.size(); ++i) {
        const unsigned m = month_of(pair.dates()[i]);
        const unsigned mp = i ? month_of(pair.dates()[i - 1]) : m;
        wet_stage1 += stage1_apply(h.stage1, pair.sre()[i], m) >= kWetThreshold;
        wet_hybrid += hybrid_predict(h, pair.sre()[i], m, prev[i], mp) >= kWetThreshold;
    }
    CHECK(wet_stage1 > 1000);
    CHECK(wet_hybrid == wet_stage1);
}
