#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "raincorr/errors.hpp"
#include "raincorr/loci.hpp"
#include "raincorr/qm.hpp"
#include "support.hpp"

using namespace raincorr;
using numerics::GammaDist;

namespace {

QmModel hand_model(double t_sre, GammaDist sre, GammaDist gauge) {
    QmModel m;
    for (unsigned k = 1; k <= 12; ++k) m.months[k - 1] = {{k, kWetThreshold, t_sre}, gauge, sre, false};
    return m;
}

/// Gauge and SRE wet-day amounts drawn from the given gammas on the same
/// wet days, with dry days at 0.
PairedSeries gamma_pair(double gauge_scale, double sre_scale, std::uint64_t seed, std::size_t n = 12000) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution wet(0.4);
    std::gamma_distribution<double> g(2.0, 1.0);
    std::vector<double> gauge(n), sre(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (wet(rng)) {
            gauge[i] = std::max(0.85, gauge_scale * g(rng));
            sre[i] = std::max(0.85, sre_scale * g(rng));
        }
    }
    return testing::paired(gauge, sre, n * 2 / 3);
}

}  // namespace

TEST_CASE("gamma mapping is scale-equivariant") {
    CHECK(gamma_map(GammaDist(2, 2), GammaDist(2, 4), 4.0) == doctest::Approx(8.0).epsilon(1e-9));
    CHECK(qm_apply(hand_model(0.85, GammaDist(2, 2), GammaDist(2, 4)), 4.0, 5) ==
          doctest::Approx(8.0).epsilon(1e-9));
}

TEST_CASE("identical distributions leave wet inputs unchanged") {
    const auto m = hand_model(0.85, GammaDist(1.3, 6), GammaDist(1.3, 6));
    for (double y : {0.85, 1.0, 3.7, 25.0, 80.0}) CHECK(qm_apply(m, y, 2) == doctest::Approx(y).epsilon(1e-6));
}

TEST_CASE("inputs below the SRE threshold become dry") {
    const auto m = hand_model(1.2, GammaDist(2, 2), GammaDist(2, 4));
    CHECK(qm_apply(m, 1.19, 1) == 0.0);
    CHECK(qm_apply(m, 0.0, 1) == 0.0);
    CHECK(qm_apply(m, 1.2, 1) >= 0.85);
}

TEST_CASE("outputs are dry or at least the gauge threshold, monotone and finite") {
    const auto m = hand_model(0.6, GammaDist(0.7, 9), GammaDist(2.5, 1));
    double prev = 0.0;
    for (double y = 0.0; y < 2000.0; y += 0.37) {
        const double c = qm_apply(m, y, 7);
        CHECK(std::isfinite(c));
        CHECK((c == 0.0 || c >= 0.85));
        CHECK(c >= prev);
        prev = c;
    }
    CHECK(std::isfinite(qm_apply(m, 1e12, 7)));
}

TEST_CASE("gamma fits recover the generating distributions") {
    const auto pair = gamma_pair(5.0, 5.0, 21, 60000);
    const auto model = qm_fit(pair);
    for (unsigned k = 1; k <= 12; ++k) {
        const auto& m = model.month(k);
        REQUIRE_FALSE(m.fallback);
        CHECK(m.gauge_dist->shape() / m.sre_dist->shape() == doctest::Approx(1.0).epsilon(0.1));
        CHECK(m.gauge_dist->mean() / m.sre_dist->mean() == doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("pooled gamma fits agree within five percent on a large sample") {
    // All training days in one month so the monthly fit sees every wet day.
    std::mt19937_64 rng(22);
    std::bernoulli_distribution wet(0.5);
    std::gamma_distribution<double> g(2.0, 5.0);
    std::vector<Day> dates;
    std::vector<std::optional<double>> gv, sv;
    for (int y = 1900; y < 2100; ++y) {
        for (unsigned d = 1; d <= 31; ++d) {
            dates.push_back(std::chrono::year{y} / std::chrono::March / d);
            gv.push_back(wet(rng) ? g(rng) + 0.85 : 0.0);
            sv.push_back(wet(rng) ? g(rng) + 0.85 : 0.0);
        }
    }
    const auto pair = align(DailySeries("P", dates, gv), DailySeries("P", dates, sv), testing::day("2090-01-01"));
    const auto m = qm_fit(pair).month(3);
    REQUIRE_FALSE(m.fallback);
    CHECK(std::abs(m.gauge_dist->shape() / m.sre_dist->shape() - 1.0) < 0.05);
    CHECK(std::abs(m.gauge_dist->scale() / m.sre_dist->scale() - 1.0) < 0.05);
}

TEST_CASE("identical inputs give identical fits") {
    auto pair = gamma_pair(5.0, 5.0, 23);
    pair = pair.with_sre(pair.gauge());
    const auto model = qm_fit(pair);
    for (unsigned k = 1; k <= 12; ++k) {
        const auto& m = model.month(k);
        REQUIRE_FALSE(m.fallback);
        CHECK(*m.gauge_dist == *m.sre_dist);
        CHECK(m.threshold.t_sre == doctest::Approx(0.85));
    }
}

TEST_CASE("a month with three wet days falls back to pooled empirical mapping") {
    auto base = gamma_pair(5.0, 6.0, 24, 4000);
    std::vector<double> gauge = base.gauge(), sre = base.sre();
    int kept = 0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (month_of(base.dates()[i]) != 1) continue;
        if (gauge[i] >= 0.85 && kept < 3) {
            ++kept;
            continue;
        }
        gauge[i] = 0.0;
    }
    const auto pair = align(testing::series("T", base.dates().front(), gauge),
                            testing::series("T", base.dates().front(), sre), base.split());
    const auto model = qm_fit(pair);
    CHECK(model.month(1).fallback);
    CHECK_FALSE(model.month(1).gauge_dist.has_value());
    CHECK_FALSE(model.month(2).fallback);
    const double c = qm_apply(model, 10.0, 1);
    CHECK(c == doctest::Approx(model.gauge_wet.quantile(model.sre_wet.eval(10.0))));
}

TEST_CASE("correction does not worsen the KS distance to the gauge gamma") {
    raincorr::SynthSpec spec;
    spec.years = 30;
    for (std::uint64_t seed : {4u, 5u}) {
        spec.seed = seed;
        const auto pair = testing::synth_pair(spec);
        const auto model = qm_fit(pair);
        const auto samples = training_samples_by_month(pair);
        for (unsigned k = 1; k <= 12; ++k) {
            const auto& m = model.month(k);
            if (m.fallback) continue;
            std::vector<double> raw, corrected;
            for (double y : samples.sre[k - 1]) {
                if (y < m.threshold.t_sre || y <= 0.0) continue;
                raw.push_back(y);
                corrected.push_back(qm_apply(model, y, k));
            }
            const auto cdf = [&](double x) { return numerics::gamma_cdf(*m.gauge_dist, x); };
            CHECK(oracles::ks_distance(corrected, cdf) <= oracles::ks_distance(raw, cdf));
        }
    }
}

TEST_CASE("no wet days is a fit error") {
    const auto dry = testing::paired(std::vector<double>(400, 0.0), std::vector<double>(400, 0.0), 300);
    CHECK_THROWS_AS(qm_fit(dry), FitError);
}
