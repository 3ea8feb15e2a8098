#include <doctest.h>

#include <random>

#include "raincorr/errors.hpp"
#include "raincorr/metrics.hpp"

using namespace raincorr;

TEST_CASE("perfect prediction") {
    const std::vector<double> o{0.0, 1.5, 7.0, 30.0, 0.2};
    const auto r = compute_metrics(o, o);
    CHECK(r.n == 5);
    CHECK(r.me == 0.0);
    CHECK(*r.corr == doctest::Approx(1.0));
    CHECK(*r.rsd == doctest::Approx(1.0));
    CHECK(r.rmse == 0.0);
    CHECK(r.mae == 0.0);
    CHECK(*r.nse == 1.0);
}

TEST_CASE("predicting the observed mean") {
    const std::vector<double> o{1.0, 2.0, 6.0, 3.0};
    const std::vector<double> p(4, 3.0);
    const auto r = compute_metrics(p, o);
    CHECK(r.me == doctest::Approx(0.0));
    CHECK_FALSE(r.corr.has_value());
    CHECK(*r.nse == doctest::Approx(0.0));
    CHECK(*r.rsd == 0.0);
}

TEST_CASE("small hand example") {
    const std::vector<double> p{2.0, 4.0}, o{1.0, 3.0};
    const auto r = compute_metrics(p, o);
    CHECK(r.me == 1.0);
    CHECK(r.rmse == 1.0);
    CHECK(r.mae == 1.0);
    CHECK(*r.corr == doctest::Approx(1.0));
    CHECK(*r.rsd == doctest::Approx(1.0));
    CHECK(*r.nse == doctest::Approx(0.0));
}

TEST_CASE("input validation") {
    const std::vector<double> a{1.0, 2.0}, b{1.0};
    CHECK_THROWS_AS(compute_metrics(a, b), DomainError);
    CHECK_THROWS_AS(compute_metrics(b, b), DomainError);
    const std::vector<double> c{1.0, 1.0};
    CHECK_FALSE(compute_metrics(a, c).nse.has_value());
}

TEST_CASE("probability of detection") {
    // Heavy events observed on four days, three of them predicted.
    const std::vector<double> o{30.0, 26.0, 39.0, 25.0, 0.0, 3.0};
    const std::vector<double> p{31.0, 27.0, 38.0, 10.0, 30.0, 3.0};
    const auto c = contingency(p, o, EventCategory::Heavy);
    CHECK(c.hits == 3);
    CHECK(c.misses == 1);
    CHECK(c.false_alarms == 1);
    CHECK(c.correct_negatives == 1);
    CHECK(*pod(c) == doctest::Approx(0.75));
    CHECK_FALSE(pod(contingency(p, o, EventCategory::Violent)).has_value());
}

TEST_CASE("acceptable mean error boundary") {
    CHECK(acceptable_me(0.39, 2.0));
    CHECK_FALSE(acceptable_me(0.4, 2.0));
    CHECK_FALSE(acceptable_me(-0.41, 2.0));
    CHECK(acceptable_me(-0.39, 2.0));
    CHECK_THROWS_AS(acceptable_me(0.1, 0.0), DomainError);
}

TEST_CASE("score invariants on random samples") {
    std::mt19937_64 rng(301);
    std::gamma_distribution<double> g(0.7, 8.0);
    std::bernoulli_distribution wet(0.4);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> p(60), o(60);
        for (std::size_t i = 0; i < p.size(); ++i) {
            o[i] = wet(rng) ? g(rng) : 0.0;
            p[i] = wet(rng) ? g(rng) : 0.0;
        }
        const auto a = compute_metrics(p, o), b = compute_metrics(o, p);
        CHECK(a.me == doctest::Approx(-b.me));
        CHECK(a.rmse == doctest::Approx(b.rmse));
        CHECK(a.mae == doctest::Approx(b.mae));
        if (a.corr && b.corr) CHECK(*a.corr == doctest::Approx(*b.corr));
        CHECK(a.mae <= a.rmse + 1e-12);
        CHECK(std::fabs(a.me) <= a.mae + 1e-12);
        if (a.corr) CHECK(std::fabs(*a.corr) <= 1.0);
        if (a.nse) {
            double mean = 0.0, var = 0.0;
            for (double v : o) mean += v;
            mean /= static_cast<double>(o.size());
            for (double v : o) var += (v - mean) * (v - mean);
            var /= static_cast<double>(o.size());
            CHECK(*a.nse == doctest::Approx(1.0 - a.rmse * a.rmse / var));
        }
        // Turning a miss into a hit never lowers POD.
        for (auto cat : {EventCategory::Light, EventCategory::Heavy}) {
            const auto before = contingency(p, o, cat);
            auto q = p;
            for (std::size_t i = 0; i < q.size(); ++i)
                if (classify_event(o[i]) == cat && classify_event(q[i]) != cat) {
                    q[i] = o[i];
                    break;
                }
            const auto after = contingency(q, o, cat);
            if (pod(before)) CHECK(*pod(after) >= *pod(before));
            CHECK(after.total() == p.size());
        }
    }
}
