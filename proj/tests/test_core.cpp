#include <doctest.h>

#include <cmath>
#include <random>

#include "raincorr/core.hpp"
#include "raincorr/errors.hpp"
#include "support.hpp"

using namespace raincorr;
using testing::day;

TEST_CASE("dates parse, format and decompose") {
    const Day d = day("2000-02-29");
    CHECK(format_date(d) == "2000-02-29");
    CHECK(month_of(d) == 2);
    CHECK(day_of_year(d) == 60);
    CHECK(day_of_year(day("2000-12-31")) == 366);
    CHECK(day_of_year(day("2001-12-31")) == 365);
    CHECK_THROWS_AS(parse_date("2001-02-29"), DomainError);
    CHECK_THROWS_AS(parse_date("2001-1-05"), DomainError);
    CHECK_THROWS_AS(parse_date("20010105"), DomainError);
    CHECK_THROWS_AS(parse_date(""), DomainError);
}

TEST_CASE("season labels follow the start month") {
    CHECK(season_year(day("2001-09-15"), 8) == 2001);
    CHECK(season_year(day("2002-03-15"), 8) == 2001);
    CHECK(season_year(day("2002-03-15"), 1) == 2002);
    CHECK(season_year(day("2002-08-01"), 8) == 2002);
    CHECK(season_year(day("2002-07-31"), 8) == 2001);
}

TEST_CASE("season labels split a date range into contiguous blocks of at most 366 days") {
    for (unsigned start : {1u, 4u, 8u, 11u}) {
        const auto dates = testing::dates_from(day("1995-03-10"), 3000);
        int label = season_year(dates.front(), start);
        std::size_t run = 0;
        std::vector<int> seen{label};
        for (const auto d : dates) {
            const int s = season_year(d, start);
            if (s != label) {
                CHECK(s == label + 1);
                CHECK(run <= 366);
                label = s;
                run = 0;
                seen.push_back(s);
            }
            ++run;
        }
        CHECK(run <= 366);
    }
}

TEST_CASE("daily series enforces its invariants") {
    const auto d = testing::dates_from(day("2001-01-01"), 3);
    CHECK_NOTHROW(DailySeries("A", d, {1.0, std::nullopt, 0.0}));
    CHECK_THROWS_AS(DailySeries("A", {d[1], d[0]}, {1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(DailySeries("A", {d[0], d[0]}, {1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(DailySeries("A", d, {1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(DailySeries("A", d, {1.0, -0.5, 2.0}), DomainError);
    CHECK_THROWS_AS(DailySeries("A", d, {1.0, NAN, 2.0}), DomainError);

    const DailySeries s("A", d, {1.0, std::nullopt, 3.0});
    CHECK(s.at(d[0]) == 1.0);
    CHECK_FALSE(s.at(d[1]).has_value());
    CHECK_FALSE(s.at(day("1999-01-01")).has_value());
}

TEST_CASE("align keeps dates where both series hold a value") {
    const Day d1 = day("2000-12-30"), d2 = day("2000-12-31"), d3 = day("2001-01-01");

    SUBCASE("set intersection") {
        const DailySeries g("S", {d1, d2, d3}, {1.0, 2.0, 3.0});
        const DailySeries s("S", {d2, d3}, {5.0, 6.0});
        const auto p = align(g, s);
        CHECK(p.dates() == std::vector<Day>{d2, d3});
        CHECK(p.gauge() == std::vector<double>{2.0, 3.0});
        CHECK(p.sre() == std::vector<double>{5.0, 6.0});
    }
    SUBCASE("identical complete series") {
        const DailySeries g("S", {d1, d2, d3}, {1.0, 2.0, 3.0});
        const auto p = align(g, g);
        CHECK(p.gauge_series() == g);
        CHECK(p.sre_series() == g);
    }
    SUBCASE("pairwise deletion") {
        const DailySeries g("S", {d1, d2, d3}, {1.0, std::nullopt, 3.0});
        const DailySeries s("S", {d1, d2, d3}, {4.0, 5.0, std::nullopt});
        const auto p = align(g, s);
        CHECK(p.dates() == std::vector<Day>{d1});
    }
    SUBCASE("empty intersection") {
        const DailySeries g("S", {d1}, {1.0});
        const DailySeries s("S", {d2}, {1.0});
        CHECK_THROWS_AS(align(g, s), AlignmentError);
    }
    SUBCASE("partition at the split date") {
        const DailySeries g("S", {d1, d2, d3}, {1.0, 2.0, 3.0});
        const auto p = align(g, g);
        CHECK(p.train_size() == 2);
        CHECK(p.test_size() == 1);
        CHECK(p.has_valid_partition());
        CHECK_FALSE(p.with_split(d1).has_valid_partition());
    }
}

TEST_CASE("align is idempotent on random series with gaps") {
    std::mt19937_64 rng(3);
    std::bernoulli_distribution missing(0.2);
    std::uniform_real_distribution<double> amount(0.0, 20.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto dates = testing::dates_from(day("2000-06-01"), 400);
        std::vector<std::optional<double>> gv, sv;
        for (std::size_t i = 0; i < dates.size(); ++i) {
            gv.push_back(missing(rng) ? std::nullopt : std::optional<double>(amount(rng)));
            sv.push_back(missing(rng) ? std::nullopt : std::optional<double>(amount(rng)));
        }
        const auto once = align(DailySeries("X", dates, gv), DailySeries("X", dates, sv));
        const auto twice = align(once.gauge_series(), once.sre_series());
        CHECK(once == twice);
    }
}

TEST_CASE("previous-day values restart after a gap") {
    const std::vector<Day> dates{day("2001-01-01"), day("2001-01-02"), day("2001-01-04"), day("2001-01-05")};
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    CHECK(previous_day_values(dates, v) == std::vector<double>{0.0, 1.0, 0.0, 3.0});
}

TEST_CASE("event categories") {
    CHECK(classify_event(0.5) == EventCategory::Dry);
    CHECK(classify_event(0.0) == EventCategory::Dry);
    CHECK(classify_event(0.85) == EventCategory::Light);
    CHECK(classify_event(30.0) == EventCategory::Heavy);
    CHECK(classify_event(40.0) == EventCategory::Violent);
    CHECK(classify_event(std::nextafter(25.0, 0.0)) == EventCategory::Light);
    CHECK(classify_event(25.0) == EventCategory::Heavy);
    CHECK(classify_event(std::nextafter(40.0, 0.0)) == EventCategory::Heavy);
    CHECK(classify_event(1e6) == EventCategory::Violent);
    CHECK_THROWS_AS(classify_event(-0.1), DomainError);
    for (auto c : {EventCategory::Dry, EventCategory::Light, EventCategory::Heavy, EventCategory::Violent})
        CHECK(event_category_from_string(to_string(c)) == c);
    CHECK_THROWS(event_category_from_string("drizzle"));
}

TEST_CASE("event classification is total and exclusive") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = u(rng);
        const auto c = classify_event(x);
        const int memberships = (x < 0.85) + (x >= 0.85 && x < 25.0) + (x >= 25.0 && x < 40.0) + (x >= 40.0);
        CHECK(memberships == 1);
        if (x < 0.85) CHECK(c == EventCategory::Dry);
        else if (x < 25.0) CHECK(c == EventCategory::Light);
        else if (x < 40.0) CHECK(c == EventCategory::Heavy);
        else CHECK(c == EventCategory::Violent);
    }
}

TEST_CASE("intensity classes") {
    const auto classes = default_intensity_classes();
    REQUIRE(classes.size() == 4);
    CHECK(classes[0] == IntensityClass{0.85, 5.0});
    CHECK(classes[3] == IntensityClass{40.0, std::nullopt});
    CHECK_NOTHROW(validate_partition(classes));
    CHECK(find_class(classes, 0.84) == std::nullopt);
    CHECK(find_class(classes, 0.85) == 0u);
    CHECK(find_class(classes, 5.0) == 1u);
    CHECK(find_class(classes, 39.99) == 2u);
    CHECK(find_class(classes, 400.0) == 3u);

    const std::vector<double> bounds{0.85, 10.0};
    const auto two = classes_from_bounds(bounds);
    CHECK(two.size() == 2);
    CHECK(two[1] == IntensityClass{10.0, std::nullopt});

    const std::vector<IntensityClass> gap{{0.85, 5.0}, {6.0, std::nullopt}};
    CHECK_THROWS_AS(validate_partition(gap), DomainError);
    const std::vector<IntensityClass> bounded{{0.85, 5.0}, {5.0, 10.0}};
    CHECK_THROWS_AS(validate_partition(bounded), DomainError);
    const std::vector<double> unsorted{5.0, 1.0};
    CHECK_THROWS_AS(classes_from_bounds(unsorted), DomainError);
}
