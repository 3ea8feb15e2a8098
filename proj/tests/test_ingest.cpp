#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "raincorr/errors.hpp"
#include "raincorr/ingest.hpp"
#include "support.hpp"

using namespace raincorr;
using testing::day;

namespace {

SeriesMap parse(const std::string& text, SeriesSchema schema = {}) {
    std::istringstream in(text);
    return read_series(in, schema);
}

std::string error_of(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("rows parse into per-station series") {
    const auto m = parse("station_id,date,rain_mm\nST1,2001-01-05,12.4\nST1,2001-01-04,0\nST2,2001-01-05,3\n");
    REQUIRE(m.size() == 2);
    const auto& s = m.at("ST1");
    CHECK(s.dates() == std::vector<Day>{day("2001-01-04"), day("2001-01-05")});
    CHECK(s.at(day("2001-01-05")) == 12.4);
    CHECK(m.at("ST2").size() == 1);
}

TEST_CASE("missing markers") {
    SeriesSchema schema;
    schema.sentinel = -99.0;
    const auto m = parse(
        "station_id,date,rain_mm\nST1,2001-01-05,\nST1,2001-01-06,-99\nST1,2001-01-07,NA\nST1,2001-01-08,-1\n"
        "ST1,2001-01-09,2.5\n",
        schema);
    const auto& v = m.at("ST1").values();
    REQUIRE(v.size() == 5);
    for (int i = 0; i < 4; ++i) CHECK_FALSE(v[i].has_value());
    CHECK(v[4] == 2.5);

    SeriesSchema positive;
    positive.sentinel = 999.0;
    CHECK_FALSE(parse("station_id,date,rain_mm\nA,2001-01-01,999\n", positive).at("A").values()[0].has_value());
}

TEST_CASE("header, line endings and byte-order mark") {
    const auto m = parse("\xEF\xBB\xBFstation_id,date,rain_mm\r\nA,2001-01-01,1.5\r\n");
    CHECK(m.at("A").values()[0] == 1.5);
    CHECK(error_of("id,date,rain\nA,2001-01-01,1\n").find("header") != std::string::npos);
    CHECK(error_of("").find("header") != std::string::npos);
}

TEST_CASE("malformed rows report their line number") {
    CHECK(error_of("station_id,date,rain_mm\nA,2001-01-01,1\nA,2001-01-02\n").find("line 3") != std::string::npos);
    CHECK(error_of("station_id,date,rain_mm\nA,2001-13-01,1\n").find("line 2") != std::string::npos);
    CHECK(error_of("station_id,date,rain_mm\nA,2001-01-01,abc\n").find("line 2") != std::string::npos);
    const auto dup = error_of("station_id,date,rain_mm\nA,2001-01-01,1\nB,2001-01-01,1\nA,2001-01-01,2\n");
    CHECK(dup.find("duplicate") != std::string::npos);
    CHECK(dup.find("line 4") != std::string::npos);
}

TEST_CASE("missing file names the path") {
    try {
        read_series(std::filesystem::path("/nonexistent/gauge.csv"));
        FAIL("expected an error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("/nonexistent/gauge.csv") != std::string::npos);
    }
}

TEST_CASE("write then read reproduces the series exactly") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> amount(0.0, 80.0);
    std::bernoulli_distribution missing(0.1);
    SeriesMap original;
    for (const char* id : {"B", "A", "C"}) {
        const auto dates = testing::dates_from(day("1999-12-01"), 200);
        std::vector<std::optional<double>> v;
        for (std::size_t i = 0; i < dates.size(); ++i)
            v.push_back(missing(rng) ? std::nullopt : std::optional<double>(amount(rng) / 7.0));
        original.emplace(id, DailySeries(id, dates, v));
    }
    std::ostringstream out;
    write_series(out, original);
    CHECK(parse(out.str()) == original);
}

TEST_CASE("station metadata") {
    std::istringstream ok("station_id,lat,lon,country\nST1,-13.6,32.6,ZM\nST2,5.6,-0.2,\n");
    const auto st = read_stations(ok);
    REQUIRE(st.size() == 2);
    CHECK(st[0].latitude == doctest::Approx(-13.6));
    CHECK_FALSE(st[1].country.has_value());
    CHECK(st[0].country == "ZM");
    std::istringstream bad("station_id,lat,lon,country\nST1,-93,32.6,ZM\n");
    CHECK_THROWS_AS(read_stations(bad), ParseError);
    std::istringstream bad_lon("station_id,lat,lon,country\nST1,3,181,ZM\n");
    CHECK_THROWS_AS(read_stations(bad_lon), ParseError);
}

TEST_CASE("pairs are built by inner join and skip stations without a partition") {
    auto make = [](const std::string& id, const char* first, std::size_t n) {
        return testing::series(id, day(first), std::vector<double>(n, 1.0));
    };
    SeriesMap gauge{{"A", make("A", "2000-12-01", 60)}, {"B", make("B", "2000-12-01", 60)},
                    {"C", make("C", "2001-02-01", 30)}};
    SeriesMap sre{{"A", make("A", "2000-12-01", 60)}, {"C", make("C", "2001-02-01", 30)}};
    const auto set = build_pairs(gauge, sre, day("2001-01-01"));
    REQUIRE(set.pairs.size() == 1);
    CHECK(set.pairs[0].station_id() == "A");
    REQUIRE(set.skipped.size() == 1);
    CHECK(set.skipped[0].station_id == "C");
}

TEST_CASE("two-station fixture of 100 days gives two pairs of length 100") {
    std::ostringstream g, s;
    g << "station_id,date,rain_mm\n";
    s << "station_id,date,rain_mm\n";
    std::vector<std::string> rows_g, rows_s;
    for (const char* id : {"S1", "S2"}) {
        for (const auto d : testing::dates_from(day("2000-10-01"), 100)) {
            rows_g.push_back(std::string(id) + "," + format_date(d) + ",1.5");
            rows_s.push_back(std::string(id) + "," + format_date(d) + ",2");
        }
    }
    for (const auto& r : rows_g) g << r << '\n';
    for (const auto& r : rows_s) s << r << '\n';
    const auto set = build_pairs(parse(g.str()), parse(s.str()));
    REQUIRE(set.pairs.size() == 2);
    for (const auto& p : set.pairs) CHECK(p.size() == 100);

    // Shuffled input rows give the same pairs.
    std::mt19937_64 rng(5);
    std::shuffle(rows_g.begin(), rows_g.end(), rng);
    std::shuffle(rows_s.begin(), rows_s.end(), rng);
    std::ostringstream g2, s2;
    g2 << "station_id,date,rain_mm\n";
    s2 << "station_id,date,rain_mm\n";
    for (const auto& r : rows_g) g2 << r << '\n';
    for (const auto& r : rows_s) s2 << r << '\n';
    const auto shuffled = build_pairs(parse(g2.str()), parse(s2.str()));
    CHECK(shuffled.pairs == set.pairs);
}

TEST_CASE("values format in their shortest round-trip form") {
    CHECK(format_value(12.4) == "12.4");
    CHECK(format_value(0.0) == "0");
    const double x = 0.1 + 0.2;
    CHECK(std::stod(format_value(x)) == x);
}
