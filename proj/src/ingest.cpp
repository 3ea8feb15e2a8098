#include "raincorr/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string_view>

#include "raincorr/errors.hpp"

namespace raincorr {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::optional<double> parse_number(std::string_view text) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return v;
}

bool is_blank(std::string_view line) { return trim(line).empty(); }

void check_header(std::istream& in, std::string_view expected, std::size_t& line_no) {
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        if (is_blank(line)) continue;
        const auto fields = split_fields(line);
        const auto want = split_fields(expected);
        if (fields != want)
            throw ParseError("unexpected header '" + std::string(trim(line)) + "', expected '" +
                                 std::string(expected) + "'",
                             line_no);
        return;
    }
    throw ParseError("missing header '" + std::string(expected) + "'", line_no);
}

}  // namespace

std::string format_value(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

SeriesMap read_series(std::istream& in, const SeriesSchema& schema) {
    struct Row {
        Day date;
        std::optional<double> value;
        std::size_t line;
    };
    std::map<std::string, std::vector<Row>> rows;
    std::size_t line_no = 0;
    check_header(in, "station_id,date,rain_mm", line_no);

    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 3) throw ParseError("expected 3 fields", line_no);
        if (fields[0].empty()) throw ParseError("empty station_id", line_no);

        Day date;
        try {
            date = parse_date(fields[1]);
        } catch (const DomainError& e) {
            throw ParseError(e.what(), line_no);
        }

        std::optional<double> value;
        const auto cell = fields[2];
        if (!cell.empty() && cell != "NA" && cell != "NaN" && cell != "nan") {
            const auto v = parse_number(cell);
            if (!v || std::isinf(*v)) throw ParseError("invalid rainfall '" + std::string(cell) + "'", line_no);
            const bool sentinel = schema.sentinel && *v == *schema.sentinel;
            if (!std::isnan(*v) && *v >= 0.0 && !sentinel) value = *v;
        }
        rows[std::string(fields[0])].push_back({date, value, line_no});
    }

    SeriesMap out;
    for (auto& [id, list] : rows) {
        std::stable_sort(list.begin(), list.end(),
                         [](const Row& a, const Row& b) { return a.date < b.date; });
        std::vector<Day> dates;
        std::vector<std::optional<double>> values;
        dates.reserve(list.size());
        values.reserve(list.size());
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (i > 0 && list[i].date == list[i - 1].date)
                throw ParseError("duplicate record for station '" + id + "' on " +
                                     format_date(list[i].date),
                                 std::max(list[i].line, list[i - 1].line));
            dates.push_back(list[i].date);
            values.push_back(list[i].value);
        }
        out.emplace(id, DailySeries(id, std::move(dates), std::move(values)));
    }
    return out;
}

SeriesMap read_series(const std::filesystem::path& path, const SeriesSchema& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    try {
        return read_series(in, schema);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_series(std::ostream& out, const SeriesMap& series) {
    out << "station_id,date,rain_mm\n";
    for (const auto& [id, s] : series) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            out << id << ',' << format_date(s.dates()[i]) << ',';
            if (s.values()[i]) out << format_value(*s.values()[i]);
            out << '\n';
        }
    }
}

void write_series(const std::filesystem::path& path, const SeriesMap& series) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    write_series(out, series);
}

std::vector<StationRecord> read_stations(std::istream& in) {
    std::size_t line_no = 0;
    check_header(in, "station_id,lat,lon,country", line_no);
    std::vector<StationRecord> out;
    std::set<std::string> seen;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 4) throw ParseError("expected 4 fields", line_no);
        StationRecord rec;
        rec.station_id = std::string(fields[0]);
        if (rec.station_id.empty()) throw ParseError("empty station_id", line_no);
        const auto lat = parse_number(fields[1]);
        const auto lon = parse_number(fields[2]);
        if (!lat || !(*lat >= -90.0 && *lat <= 90.0)) throw ParseError("invalid latitude", line_no);
        if (!lon || !(*lon >= -180.0 && *lon <= 180.0)) throw ParseError("invalid longitude", line_no);
        rec.latitude = *lat;
        rec.longitude = *lon;
        if (!fields[3].empty()) rec.country = std::string(fields[3]);
        if (!seen.insert(rec.station_id).second)
            throw ParseError("duplicate station '" + rec.station_id + "'", line_no);
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<StationRecord> read_stations(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    return read_stations(in);
}

PairSet build_pairs(const SeriesMap& gauge, const SeriesMap& sre, Day split) {
    PairSet out;
    for (const auto& [id, g] : gauge) {
        auto it = sre.find(id);
        if (it == sre.end()) continue;
        try {
            PairedSeries pair = align(g, it->second, split);
            if (pair.train_size() == 0) {
                out.skipped.push_back({id, "no concurrent data before " + format_date(split)});
                continue;
            }
            if (pair.test_size() == 0) {
                out.skipped.push_back({id, "no concurrent data on or after " + format_date(split)});
                continue;
            }
            out.pairs.push_back(std::move(pair));
        } catch (const AlignmentError& e) {
            out.skipped.push_back({id, e.what()});
        }
    }
    return out;
}

PairSet build_pairs(const std::filesystem::path& gauge_file, const std::filesystem::path& sre_file,
                    Day split, const SeriesSchema& schema) {
    return build_pairs(read_series(gauge_file, schema), read_series(sre_file, schema), split);
}

}  // namespace raincorr
