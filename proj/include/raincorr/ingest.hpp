#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "raincorr/core.hpp"

namespace raincorr {

struct StationRecord {
    std::string station_id;
    double latitude = 0.0;
    double longitude = 0.0;
    std::optional<std::string> country;
};

/// Missing-value conventions applied while reading `station_id,date,rain_mm`.
/// Empty cells, "NA"/"NaN" and any negative value are always missing;
/// `sentinel`, when set, adds one more exact value.
struct SeriesSchema {
    std::optional<double> sentinel;
};

using SeriesMap = std::map<std::string, DailySeries>;

SeriesMap read_series(std::istream& in, const SeriesSchema& schema = {});
SeriesMap read_series(const std::filesystem::path& path, const SeriesSchema& schema = {});

/// Writes the long-format schema; missing values become empty cells.
void write_series(std::ostream& out, const SeriesMap& series);
void write_series(const std::filesystem::path& path, const SeriesMap& series);

std::vector<StationRecord> read_stations(std::istream& in);
std::vector<StationRecord> read_stations(const std::filesystem::path& path);

struct SkippedStation {
    std::string station_id;
    std::string reason;
};

struct PairSet {
    std::vector<PairedSeries> pairs;  // ordered by station_id
    std::vector<SkippedStation> skipped;
};

/// Inner join on station_id, aligned and partitioned at `split`. Stations
/// without concurrent data or with an empty train/test partition are
/// skipped, not fatal.
PairSet build_pairs(const SeriesMap& gauge, const SeriesMap& sre, Day split = kDefaultSplit);
PairSet build_pairs(const std::filesystem::path& gauge_file, const std::filesystem::path& sre_file,
                    Day split = kDefaultSplit, const SeriesSchema& schema = {});

/// Shortest decimal form that parses back to the same double.
std::string format_value(double value);

}  // namespace raincorr
