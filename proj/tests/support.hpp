#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "raincorr/core.hpp"
#include "raincorr/ingest.hpp"
#include "raincorr/synth.hpp"

namespace testing {

using raincorr::Day;

inline Day day(const char* iso) { return raincorr::parse_date(iso); }

/// Consecutive dates starting at `first`.
inline std::vector<Day> dates_from(Day first, std::size_t n) {
    std::vector<Day> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = first + std::chrono::days(static_cast<int>(i));
    return out;
}

inline raincorr::DailySeries series(const std::string& id, Day first, const std::vector<double>& values) {
    std::vector<std::optional<double>> v(values.begin(), values.end());
    return raincorr::DailySeries(id, dates_from(first, values.size()), std::move(v));
}

/// Paired series with the split placed after `n_train` days.
inline raincorr::PairedSeries paired(const std::vector<double>& gauge, const std::vector<double>& sre,
                                     std::size_t n_train, Day first = day("1990-01-01")) {
    const auto g = series("T", first, gauge);
    const auto s = series("T", first, sre);
    return raincorr::align(g, s, first + std::chrono::days(static_cast<int>(n_train)));
}

/// One synthetic station pair from the benchmark generator.
inline raincorr::PairedSeries synth_pair(raincorr::SynthSpec spec, Day split = raincorr::kDefaultSplit) {
    spec.stations = 1;
    const auto data = raincorr::synth_generate(spec);
    return raincorr::build_pairs(data.gauge, data.sre, split).pairs.at(0);
}

/// Scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("raincorr_" + tag + "_" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace testing
