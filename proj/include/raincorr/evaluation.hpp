#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "raincorr/config.hpp"
#include "raincorr/metrics.hpp"
#include "raincorr/seasonality.hpp"

namespace raincorr {

inline constexpr const char* kUncorrectedLabel = "uncorrected";
inline constexpr const char* kGaugeLabel = "gauge";

/// Scores of one corrected series on the test partition of one station.
struct EvaluationReport {
    std::string station_id;
    std::string sre;
    std::string method;  ///< method name or "uncorrected"
    MetricReport daily;
    /// Empty when the observed mean is not positive.
    std::optional<bool> me_acceptable;
    std::vector<std::pair<EventCategory, Contingency>> events;
    /// P(wet) for doy 1..366; empty when the occurrence fit is impossible.
    std::optional<std::vector<double>> occurrence;
    std::vector<SeasonStats> annual;
    /// Mean over seasons of (corrected - gauge) rainy-day count.
    std::optional<double> rainy_days_me;
    /// Mean over seasons of (corrected - gauge) mean rain per rainy day.
    std::optional<double> mean_rain_me;
};

/// Gauge statistics on the same test dates, for comparison plots.
struct GaugeReference {
    std::string station_id;
    std::string sre;
    std::optional<std::vector<double>> occurrence;
    std::vector<SeasonStats> annual;
};

struct TripleFailure {
    std::string station_id;
    std::string sre;
    std::string method;
    std::string reason;
};

/// Station proportions for one (method, SRE) pair.
struct SummaryRow {
    std::string method;
    std::string sre;
    std::size_t n_stations = 0;
    /// Share of stations whose |ME| is strictly below the uncorrected |ME|.
    double prop_reduced_me = 0.0;
    double prop_acceptable_me = 0.0;
    /// Mean RSD over stations with reduced |ME|.
    std::optional<double> mean_rsd;
    std::optional<double> mean_rainy_days_me;
    std::optional<double> mean_rain_me;
};

/// Corrected values on all aligned dates of every station, per (SRE, method).
using CorrectedSet = std::map<std::pair<std::string, std::string>, SeriesMap>;

struct PipelineResult {
    std::vector<EvaluationReport> reports;
    std::vector<GaugeReference> references;
    std::vector<TripleFailure> failures;
    std::vector<SkippedStation> skipped;
    std::vector<SummaryRow> summary;
    CorrectedSet corrected;
    std::size_t stations_attempted = 0;
    std::size_t stations_succeeded = 0;
};

/// Paired inputs per SRE product, in configuration order.
using PipelineInputs = std::vector<std::pair<std::string, PairSet>>;

using LogSink = std::function<void(const std::string&)>;

/// Seed of one (station, SRE, method) triple.
std::uint64_t triple_seed(std::uint64_t master, const std::string& station_id, const std::string& sre,
                          Method method);

/// Reads the gauge file and every SRE file of `config`. Throws on I/O and
/// parse errors.
PipelineInputs load_inputs(const RunConfig& config);

/// Scores `corrected` (test-partition values of `pair`) against the gauge.
EvaluationReport evaluate_corrected(const PairedSeries& pair, const std::string& sre,
                                    const std::string& method, const std::vector<double>& corrected,
                                    const RunConfig& config);

/// Independent aggregation of per-station reports into summary rows, one
/// per configured SRE and method.
std::vector<SummaryRow> summarize(const std::vector<EvaluationReport>& reports, const RunConfig& config,
                                  const std::vector<std::string>& sre_order);

/// Fits, applies and scores every configured triple. A failing triple is
/// logged and recorded; a station fails when all its methods fail.
/// Throws FitError when every station fails.
PipelineResult run_pipeline(const RunConfig& config, const PipelineInputs& inputs, const LogSink& log = {});
PipelineResult run_pipeline(const RunConfig& config, const LogSink& log = {});

/// Writes reports/{metrics,pod,annual,seasonality,summary}.csv under `dir`,
/// reports/failures.csv when any triple failed, and corrected/ series when
/// requested.
void write_reports(const PipelineResult& result, const std::filesystem::path& dir, bool write_corrected);

/// Fixed six-decimal formatting used by every report.
std::string format_fixed(double value);

/// File-name-safe form of an identifier.
std::string sanitize_name(const std::string& name);

}  // namespace raincorr
