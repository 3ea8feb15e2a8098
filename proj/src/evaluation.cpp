#include "raincorr/evaluation.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include "raincorr/errors.hpp"
#include "raincorr/features.hpp"

namespace raincorr {

namespace {

std::optional<std::vector<double>> occurrence_of(const DailySeries& series, const RunConfig& config) {
    try {
        const auto model = fit_occurrence(series, config.threshold, config.harmonics);
        std::vector<double> curve(366);
        for (unsigned d = 1; d <= 366; ++d) curve[d - 1] = occurrence_curve(model, d);
        return curve;
    } catch (const Error&) {
        return std::nullopt;
    }
}

DailySeries test_series(const PairedSeries& pair, const std::vector<double>& values) {
    const auto begin = pair.dates().begin() + static_cast<std::ptrdiff_t>(pair.train_size());
    std::vector<Day> dates(begin, pair.dates().end());
    std::vector<std::optional<double>> v(values.begin(), values.end());
    return DailySeries(pair.station_id(), std::move(dates), std::move(v));
}

std::vector<double> test_slice(const std::vector<double>& all, std::size_t from) {
    return {all.begin() + static_cast<std::ptrdiff_t>(from), all.end()};
}

struct UnitResult {
    std::vector<EvaluationReport> reports;
    std::optional<GaugeReference> reference;
    std::vector<TripleFailure> failures;
    std::vector<std::pair<std::string, DailySeries>> corrected;  // method, series
    bool succeeded = false;
};

UnitResult run_unit(const PairedSeries& pair, const std::string& sre, const RunConfig& config,
                    const FitOptions& fit, const LogSink& log) {
    UnitResult out;
    const std::size_t from = pair.train_size();
    const auto observed = test_slice(pair.gauge(), from);

    GaugeReference ref{pair.station_id(), sre, std::nullopt, {}};
    const auto gauge_test = test_series(pair, observed);
    ref.occurrence = occurrence_of(gauge_test, config);
    ref.annual = annual_stats(gauge_test, config.threshold, config.season_start_month);
    out.reference = std::move(ref);

    auto score = [&](const std::string& label, const std::vector<double>& corrected) {
        out.reports.push_back(evaluate_corrected(pair, sre, label, corrected, config));
    };

    try {
        score(kUncorrectedLabel, test_slice(pair.sre(), from));
    } catch (const std::exception& e) {
        out.failures.push_back({pair.station_id(), sre, kUncorrectedLabel, e.what()});
        if (log) log("warning: " + pair.station_id() + "/" + sre + "/uncorrected: " + e.what());
    }

    for (const Method method : config.methods) {
        const std::string label(to_string(method));
        try {
            const auto model =
                fit_method(method, pair, fit, triple_seed(config.seed, pair.station_id(), sre, method));
            const auto all = apply_model(model, pair.dates(), pair.sre());
            score(label, test_slice(all, from));
            out.succeeded = true;
            std::vector<std::optional<double>> values(all.begin(), all.end());
            out.corrected.emplace_back(label, DailySeries(pair.station_id(), pair.dates(), std::move(values)));
        } catch (const std::exception& e) {
            out.failures.push_back({pair.station_id(), sre, label, e.what()});
            if (log) log("warning: " + pair.station_id() + "/" + sre + "/" + label + ": " + e.what());
        }
    }
    return out;
}

std::optional<double> mean_of(const std::vector<double>& v) {
    if (v.empty()) return std::nullopt;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

std::string opt_fixed(const std::optional<double>& v) { return v ? format_fixed(*v) : std::string{}; }

void open_report(std::ofstream& out, const std::filesystem::path& path) {
    out.open(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
}

}  // namespace

std::uint64_t triple_seed(std::uint64_t master, const std::string& station_id, const std::string& sre,
                          Method method) {
    return derive_seed(master, station_id + "/" + sre + "/" + std::string(to_string(method)));
}

std::string format_fixed(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    std::string s(buf);
    if (s == "-0.000000") s = "0.000000";
    return s;
}

std::string sanitize_name(const std::string& name) {
    std::string out;
    for (char c : name) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                        c == '_' || c == '.';
        out += ok ? c : '_';
    }
    return out.empty() ? std::string("_") : out;
}

PipelineInputs load_inputs(const RunConfig& config) {
    if (config.gauge_file.empty()) throw ConfigError("inputs.gauge is not set");
    if (config.sre_files.empty()) throw ConfigError("no [sre] products configured");
    const auto gauge = read_series(config.gauge_file, config.schema);
    PipelineInputs inputs;
    for (const auto& s : config.sre_files) {
        const auto sre = read_series(s.file, config.schema);
        inputs.emplace_back(s.name, build_pairs(gauge, sre, config.split));
    }
    return inputs;
}

EvaluationReport evaluate_corrected(const PairedSeries& pair, const std::string& sre, const std::string& method,
                                    const std::vector<double>& corrected, const RunConfig& config) {
    const std::size_t from = pair.train_size();
    const auto observed = test_slice(pair.gauge(), from);
    if (corrected.size() != observed.size())
        throw DomainError("corrected series length does not match the test partition");

    EvaluationReport r;
    r.station_id = pair.station_id();
    r.sre = sre;
    r.method = method;
    r.daily = compute_metrics(corrected, observed);
    double mean_obs = 0.0;
    for (double o : observed) mean_obs += o;
    mean_obs /= static_cast<double>(observed.size());
    if (mean_obs > 0.0) r.me_acceptable = acceptable_me(r.daily.me, mean_obs);
    for (const auto cat : config.events) r.events.emplace_back(cat, contingency(corrected, observed, cat));

    const auto series = test_series(pair, corrected);
    r.occurrence = occurrence_of(series, config);
    r.annual = annual_stats(series, config.threshold, config.season_start_month);

    const auto gauge_annual = annual_stats(test_series(pair, observed), config.threshold, config.season_start_month);
    std::map<int, const SeasonStats*> by_season;
    for (const auto& s : gauge_annual) by_season[s.season] = &s;
    std::vector<double> count_diff, mean_diff;
    for (const auto& s : r.annual) {
        auto it = by_season.find(s.season);
        if (it == by_season.end()) continue;
        count_diff.push_back(static_cast<double>(s.rainy_days) - static_cast<double>(it->second->rainy_days));
        if (s.mean_per_rainy_day && it->second->mean_per_rainy_day)
            mean_diff.push_back(*s.mean_per_rainy_day - *it->second->mean_per_rainy_day);
    }
    r.rainy_days_me = mean_of(count_diff);
    r.mean_rain_me = mean_of(mean_diff);
    return r;
}

std::vector<SummaryRow> summarize(const std::vector<EvaluationReport>& reports, const RunConfig& config,
                                  const std::vector<std::string>& sre_order) {
    std::map<std::pair<std::string, std::string>, const EvaluationReport*> baseline;
    for (const auto& r : reports) {
        if (r.method == kUncorrectedLabel) baseline[{r.sre, r.station_id}] = &r;
    }
    std::vector<SummaryRow> rows;
    for (const auto& sre : sre_order) {
        for (const Method m : config.methods) {
            SummaryRow row;
            row.method = std::string(to_string(m));
            row.sre = sre;
            std::size_t reduced = 0, acceptable = 0;
            std::vector<double> rsd, counts, means;
            for (const auto& r : reports) {
                if (r.sre != sre || r.method != row.method) continue;
                auto it = baseline.find({r.sre, r.station_id});
                if (it == baseline.end()) continue;
                ++row.n_stations;
                if (std::abs(r.daily.me) < std::abs(it->second->daily.me)) {
                    ++reduced;
                    if (r.daily.rsd) rsd.push_back(*r.daily.rsd);
                }
                if (r.me_acceptable.value_or(false)) ++acceptable;
                if (r.rainy_days_me) counts.push_back(*r.rainy_days_me);
                if (r.mean_rain_me) means.push_back(*r.mean_rain_me);
            }
            if (row.n_stations > 0) {
                const auto n = static_cast<double>(row.n_stations);
                row.prop_reduced_me = static_cast<double>(reduced) / n;
                row.prop_acceptable_me = static_cast<double>(acceptable) / n;
            }
            row.mean_rsd = mean_of(rsd);
            row.mean_rainy_days_me = mean_of(counts);
            row.mean_rain_me = mean_of(means);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

PipelineResult run_pipeline(const RunConfig& config, const PipelineInputs& inputs, const LogSink& log) {
    config.validate();
    const FitOptions fit = config.fit_options();

    struct Unit {
        const std::string* sre;
        const PairedSeries* pair;
    };
    std::vector<Unit> units;
    PipelineResult result;
    std::set<std::string> attempted;
    for (const auto& [name, set] : inputs) {
        for (const auto& p : set.pairs) {
            units.push_back({&name, &p});
            attempted.insert(p.station_id());
        }
        for (const auto& s : set.skipped) {
            result.skipped.push_back(s);
            if (log) log("warning: skipping " + s.station_id + " for " + name + ": " + s.reason);
        }
    }

    std::mutex log_mutex;
    LogSink safe_log;
    if (log) {
        safe_log = [&](const std::string& msg) {
            std::lock_guard lock(log_mutex);
            log(msg);
        };
    }

    std::vector<UnitResult> results(units.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < units.size();) {
            results[i] = run_unit(*units[i].pair, *units[i].sre, config, fit, safe_log);
            if (safe_log) safe_log("done " + units[i].pair->station_id() + "/" + *units[i].sre);
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(units.size())));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    std::set<std::string> succeeded;
    for (std::size_t i = 0; i < units.size(); ++i) {
        auto& r = results[i];
        if (r.succeeded) succeeded.insert(units[i].pair->station_id());
        if (r.reference) result.references.push_back(std::move(*r.reference));
        for (auto& rep : r.reports) result.reports.push_back(std::move(rep));
        for (auto& f : r.failures) result.failures.push_back(std::move(f));
        for (auto& [method, series] : r.corrected) {
            const auto id = series.station_id();
            result.corrected[{*units[i].sre, method}].emplace(id, std::move(series));
        }
    }
    result.stations_attempted = attempted.size();
    result.stations_succeeded = succeeded.size();

    std::vector<std::string> sre_order;
    for (const auto& [name, set] : inputs) sre_order.push_back(name);
    result.summary = summarize(result.reports, config, sre_order);

    if (result.stations_succeeded == 0) throw FitError("every station failed");
    return result;
}

PipelineResult run_pipeline(const RunConfig& config, const LogSink& log) {
    return run_pipeline(config, load_inputs(config), log);
}

void write_reports(const PipelineResult& result, const std::filesystem::path& dir, bool write_corrected) {
    const auto reports = dir / "reports";
    std::filesystem::create_directories(reports);

    std::ofstream metrics, pod, annual, seasonality, summary;
    open_report(metrics, reports / "metrics.csv");
    open_report(pod, reports / "pod.csv");
    open_report(annual, reports / "annual.csv");
    open_report(seasonality, reports / "seasonality.csv");
    open_report(summary, reports / "summary.csv");

    metrics << "station_id,sre,method,n,me,corr,rsd,rmse,mae,nse,me_acceptable\n";
    pod << "station_id,sre,method,category,hits,misses,false_alarms,pod\n";
    annual << "station_id,sre,method,season,rainy_days,total_mm,mean_per_rainy_day\n";
    seasonality << "station_id,sre,method,doy,probability\n";

    auto write_annual = [&](const std::string& station, const std::string& sre, const std::string& method,
                            const std::vector<SeasonStats>& stats) {
        for (const auto& s : stats) {
            annual << station << ',' << sre << ',' << method << ',' << s.season << ',' << s.rainy_days << ','
                   << format_fixed(s.total_mm) << ',' << opt_fixed(s.mean_per_rainy_day) << '\n';
        }
    };
    auto write_curve = [&](const std::string& station, const std::string& sre, const std::string& method,
                           const std::optional<std::vector<double>>& curve) {
        if (!curve) return;
        for (std::size_t d = 0; d < curve->size(); ++d) {
            seasonality << station << ',' << sre << ',' << method << ',' << d + 1 << ','
                        << format_fixed((*curve)[d]) << '\n';
        }
    };

    for (const auto& g : result.references) {
        write_annual(g.station_id, g.sre, kGaugeLabel, g.annual);
        write_curve(g.station_id, g.sre, kGaugeLabel, g.occurrence);
    }
    for (const auto& r : result.reports) {
        const auto& m = r.daily;
        metrics << r.station_id << ',' << r.sre << ',' << r.method << ',' << m.n << ',' << format_fixed(m.me) << ','
                << opt_fixed(m.corr) << ',' << opt_fixed(m.rsd) << ',' << format_fixed(m.rmse) << ','
                << format_fixed(m.mae) << ',' << opt_fixed(m.nse) << ','
                << (r.me_acceptable ? (*r.me_acceptable ? "1" : "0") : "") << '\n';
        for (const auto& [cat, c] : r.events) {
            pod << r.station_id << ',' << r.sre << ',' << r.method << ',' << to_string(cat) << ',' << c.hits << ','
                << c.misses << ',' << c.false_alarms << ',' << opt_fixed(raincorr::pod(c)) << '\n';
        }
        write_annual(r.station_id, r.sre, r.method, r.annual);
        write_curve(r.station_id, r.sre, r.method, r.occurrence);
    }

    summary << "method,sre,n_stations,prop_reduced_me,prop_acceptable_me,mean_rsd,mean_rainy_days_me,"
               "mean_rain_me\n";
    for (const auto& s : result.summary) {
        summary << s.method << ',' << s.sre << ',' << s.n_stations << ',' << format_fixed(s.prop_reduced_me) << ','
                << format_fixed(s.prop_acceptable_me) << ',' << opt_fixed(s.mean_rsd) << ','
                << opt_fixed(s.mean_rainy_days_me) << ',' << opt_fixed(s.mean_rain_me) << '\n';
    }

    const auto failures_path = reports / "failures.csv";
    if (!result.failures.empty()) {
        std::ofstream failures;
        open_report(failures, failures_path);
        failures << "station_id,sre,method,reason\n";
        for (const auto& f : result.failures) {
            std::string reason = f.reason;
            for (char& c : reason) {
                if (c == ',' || c == '\n' || c == '\r') c = ';';
            }
            failures << f.station_id << ',' << f.sre << ',' << f.method << ',' << reason << '\n';
        }
    } else {
        std::filesystem::remove(failures_path);
    }

    if (write_corrected) {
        const auto cdir = dir / "corrected";
        std::filesystem::create_directories(cdir);
        for (const auto& [key, series] : result.corrected) {
            write_series(cdir / (sanitize_name(key.first) + "__" + sanitize_name(key.second) + ".csv"), series);
        }
    }
}

}  // namespace raincorr
