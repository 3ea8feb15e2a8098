#include "raincorr/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "raincorr/config.hpp"
#include "raincorr/errors.hpp"
#include "raincorr/evaluation.hpp"
#include "raincorr/model_io.hpp"
#include "raincorr/synth.hpp"

namespace raincorr {

namespace fs = std::filesystem;

namespace {

struct Invocation {
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> jobs;
    std::string out_dir;
};

RunConfig resolve(const Invocation& inv, bool synth) {
    auto overrides = inv.overrides;
    if (inv.seed) overrides.push_back((synth ? "synth.seed=" : "pipeline.seed=") + std::to_string(*inv.seed));
    if (inv.jobs) overrides.push_back("pipeline.jobs=" + std::to_string(*inv.jobs));
    if (!inv.out_dir.empty()) overrides.push_back("output.dir=" + inv.out_dir);
    if (inv.config_path.empty()) {
        std::istringstream empty;
        return parse_config(empty, overrides);
    }
    return load_config(inv.config_path, overrides);
}

fs::path model_path(const fs::path& dir, const std::string& station, const std::string& sre, Method m) {
    return dir / "models" /
           (sanitize_name(station) + "__" + sanitize_name(sre) + "__" + sanitize_name(std::string(to_string(m))) +
            ".json");
}

fs::path corrected_path(const fs::path& dir, const std::string& sre, const std::string& method) {
    return dir / "corrected" / (sanitize_name(sre) + "__" + sanitize_name(method) + ".csv");
}

int cmd_synth(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.synth_gauge_file.empty() || cfg.synth_sre_file.empty())
        throw ConfigError("synth needs synth.gauge_out and synth.sre_out (or inputs.gauge and one [sre] entry)");
    for (const auto& p : {cfg.synth_gauge_file, cfg.synth_sre_file}) {
        if (p.has_parent_path()) fs::create_directories(p.parent_path());
    }
    err << "generating " << cfg.synth.stations << " stations x " << cfg.synth.years << " years\n";
    synth_write(cfg.synth, cfg.synth_gauge_file, cfg.synth_sre_file);
    out << "synth: wrote " << cfg.synth.stations << " stations to " << cfg.synth_gauge_file.string() << " and "
        << cfg.synth_sre_file.string() << '\n';
    return kExitOk;
}

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto inputs = load_inputs(cfg);
    PipelineResult result;
    try {
        result = run_pipeline(cfg, inputs, [&](const std::string& m) { err << m << '\n'; });
    } catch (const FitError& e) {
        err << "error: " << e.what() << '\n';
        out << "run: 0 stations succeeded\n";
        return kExitFailed;
    }
    write_reports(result, cfg.output_dir, cfg.write_corrected);
    out << "run: " << result.stations_succeeded << "/" << result.stations_attempted << " stations, "
        << result.reports.size() << " reports, " << result.failures.size() << " failures, written to "
        << (cfg.output_dir / "reports").string() << '\n';
    return kExitOk;
}

int cmd_fit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto inputs = load_inputs(cfg);
    const auto fit = cfg.fit_options();
    std::size_t written = 0, failed = 0;
    std::set<std::string> ok_stations, stations;
    for (const auto& [sre, set] : inputs) {
        for (const auto& s : set.skipped) err << "warning: skipping " << s.station_id << ": " << s.reason << '\n';
        for (const auto& pair : set.pairs) {
            stations.insert(pair.station_id());
            for (const Method m : cfg.methods) {
                try {
                    ModelFile file{pair.station_id(), sre, m, cfg.threshold, cfg.split,
                                   fit_method(m, pair, fit, triple_seed(cfg.seed, pair.station_id(), sre, m))};
                    const auto path = model_path(cfg.output_dir, pair.station_id(), sre, m);
                    fs::create_directories(path.parent_path());
                    save_model(path, file);
                    ++written;
                    ok_stations.insert(pair.station_id());
                } catch (const Error& e) {
                    ++failed;
                    err << "warning: " << pair.station_id() << "/" << sre << "/" << to_string(m) << ": " << e.what()
                        << '\n';
                }
            }
            err << "fitted " << pair.station_id() << "/" << sre << '\n';
        }
    }
    out << "fit: " << written << " models written, " << failed << " failed\n";
    return ok_stations.empty() ? kExitFailed : kExitOk;
}

int cmd_apply(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto inputs = load_inputs(cfg);
    std::size_t files = 0;
    for (const auto& [sre, set] : inputs) {
        for (const Method m : cfg.methods) {
            SeriesMap corrected;
            for (const auto& pair : set.pairs) {
                const auto path = model_path(cfg.output_dir, pair.station_id(), sre, m);
                if (!fs::exists(path)) throw ConfigError("model file '" + path.string() + "' not found; run fit first");
                const auto file = load_model(path);
                if (file.station_id != pair.station_id() || file.sre != sre || file.method != m)
                    throw ConfigError("model file '" + path.string() + "' belongs to a different station or method");
                if (file.t_gauge != cfg.threshold)
                    throw ConfigError("model file '" + path.string() + "' was fitted with threshold " +
                                      format_value(file.t_gauge));
                if (file.split != cfg.split)
                    throw ConfigError("model file '" + path.string() + "' was fitted with split " +
                                      format_date(file.split));
                const auto values = apply_model(file.model, pair.dates(), pair.sre());
                corrected.emplace(pair.station_id(),
                                  DailySeries(pair.station_id(), pair.dates(),
                                              std::vector<std::optional<double>>(values.begin(), values.end())));
            }
            const auto path = corrected_path(cfg.output_dir, sre, std::string(to_string(m)));
            fs::create_directories(path.parent_path());
            write_series(path, corrected);
            ++files;
            err << "corrected " << sre << " with " << to_string(m) << '\n';
        }
    }
    out << "apply: " << files << " corrected files written to " << (cfg.output_dir / "corrected").string() << '\n';
    return kExitOk;
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto inputs = load_inputs(cfg);
    PipelineResult result;
    std::vector<std::string> sre_order;
    std::set<std::string> attempted, succeeded;
    for (const auto& [sre, set] : inputs) {
        sre_order.push_back(sre);
        std::map<std::string, SeriesMap> by_method;
        for (const Method m : cfg.methods) {
            const auto path = corrected_path(cfg.output_dir, sre, std::string(to_string(m)));
            if (!fs::exists(path)) throw ConfigError("corrected file '" + path.string() + "' not found; run apply first");
            by_method.emplace(to_string(m), read_series(path, {}));
        }
        for (const auto& pair : set.pairs) {
            attempted.insert(pair.station_id());
            const std::size_t from = pair.train_size();
            const std::vector<double> raw(pair.sre().begin() + static_cast<std::ptrdiff_t>(from), pair.sre().end());
            const std::vector<double> obs(pair.gauge().begin() + static_cast<std::ptrdiff_t>(from), pair.gauge().end());
            GaugeReference ref{pair.station_id(), sre, std::nullopt, {}};
            {
                const auto g = evaluate_corrected(pair, sre, kGaugeLabel, obs, cfg);
                ref.occurrence = g.occurrence;
                ref.annual = g.annual;
            }
            result.references.push_back(std::move(ref));
            result.reports.push_back(evaluate_corrected(pair, sre, kUncorrectedLabel, raw, cfg));
            for (const Method m : cfg.methods) {
                const std::string label(to_string(m));
                const auto& series = by_method.at(label);
                auto it = series.find(pair.station_id());
                if (it == series.end()) {
                    result.failures.push_back({pair.station_id(), sre, label, "no corrected series"});
                    err << "warning: no corrected " << label << " series for " << pair.station_id() << '\n';
                    continue;
                }
                std::vector<double> values;
                values.reserve(pair.test_size());
                for (std::size_t i = from; i < pair.size(); ++i) {
                    const auto v = it->second.at(pair.dates()[i]);
                    if (!v) break;
                    values.push_back(*v);
                }
                if (values.size() != pair.test_size()) {
                    result.failures.push_back({pair.station_id(), sre, label, "corrected series does not cover the test partition"});
                    continue;
                }
                result.reports.push_back(evaluate_corrected(pair, sre, label, values, cfg));
                succeeded.insert(pair.station_id());
            }
        }
    }
    result.summary = summarize(result.reports, cfg, sre_order);
    result.stations_attempted = attempted.size();
    result.stations_succeeded = succeeded.size();
    write_reports(result, cfg.output_dir, false);
    out << "evaluate: " << result.stations_succeeded << "/" << result.stations_attempted << " stations, "
        << result.reports.size() << " reports written to " << (cfg.output_dir / "reports").string() << '\n';
    return succeeded.empty() ? kExitFailed : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bias correction of satellite and reanalysis rainfall against gauges", "raincorr"};
    app.require_subcommand(1, 1);
    Invocation inv;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", inv.config_path, "INI configuration file");
        sub->add_option("--set", inv.overrides, "Override a config key (section.key=value)")->take_all();
        sub->add_option("--seed", inv.seed, "Master random seed");
        sub->add_option("--jobs", inv.jobs, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--out", inv.out_dir, "Output directory");
    };
    auto* synth = app.add_subcommand("synth", "Generate a synthetic gauge/SRE benchmark");
    auto* fit = app.add_subcommand("fit", "Fit correction models and write them to DIR/models");
    auto* apply = app.add_subcommand("apply", "Correct SRE series with previously fitted models");
    auto* evaluate = app.add_subcommand("evaluate", "Score corrected series written by apply");
    auto* run = app.add_subcommand("run", "Fit, apply and evaluate in one pass");
    for (auto* sub : {synth, fit, apply, evaluate, run}) add_common(sub);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }

    try {
        if (synth->parsed()) return cmd_synth(resolve(inv, true), out, err);
        const auto cfg = resolve(inv, false);
        if (fit->parsed()) return cmd_fit(cfg, out, err);
        if (apply->parsed()) return cmd_apply(cfg, out, err);
        if (evaluate->parsed()) return cmd_evaluate(cfg, out, err);
        return cmd_run(cfg, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailed;
    }
}

}  // namespace raincorr
