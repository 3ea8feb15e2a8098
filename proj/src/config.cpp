#include "raincorr/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "raincorr/errors.hpp"

namespace raincorr {

namespace pt = boost::property_tree;

namespace {

// Known keys per section; [sre] takes arbitrary product names.
const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"inputs", {"gauge", "sentinel"}},
        {"pipeline",
         {"split_date", "threshold", "classes", "events", "methods", "season_start_month", "harmonics", "seed",
          "jobs"}},
        {"output", {"dir", "write_corrected"}},
        {"gpr", {"max_rows", "selection_rows", "min_rows", "nu", "rho_grid", "sigma2_grid", "noise_grid"}},
        {"svr",
         {"max_rows", "selection_rows", "min_rows", "c_grid", "epsilon_grid", "lambda_grid", "v2",
          "validation_fraction", "max_passes", "tolerance"}},
        {"synth",
         {"stations", "start_year", "years", "wet_base", "wet_amplitude", "wet_amplitude2", "gamma_shape",
          "gamma_scale", "drizzle_probability", "wet_inflation", "intensity_multiplier", "noise_sigma",
          "extra_max", "missing_fraction", "seed", "station_prefix", "gauge_out", "sre_out"}},
    };
    return keys;
}

bool is_path_key(const std::string& section, const std::string& key) {
    return section == "sre" || (section == "inputs" && key == "gauge") || (section == "output" && key == "dir") ||
           (section == "synth" && (key == "gauge_out" || key == "sre_out"));
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    T value{};
    const auto t = trim(text);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size())
        throw ConfigError("invalid value '" + text + "' for " + key);
    return value;
}

std::vector<double> parse_doubles(const std::string& key, const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) out.push_back(parse_number<double>(key, item));
    if (out.empty()) throw ConfigError(key + " must not be empty");
    return out;
}

bool parse_bool(const std::string& key, const std::string& text) {
    const auto t = trim(text);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw ConfigError("invalid boolean '" + text + "' for " + key);
}

void apply_override(pt::ptree& tree, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + assignment + "' is not key=value");
    std::string key = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    if (key.find('.') == std::string::npos) {
        std::vector<std::string> matches;
        for (const auto& [section, keys] : known_keys()) {
            if (keys.count(key)) matches.push_back(section);
        }
        if (matches.empty()) throw ConfigError("unknown config key '" + key + "'");
        if (matches.size() > 1)
            throw ConfigError("ambiguous config key '" + key + "', qualify it as section.key");
        key = matches.front() + "." + key;
    }
    const auto dot = key.find('.');
    const auto section = key.substr(0, dot);
    const auto name = key.substr(dot + 1);
    if (section != "sre") {
        auto it = known_keys().find(section);
        if (it == known_keys().end() || !it->second.count(name))
            throw ConfigError("unknown config key '" + key + "'");
    }
    tree.put(pt::ptree::path_type(key, '.'), value);
}

}  // namespace

void RunConfig::validate() const {
    if (methods.empty()) throw ConfigError("at least one method is required");
    if (!(threshold > 0.0)) throw ConfigError("threshold must be positive");
    if (season_start_month < 1 || season_start_month > 12)
        throw ConfigError("season_start_month must be in 1..12");
    if (harmonics < 1 || harmonics > 4) throw ConfigError("harmonics must be in 1..4");
    if (jobs < 1) throw ConfigError("jobs must be at least 1");
    try {
        validate_partition(classes);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("classes: ") + e.what());
    }
    if (classes.front().lower != kWetThreshold)
        throw ConfigError("intensity classes must start at the wet-day threshold 0.85");
}

FitOptions RunConfig::fit_options() const {
    FitOptions f = fit;
    f.t_gauge = threshold;
    f.gpr.classes = classes;
    f.svr.classes = classes;
    return f;
}

RunConfig parse_config(std::istream& in, const std::vector<std::string>& overrides,
                       const std::filesystem::path& base_dir) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    for (auto& [section, entries] : tree) {
        if (section != "sre" && !known_keys().count(section))
            throw ConfigError("unknown config section [" + section + "]");
        for (auto& [key, node] : entries) {
            if (section != "sre" && !known_keys().at(section).count(key))
                throw ConfigError("unknown config key '" + section + "." + key + "'");
            if (is_path_key(section, key) && !base_dir.empty()) {
                const std::filesystem::path p = trim(node.data());
                if (p.is_relative()) node.data() = (base_dir / p).lexically_normal().string();
            }
        }
    }
    for (const auto& o : overrides) apply_override(tree, o);

    RunConfig cfg;
    auto get = [&](const std::string& key) -> std::optional<std::string> {
        if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(key, '.'))) return trim(*v);
        return std::nullopt;
    };

    if (auto v = get("inputs.gauge")) cfg.gauge_file = *v;
    if (auto v = get("inputs.sentinel")) cfg.schema.sentinel = parse_number<double>("inputs.sentinel", *v);
    if (auto sre = tree.get_child_optional("sre")) {
        for (const auto& [name, node] : *sre) cfg.sre_files.push_back({name, trim(node.data())});
    }

    try {
        if (auto v = get("pipeline.split_date")) cfg.split = parse_date(*v);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("pipeline.split_date: ") + e.what());
    }
    if (auto v = get("pipeline.threshold")) cfg.threshold = parse_number<double>("pipeline.threshold", *v);
    if (auto v = get("pipeline.classes")) {
        const auto bounds = parse_doubles("pipeline.classes", *v);
        try {
            cfg.classes = classes_from_bounds(bounds);
        } catch (const DomainError& e) {
            throw ConfigError(std::string("pipeline.classes: ") + e.what());
        }
    }
    if (auto v = get("pipeline.events")) {
        cfg.events.clear();
        try {
            for (const auto& e : split_list(*v)) cfg.events.push_back(event_category_from_string(e));
        } catch (const DomainError& e) {
            throw ConfigError(std::string("pipeline.events: ") + e.what());
        }
    }
    if (auto v = get("pipeline.methods")) {
        for (const auto& m : split_list(*v)) cfg.methods.push_back(method_from_string(m));
    } else {
        cfg.methods.assign(std::begin(kAllMethods), std::end(kAllMethods));
    }
    if (auto v = get("pipeline.season_start_month"))
        cfg.season_start_month = parse_number<unsigned>("pipeline.season_start_month", *v);
    if (auto v = get("pipeline.harmonics")) cfg.harmonics = parse_number<int>("pipeline.harmonics", *v);
    if (auto v = get("pipeline.seed")) cfg.seed = parse_number<std::uint64_t>("pipeline.seed", *v);
    if (auto v = get("pipeline.jobs")) cfg.jobs = parse_number<unsigned>("pipeline.jobs", *v);
    if (auto v = get("output.dir")) cfg.output_dir = *v;
    if (auto v = get("output.write_corrected")) cfg.write_corrected = parse_bool("output.write_corrected", *v);

    auto& gpr = cfg.fit.gpr;
    if (auto v = get("gpr.max_rows")) gpr.max_rows = parse_number<std::size_t>("gpr.max_rows", *v);
    if (auto v = get("gpr.selection_rows")) gpr.selection_rows = parse_number<std::size_t>("gpr.selection_rows", *v);
    if (auto v = get("gpr.min_rows")) gpr.min_rows = parse_number<std::size_t>("gpr.min_rows", *v);
    if (auto v = get("gpr.nu")) gpr.nu = parse_number<double>("gpr.nu", *v);
    if (auto v = get("gpr.rho_grid")) gpr.rho_grid = parse_doubles("gpr.rho_grid", *v);
    if (auto v = get("gpr.sigma2_grid")) gpr.sigma2_grid = parse_doubles("gpr.sigma2_grid", *v);
    if (auto v = get("gpr.noise_grid")) gpr.noise_grid = parse_doubles("gpr.noise_grid", *v);
    if (gpr.nu != 0.5 && gpr.nu != 1.5 && gpr.nu != 2.5) throw ConfigError("gpr.nu must be 0.5, 1.5 or 2.5");

    auto& svr = cfg.fit.svr;
    if (auto v = get("svr.max_rows")) svr.max_rows = parse_number<std::size_t>("svr.max_rows", *v);
    if (auto v = get("svr.selection_rows")) svr.selection_rows = parse_number<std::size_t>("svr.selection_rows", *v);
    if (auto v = get("svr.min_rows")) svr.min_rows = parse_number<std::size_t>("svr.min_rows", *v);
    if (auto v = get("svr.c_grid")) svr.c_grid = parse_doubles("svr.c_grid", *v);
    if (auto v = get("svr.epsilon_grid")) svr.epsilon_grid = parse_doubles("svr.epsilon_grid", *v);
    if (auto v = get("svr.lambda_grid")) svr.lambda_grid = parse_doubles("svr.lambda_grid", *v);
    if (auto v = get("svr.v2")) svr.v2 = parse_number<double>("svr.v2", *v);
    if (auto v = get("svr.validation_fraction"))
        svr.validation_fraction = parse_number<double>("svr.validation_fraction", *v);
    if (auto v = get("svr.max_passes")) svr.smo.max_passes = parse_number<long>("svr.max_passes", *v);
    if (auto v = get("svr.tolerance")) svr.smo.tolerance = parse_number<double>("svr.tolerance", *v);

    auto& s = cfg.synth;
    if (auto v = get("synth.stations")) s.stations = parse_number<int>("synth.stations", *v);
    if (auto v = get("synth.start_year")) s.start_year = parse_number<int>("synth.start_year", *v);
    if (auto v = get("synth.years")) s.years = parse_number<int>("synth.years", *v);
    if (auto v = get("synth.wet_base")) s.wet_base = parse_number<double>("synth.wet_base", *v);
    if (auto v = get("synth.wet_amplitude")) s.wet_amplitude = parse_number<double>("synth.wet_amplitude", *v);
    if (auto v = get("synth.wet_amplitude2")) s.wet_amplitude2 = parse_number<double>("synth.wet_amplitude2", *v);
    if (auto v = get("synth.gamma_shape")) s.gamma_shape = parse_number<double>("synth.gamma_shape", *v);
    if (auto v = get("synth.gamma_scale")) s.gamma_scale = parse_number<double>("synth.gamma_scale", *v);
    if (auto v = get("synth.drizzle_probability"))
        s.drizzle_probability = parse_number<double>("synth.drizzle_probability", *v);
    if (auto v = get("synth.wet_inflation")) s.wet_inflation = parse_number<double>("synth.wet_inflation", *v);
    if (auto v = get("synth.intensity_multiplier"))
        s.intensity_multiplier = parse_number<double>("synth.intensity_multiplier", *v);
    if (auto v = get("synth.noise_sigma")) s.noise_sigma = parse_number<double>("synth.noise_sigma", *v);
    if (auto v = get("synth.extra_max")) s.extra_max = parse_number<double>("synth.extra_max", *v);
    if (auto v = get("synth.missing_fraction"))
        s.missing_fraction = parse_number<double>("synth.missing_fraction", *v);
    if (auto v = get("synth.seed")) s.seed = parse_number<std::uint64_t>("synth.seed", *v);
    if (auto v = get("synth.station_prefix")) s.station_prefix = *v;
    cfg.synth_gauge_file = get("synth.gauge_out").value_or(cfg.gauge_file.string());
    if (auto v = get("synth.sre_out")) {
        cfg.synth_sre_file = *v;
    } else if (!cfg.sre_files.empty()) {
        cfg.synth_sre_file = cfg.sre_files.front().file;
    }

    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    return parse_config(in, overrides, path.parent_path());
}

}  // namespace raincorr
