#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "raincorr/core.hpp"
#include "raincorr/ingest.hpp"
#include "raincorr/methods.hpp"
#include "raincorr/synth.hpp"

namespace raincorr {

struct SreInput {
    std::string name;
    std::filesystem::path file;
};

struct RunConfig {
    std::filesystem::path gauge_file;
    std::vector<SreInput> sre_files;
    SeriesSchema schema;
    Day split = kDefaultSplit;
    double threshold = kWetThreshold;
    std::vector<IntensityClass> classes = default_intensity_classes();
    std::vector<EventCategory> events{EventCategory::Dry, EventCategory::Heavy, EventCategory::Violent};
    std::vector<Method> methods;
    unsigned season_start_month = 1;
    int harmonics = 2;
    std::uint64_t seed = 42;
    unsigned jobs = 1;
    std::filesystem::path output_dir = "out";
    bool write_corrected = false;
    FitOptions fit;  ///< ML grids and caps; t_gauge and classes mirror the fields above
    SynthSpec synth;
    std::filesystem::path synth_gauge_file;
    std::filesystem::path synth_sre_file;

    /// Throws ConfigError when an invariant is violated.
    void validate() const;
    /// Copies threshold and classes into the per-method options.
    FitOptions fit_options() const;
};

/// Parses an INI document with sections [inputs], [sre], [pipeline],
/// [output], [gpr], [svr] and [synth]. Overrides are "key=value" pairs where
/// key is "section.key", or a bare key that is unique across sections.
/// Relative paths in the file resolve against `base_dir`; override values
/// are used as given. Throws ConfigError.
RunConfig parse_config(std::istream& in, const std::vector<std::string>& overrides = {},
                       const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

}  // namespace raincorr
