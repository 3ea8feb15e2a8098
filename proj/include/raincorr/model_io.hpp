#pragma once

#include <filesystem>
#include <string>

#include "raincorr/core.hpp"
#include "raincorr/methods.hpp"

namespace raincorr {

/// A fitted model together with the context it was fitted in.
struct ModelFile {
    std::string station_id;
    std::string sre;
    Method method = Method::Loci;
    double t_gauge = kWetThreshold;
    Day split = kDefaultSplit;
    CorrectionModel model;
};

/// JSON text of a single (non-hybrid) model; doubles round-trip exactly.
std::string model_to_json(const CorrectionModel& model);
CorrectionModel model_from_json(const std::string& text);

/// Writes `path` (JSON). Hybrid models are written as a manifest at `path`
/// plus `<stem>.stage1.json` and `<stem>.stage2.json` beside it.
void save_model(const std::filesystem::path& path, const ModelFile& file);
/// Throws ParseError for unreadable or inconsistent files.
ModelFile load_model(const std::filesystem::path& path);

}  // namespace raincorr
