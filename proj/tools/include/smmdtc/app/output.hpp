#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "smmdtc/analysis.hpp"
#include "smmdtc/app/pipeline.hpp"
#include "smmdtc/errors.hpp"
#include "smmdtc/observables.hpp"

namespace smmdtc::app {

class IoError : public smmdtc::Error {
 public:
  using smmdtc::Error::Error;
};

// Shortest representation that parses back to the same double.
std::string format_double(double x);

// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

// "# schema_version=1" and "# config=<json>" lines, then the header.
std::string csv_preamble(const nlohmann::json& resolved_config, const std::vector<std::string>& header);

std::string timeseries_csv(const TimeSeries& series, const nlohmann::json& resolved_config);
std::string spectrum_csv(const SpectrumResult& spectrum, const nlohmann::json& resolved_config);

inline constexpr const char* kTimeseriesFile = "timeseries.csv";
inline constexpr const char* kSpectrumFile = "spectrum.csv";
inline constexpr const char* kSpectrumSxFile = "spectrum_sx.csv";
inline constexpr const char* kAnalysisFile = "analysis.json";

// All artifacts of one run into `dir`, created if missing.
void write_run_outputs(const RunResult& result, const std::filesystem::path& dir);

}  // namespace smmdtc::app
