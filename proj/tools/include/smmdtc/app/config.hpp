#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "smmdtc/analysis.hpp"
#include "smmdtc/errors.hpp"
#include "smmdtc/evolution.hpp"
#include "smmdtc/model.hpp"
#include "smmdtc/states.hpp"

namespace smmdtc::app {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kOutDirEnv = "SMMDTC_OUT_DIR";

// Schema violation in a configuration document. The message names the
// offending key path and the violated constraint.
class ConfigError : public smmdtc::Error {
 public:
  using smmdtc::Error::Error;
};

struct LocalStateSpec {
  enum class Kind { basis, coherent, random };
  Kind kind = Kind::basis;
  double m = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

struct InitialStateConfig {
  InitialStateKind kind = InitialStateKind::thermal;
  std::optional<double> beta;
  LocalStateSpec synchronized{LocalStateSpec::Kind::basis, -1.0};
  std::vector<LocalStateSpec> sites;
};

struct AnalysisConfig {
  Window window = Window::rectangular;
  double discard_periods = 0.0;
  Band band{};
  EnvelopeOptions envelope{};
  bool symmetry_residual = true;
  int symmetry_magnons = 1;
};

struct OutputConfig {
  std::string dir = "out";
  bool site_series = true;
  bool transverse = false;
};

struct RunConfig {
  ModelSpec model;
  InitialStateConfig initial_state;
  EvolutionConfig evolution;
  AnalysisConfig analysis;
  OutputConfig output;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;

  // Fully resolved document (defaults applied), embedded in every output.
  nlohmann::json to_json() const;
};

struct SweepAxis {
  std::string path;  // dotted key path, e.g. "model.b_over_omega"
  std::vector<nlohmann::json> values;
};

struct SweepConfig {
  nlohmann::json base;  // raw run document the axes are applied to
  std::vector<SweepAxis> axes;
  int parallelism = 1;

  static constexpr std::size_t kMaxPoints = 10'000;

  std::size_t size() const;
  // Cartesian product in row-major axis order, each point revalidated.
  std::vector<RunConfig> expand() const;
  // The JSON document of point `index` before parsing.
  nlohmann::json point_document(std::size_t index) const;
  std::vector<nlohmann::json> point_coordinates(std::size_t index) const;
};

using LoadedConfig = std::variant<RunConfig, SweepConfig>;

// Command-line overrides applied on top of the file.
struct Overrides {
  std::optional<std::string> backend;
  std::optional<std::string> out_dir;
  std::optional<double> periods;
  std::optional<int> samples_per_period;
  std::optional<std::uint64_t> seed;
};

RunConfig parse_run_config(const nlohmann::json& doc);
LoadedConfig parse_config(const nlohmann::json& doc);

// Reads a JSON document. An empty or whitespace-only file means "all defaults".
nlohmann::json read_config_document(const std::filesystem::path& path);

LoadedConfig load_config(const std::filesystem::path& path, const Overrides& overrides = {});

// Writes override values into a run document (or a sweep's base).
void apply_overrides(nlohmann::json& doc, const Overrides& overrides);

// Resolves per-site local states into normalized vectors; random sites draw
// from seed mixed with the site index.
InitialStateSpec resolve_initial_state(const InitialStateConfig& cfg, const ModelSpec& model,
                                       std::uint64_t seed);

}  // namespace smmdtc::app
