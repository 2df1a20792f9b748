#include "smmdtc/app/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "smmdtc/errors.hpp"

namespace smmdtc::app {

using nlohmann::json;

namespace {

// Typed access to one JSON object that remembers which keys were consumed,
// so leftovers can be rejected as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return obj_.contains(key);
  }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return obj_.at(key);
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_number()) throw ConfigError(key_path(key) + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(key_path(key) + ": must be finite");
    return x;
  }

  std::optional<double> optional_number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return number(key, 0.0);
  }

  long long integer(const std::string& key, long long fallback) {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_number_integer()) throw ConfigError(key_path(key) + ": expected an integer");
    return v.get<long long>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_boolean()) throw ConfigError(key_path(key) + ": expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_string()) throw ConfigError(key_path(key) + ": expected a string");
    return v.get<std::string>();
  }

  json object(const std::string& key) {
    if (!has(key)) return json::object();
    const json& v = obj_.at(key);
    if (!v.is_object()) throw ConfigError(key_path(key) + ": expected an object");
    return v;
  }

  void finish() const {
    for (const auto& [key, _] : obj_.items()) {
      if (!seen_.contains(key)) throw ConfigError(key_path(key) + ": unknown key");
    }
  }

  std::string key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  std::string where() const { return path_.empty() ? "<root>" : path_; }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

Window parse_window(const std::string& s, const std::string& path) {
  if (s == "rectangular") return Window::rectangular;
  if (s == "hann") return Window::hann;
  throw ConfigError(path + ": must be \"rectangular\" or \"hann\"");
}

const char* window_name(Window w) { return w == Window::hann ? "hann" : "rectangular"; }

Backend parse_backend(const std::string& s, const std::string& path) {
  if (s == "spectral") return Backend::spectral;
  if (s == "stepping") return Backend::stepping;
  throw ConfigError(path + ": must be \"stepping\" or \"spectral\"");
}

const char* backend_name(Backend b) { return b == Backend::stepping ? "stepping" : "spectral"; }

const char* kind_name(InitialStateKind k) {
  switch (k) {
    case InitialStateKind::thermal: return "thermal";
    case InitialStateKind::product_synchronized: return "product_synchronized";
    case InitialStateKind::product_custom: return "product_custom";
  }
  return "thermal";
}

LocalStateSpec parse_local_state(const json& obj, const std::string& path, SpinQuantum spin) {
  ObjectReader r(obj, path);
  LocalStateSpec out;
  const bool has_m = r.has("m");
  const bool has_theta = r.has("theta");
  const bool has_phi = r.has("phi");
  const bool has_random = r.has("random");
  const int chosen = int{has_m} + int{has_theta || has_phi} + int{has_random};
  if (chosen != 1) {
    throw ConfigError(path + ": give exactly one of {m}, {theta, phi} or {random: true}");
  }
  if (has_m) {
    out.kind = LocalStateSpec::Kind::basis;
    out.m = r.number("m", 0.0);
    try {
      basis_state(spin, out.m);
    } catch (const DomainError&) {
      throw ConfigError(path + ".m: must be one of S, S-1, ..., -S");
    }
  } else if (has_random) {
    if (!r.boolean("random", false)) throw ConfigError(path + ".random: must be true when present");
    out.kind = LocalStateSpec::Kind::random;
  } else {
    out.kind = LocalStateSpec::Kind::coherent;
    out.theta = r.number("theta", 0.0);
    out.phi = r.number("phi", 0.0);
  }
  r.finish();
  return out;
}

json local_state_json(const LocalStateSpec& s) {
  switch (s.kind) {
    case LocalStateSpec::Kind::basis: return {{"m", s.m}};
    case LocalStateSpec::Kind::coherent: return {{"theta", s.theta}, {"phi", s.phi}};
    case LocalStateSpec::Kind::random: return {{"random", true}};
  }
  return json::object();
}

ModelSpec parse_model(const json& obj, std::vector<std::string>& warnings) {
  ObjectReader r(obj, "model");
  ModelSpec m;
  const double spin = r.number("spin", 1.0);
  try {
    m.spin = SpinQuantum::from_spin(spin);
  } catch (const DomainError&) {
    throw ConfigError("model.spin: must be a positive multiple of 1/2");
  }
  const long long n = r.integer("n_sites", 5);
  if (n < 1) throw ConfigError("model.n_sites: must be >= 1");
  m.n_sites = static_cast<int>(n);
  m.j_exchange = r.number("j", 1.0);
  m.d_aniso = r.number("d", 1.0);
  if (!(m.d_aniso > 0.0)) throw ConfigError("model.d: must be > 0 (D sets the energy unit)");
  m.e_rhombic = r.number("e", 0.0);
  if (m.e_rhombic < 0.0) throw ConfigError("model.e: must be >= 0");
  m.omega = r.number("omega", 10.0 * kPi);
  if (!(m.omega > 0.0)) throw ConfigError("model.omega: must be > 0");

  const auto b_ratio = r.optional_number("b_over_omega");
  const auto b_abs = r.optional_number("b");
  if (b_ratio && b_abs) throw ConfigError("model.b: give either b or b_over_omega, not both");
  m.b_drive = b_abs ? *b_abs : b_ratio.value_or(0.5) * m.omega;

  const auto bs_ratio = r.optional_number("b_static_over_omega");
  const auto bs_abs = r.optional_number("b_static");
  if (bs_ratio && bs_abs) {
    throw ConfigError("model.b_static: give either b_static or b_static_over_omega, not both");
  }
  m.b_static = bs_abs ? *bs_abs : bs_ratio.value_or(1.0) * m.omega;

  const std::string coupling = r.string("coupling", "heisenberg");
  if (coupling == "heisenberg") {
    m.coupling = Coupling::heisenberg;
  } else if (coupling == "ising") {
    m.coupling = Coupling::ising;
  } else {
    throw ConfigError("model.coupling: must be \"heisenberg\" or \"ising\"");
  }
  r.finish();

  // Dimension cap violations keep their own error type.
  m.validate();
  if (m.spin.two_s() == 1 && m.d_aniso != 0.0) {
    warnings.push_back("model.spin = 1/2: (S^z)^2 is proportional to the identity, so d only shifts the energy");
  }
  return m;
}

InitialStateConfig parse_initial_state(const json& obj, const ModelSpec& model) {
  ObjectReader r(obj, "initial_state");
  InitialStateConfig out;
  const std::string kind = r.string("kind", "thermal");
  if (kind == "thermal") {
    out.kind = InitialStateKind::thermal;
    const auto beta = r.optional_number("beta");
    if (beta) {
      if (!(*beta > 0.0)) throw ConfigError("initial_state.beta: must be > 0");
      out.beta = beta;
    } else {
      if (model.j_exchange == 0.0) {
        throw ConfigError("initial_state.beta: required when model.j is 0 (no default temperature)");
      }
      out.beta = default_beta(model);
    }
  } else if (kind == "product_synchronized") {
    out.kind = InitialStateKind::product_synchronized;
    out.synchronized = r.has("local_state")
                           ? parse_local_state(r.raw("local_state"), "initial_state.local_state", model.spin)
                           : LocalStateSpec{LocalStateSpec::Kind::basis, model.spin.s()};
  } else if (kind == "product_custom") {
    out.kind = InitialStateKind::product_custom;
    if (!r.has("sites")) throw ConfigError("initial_state.sites: required for kind product_custom");
    const json& sites = r.raw("sites");
    if (!sites.is_array() || static_cast<int>(sites.size()) != model.n_sites) {
      throw ConfigError("initial_state.sites: must be an array with one entry per site (" +
                        std::to_string(model.n_sites) + ")");
    }
    for (std::size_t j = 0; j < sites.size(); ++j) {
      out.sites.push_back(
          parse_local_state(sites[j], "initial_state.sites[" + std::to_string(j) + "]", model.spin));
    }
  } else {
    throw ConfigError(
        "initial_state.kind: must be \"thermal\", \"product_synchronized\" or \"product_custom\"");
  }
  if (out.kind != InitialStateKind::thermal && obj.contains("beta")) {
    throw ConfigError("initial_state.beta: only valid for kind thermal");
  }
  r.has("beta");
  r.finish();
  return out;
}

EvolutionConfig parse_evolution(const json& obj, const ModelSpec& model) {
  ObjectReader r(obj, "evolution");
  EvolutionConfig e;
  e.backend = parse_backend(r.string("backend", "spectral"), "evolution.backend");
  e.dt_over_period = r.number("dt_over_period", 1e-3);
  e.periods = r.number("periods", 1000.0);
  const long long spp = r.integer("samples_per_period", 20);
  if (spp < 2 || spp > 1'000'000) throw ConfigError("evolution.samples_per_period: must be in [2, 1e6]");
  e.samples_per_period = static_cast<int>(spp);
  r.finish();
  try {
    e.validate();
  } catch (const DomainError& err) {
    throw ConfigError(err.what());
  }
  if (e.backend == Backend::spectral && model.e_rhombic != 0.0) {
    throw UnsupportedConfiguration(
        "evolution.backend = spectral requires model.e == 0 (the rotating-frame Hamiltonian is "
        "static only without rhombic anisotropy); use the stepping backend");
  }
  return e;
}

AnalysisConfig parse_analysis(const json& obj, const EvolutionConfig& evo) {
  ObjectReader r(obj, "analysis");
  AnalysisConfig a;
  a.window = parse_window(r.string("window", "rectangular"), "analysis.window");
  a.discard_periods = r.number("discard_periods", 0.0);
  if (a.discard_periods < 0.0 || a.discard_periods >= evo.periods) {
    throw ConfigError("analysis.discard_periods: must be in [0, evolution.periods)");
  }
  if (r.has("band")) {
    const json& band = r.raw("band");
    if (!band.is_array() || band.size() != 2 || !band[0].is_number() || !band[1].is_number()) {
      throw ConfigError("analysis.band: expected [lo, hi] in units of omega");
    }
    a.band = {band[0].get<double>(), band[1].get<double>()};
    if (!(a.band.lo >= 0.0 && a.band.lo < a.band.hi)) {
      throw ConfigError("analysis.band: need 0 <= lo < hi");
    }
  }
  a.envelope.prominence_fraction = r.number("envelope_prominence", a.envelope.prominence_fraction);
  if (!(a.envelope.prominence_fraction > 0.0 && a.envelope.prominence_fraction < 1.0)) {
    throw ConfigError("analysis.envelope_prominence: must be in (0, 1)");
  }
  a.symmetry_residual = r.boolean("symmetry_residual", true);
  const long long n = r.integer("symmetry_magnons", 1);
  if (n < 0) throw ConfigError("analysis.symmetry_magnons: must be >= 0");
  a.symmetry_magnons = static_cast<int>(n);
  r.finish();
  return a;
}

OutputConfig parse_output(const json& obj) {
  ObjectReader r(obj, "output");
  OutputConfig o;
  o.dir = r.string("dir", "out");
  if (o.dir.empty()) throw ConfigError("output.dir: must not be empty");
  o.site_series = r.boolean("site_series", true);
  o.transverse = r.boolean("transverse", false);
  r.finish();
  return o;
}

void set_path(json& doc, const std::string& path, const json& value) {
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) throw ConfigError("sweep.axes: malformed path '" + path + "'");
    if (!node->is_object()) throw ConfigError("sweep.axes: path '" + path + "' crosses a non-object");
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    if (node->is_null()) *node = json::object();
    start = dot + 1;
  }
}

}  // namespace

json RunConfig::to_json() const {
  json model_doc = {
      {"spin", model.spin.s()},
      {"n_sites", model.n_sites},
      {"j", model.j_exchange},
      {"d", model.d_aniso},
      {"e", model.e_rhombic},
      {"omega", model.omega},
      {"b", model.b_drive},
      {"b_static", model.b_static},
      {"coupling", model.coupling == Coupling::ising ? "ising" : "heisenberg"},
  };
  json init = {{"kind", kind_name(initial_state.kind)}};
  if (initial_state.kind == InitialStateKind::thermal) {
    init["beta"] = *initial_state.beta;
  } else if (initial_state.kind == InitialStateKind::product_synchronized) {
    init["local_state"] = local_state_json(initial_state.synchronized);
  } else {
    json sites = json::array();
    for (const auto& s : initial_state.sites) sites.push_back(local_state_json(s));
    init["sites"] = sites;
  }
  return {
      {"schema_version", kSchemaVersion},
      {"model", model_doc},
      {"initial_state", init},
      {"evolution",
       {{"backend", backend_name(evolution.backend)},
        {"dt_over_period", evolution.dt_over_period},
        {"periods", evolution.periods},
        {"samples_per_period", evolution.samples_per_period}}},
      {"analysis",
       {{"window", window_name(analysis.window)},
        {"discard_periods", analysis.discard_periods},
        {"band", {analysis.band.lo, analysis.band.hi}},
        {"envelope_prominence", analysis.envelope.prominence_fraction},
        {"symmetry_residual", analysis.symmetry_residual},
        {"symmetry_magnons", analysis.symmetry_magnons}}},
      {"output",
       {{"dir", output.dir}, {"site_series", output.site_series}, {"transverse", output.transverse}}},
      {"seed", seed},
  };
}

RunConfig parse_run_config(const json& doc) {
  ObjectReader r(doc, "");
  if (r.has("schema_version")) {
    const json& v = r.raw("schema_version");
    if (!v.is_number_integer() || v.get<int>() != kSchemaVersion) {
      throw ConfigError("schema_version: only version " + std::to_string(kSchemaVersion) + " is supported");
    }
  }
  RunConfig cfg;
  cfg.model = parse_model(r.object("model"), cfg.warnings);
  cfg.initial_state = parse_initial_state(r.object("initial_state"), cfg.model);
  cfg.evolution = parse_evolution(r.object("evolution"), cfg.model);
  cfg.analysis = parse_analysis(r.object("analysis"), cfg.evolution);
  cfg.output = parse_output(r.object("output"));
  if (r.has("seed")) {
    const json& s = r.raw("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      throw ConfigError("seed: expected a non-negative integer");
    }
    cfg.seed = s.get<std::uint64_t>();
  }
  r.has("sweep");
  if (doc.contains("sweep")) throw ConfigError("sweep: not allowed inside a run document");
  r.finish();
  return cfg;
}

std::size_t SweepConfig::size() const {
  std::size_t n = 1;
  for (const auto& axis : axes) n *= axis.values.size();
  return n;
}

std::vector<json> SweepConfig::point_coordinates(std::size_t index) const {
  std::vector<json> coords(axes.size());
  for (std::size_t a = axes.size(); a-- > 0;) {
    const std::size_t len = axes[a].values.size();
    coords[a] = axes[a].values[index % len];
    index /= len;
  }
  return coords;
}

json SweepConfig::point_document(std::size_t index) const {
  json doc = base;
  const auto coords = point_coordinates(index);
  for (std::size_t a = 0; a < axes.size(); ++a) set_path(doc, axes[a].path, coords[a]);
  return doc;
}

std::vector<RunConfig> SweepConfig::expand() const {
  std::vector<RunConfig> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    try {
      out.push_back(parse_run_config(point_document(i)));
    } catch (const ConfigError& e) {
      throw ConfigError("sweep point " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

LoadedConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("<root>: expected an object");
  if (!doc.contains("sweep")) return parse_run_config(doc);

  SweepConfig sweep;
  sweep.base = doc;
  sweep.base.erase("sweep");
  ObjectReader r(doc.at("sweep"), "sweep");
  const bool has_axes = r.has("axes");
  const long long par = r.integer("parallelism", 1);
  r.finish();
  if (!has_axes) throw ConfigError("sweep.axes: required");
  const json& axes = doc.at("sweep").at("axes");
  if (!axes.is_array() || axes.empty()) throw ConfigError("sweep.axes: must be a non-empty array");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const std::string where = "sweep.axes[" + std::to_string(i) + "]";
    ObjectReader ar(axes[i], where);
    SweepAxis axis;
    axis.path = ar.string("path", "");
    const bool has_values = ar.has("values");
    ar.finish();
    if (axis.path.empty()) throw ConfigError(where + ".path: required");
    if (!has_values) throw ConfigError(where + ".values: required");
    const json& values = axes[i].at("values");
    if (!values.is_array() || values.empty()) throw ConfigError(where + ".values: must be a non-empty array");
    for (const auto& v : values) axis.values.push_back(v);
    sweep.axes.push_back(std::move(axis));
  }
  if (par < 1 || par > 256) throw ConfigError("sweep.parallelism: must be in [1, 256]");
  sweep.parallelism = static_cast<int>(par);

  std::size_t n = 1;
  for (const auto& axis : sweep.axes) {
    n *= axis.values.size();
    if (n > SweepConfig::kMaxPoints) throw ConfigError("sweep.axes: Cartesian product exceeds 10000 points");
  }
  // Validate every point up front so a bad axis fails before any work starts.
  sweep.expand();
  return sweep;
}

json read_config_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return json::object();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void apply_overrides(json& doc, const Overrides& o) {
  json& target = doc.contains("sweep") ? doc : doc;
  if (o.backend) target["evolution"]["backend"] = *o.backend;
  if (o.periods) target["evolution"]["periods"] = *o.periods;
  if (o.samples_per_period) target["evolution"]["samples_per_period"] = *o.samples_per_period;
  if (o.seed) target["seed"] = *o.seed;
  if (o.out_dir) target["output"]["dir"] = *o.out_dir;
}

LoadedConfig load_config(const std::filesystem::path& path, const Overrides& overrides) {
  json doc = read_config_document(path);
  if (!doc.is_object()) throw ConfigError("<root>: expected an object");
  apply_overrides(doc, overrides);
  return parse_config(doc);
}

InitialStateSpec resolve_initial_state(const InitialStateConfig& cfg, const ModelSpec& model,
                                       std::uint64_t seed) {
  InitialStateSpec spec;
  spec.kind = cfg.kind;
  spec.beta = cfg.beta;
  if (cfg.kind == InitialStateKind::thermal) return spec;

  auto make = [&](const LocalStateSpec& s, int site) -> CVector {
    switch (s.kind) {
      case LocalStateSpec::Kind::basis: return basis_state(model.spin, s.m);
      case LocalStateSpec::Kind::coherent: return coherent_state(model.spin, s.theta, s.phi);
      case LocalStateSpec::Kind::random: {
        // splitmix64 step so neighbouring sites get unrelated streams
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(site + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return random_local_state(model.spin, z ^ (z >> 31));
      }
    }
    return basis_state(model.spin, model.spin.s());
  };
  for (int j = 0; j < model.n_sites; ++j) {
    const LocalStateSpec& s = cfg.kind == InitialStateKind::product_synchronized
                                  ? cfg.synchronized
                                  : cfg.sites[static_cast<std::size_t>(j)];
    // A synchronized random state is one draw shared by every site.
    spec.local_states.push_back(make(s, cfg.kind == InitialStateKind::product_synchronized ? 0 : j));
  }
  return spec;
}

}  // namespace smmdtc::app
