#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "smmdtc/app/analytic.hpp"
#include "smmdtc/app/config.hpp"
#include "smmdtc/app/exit_codes.hpp"
#include "smmdtc/app/output.hpp"
#include "smmdtc/app/pipeline.hpp"
#include "smmdtc/app/sweep.hpp"

namespace app = smmdtc::app;

namespace {

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

const app::RunConfig& run_config_of(const app::LoadedConfig& loaded, app::RunConfig& scratch) {
  if (const auto* run = std::get_if<app::RunConfig>(&loaded)) return *run;
  scratch = app::parse_run_config(std::get<app::SweepConfig>(loaded).base);
  return scratch;
}

int cmd_run(const app::LoadedConfig& loaded) {
  const auto* cfg = std::get_if<app::RunConfig>(&loaded);
  if (!cfg) throw app::ConfigError("sweep: 'run' takes a run document; use 'sweep' for sweeps");
  const app::RunResult r = app::run_pipeline(*cfg);
  print_warnings(r.warnings);
  app::write_run_outputs(r, cfg->output.dir);
  if (r.peak.detected) {
    std::cout << "f_dtc = " << app::format_double(r.peak.frequency) << " omega (analytic "
              << app::format_double(r.f_dtc_analytic) << ")\n";
  } else {
    std::cout << "no sub-harmonic detected\n";
  }
  std::cout << "outputs in " << cfg->output.dir << "\n";
  return app::kExitOk;
}

int cmd_sweep(const app::LoadedConfig& loaded) {
  const auto* sweep = std::get_if<app::SweepConfig>(&loaded);
  if (!sweep) throw app::ConfigError("sweep: missing; 'sweep' needs a document with a sweep section");
  const app::SweepReport report = app::run_sweep(*sweep);
  std::size_t failed = 0;
  for (const auto& p : report.points) {
    if (!p.ok) {
      ++failed;
      std::cerr << "error: point " << p.index << ": " << p.error << "\n";
    }
  }
  std::cout << report.points.size() - failed << "/" << report.points.size() << " points completed\n";
  return report.exit_code();
}

int cmd_spectrum(const app::LoadedConfig& loaded) {
  app::RunConfig scratch;
  const app::RunConfig& cfg = run_config_of(loaded, scratch);
  const app::AnalyticOutputs out = app::analytic_spectrum(cfg);
  app::write_analytic_outputs(out, cfg.output.dir);
  std::cout << out.summary;
  return app::kExitOk;
}

int cmd_validate(const app::LoadedConfig& loaded) {
  if (const auto* run = std::get_if<app::RunConfig>(&loaded)) {
    print_warnings(run->warnings);
    std::cout << run->to_json().dump(2) << "\n";
  } else {
    const auto& sweep = std::get<app::SweepConfig>(loaded);
    std::cout << "sweep with " << sweep.size() << " points, parallelism " << sweep.parallelism << "\n";
  }
  return app::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Driven single-molecule-magnet chain simulator"};
  cli.require_subcommand(1);

  std::string config_path;
  std::string backend;
  std::string out_dir;
  double periods = 0.0;
  int samples_per_period = 0;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "JSON config file")->required();
    sub->add_option("--backend", backend, "stepping or spectral")
        ->check(CLI::IsMember({"stepping", "spectral"}));
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--periods", periods, "number of drive periods")->check(CLI::PositiveNumber);
    sub->add_option("--samples-per-period", samples_per_period, "samples per drive period");
    sub->add_option("--seed", seed, "seed for random product states");
    return sub;
  };
  auto* run = add_common(cli.add_subcommand("run", "simulate one configuration"));
  auto* sweep = add_common(cli.add_subcommand("sweep", "simulate a parameter sweep"));
  auto* spectrum = add_common(cli.add_subcommand("spectrum", "analytic single-magnet spectrum, no dynamics"));
  auto* validate = add_common(cli.add_subcommand("validate", "check a config and print it resolved"));

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? app::kExitOk : app::kExitConfig;
  }

  const CLI::App* sub = cli.get_subcommands().front();
  app::Overrides overrides;
  if (sub->count("--backend")) overrides.backend = backend;
  if (sub->count("--periods")) overrides.periods = periods;
  if (sub->count("--samples-per-period")) overrides.samples_per_period = samples_per_period;
  if (sub->count("--seed")) overrides.seed = seed;
  if (sub->count("--out")) {
    overrides.out_dir = out_dir;
  } else if (const char* env = std::getenv(app::kOutDirEnv); env && *env) {
    overrides.out_dir = env;
  }

  try {
    const app::LoadedConfig loaded = app::load_config(config_path, overrides);
    if (sub == run) return cmd_run(loaded);
    if (sub == sweep) return cmd_sweep(loaded);
    if (sub == spectrum) return cmd_spectrum(loaded);
    if (sub == validate) return cmd_validate(loaded);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return app::exit_code_for(e);
  }
  return app::kExitOther;
}
