#include "smmdtc/app/pipeline.hpp"

#include <cmath>
#include <memory>

#include "smmdtc/errors.hpp"
#include "smmdtc/model.hpp"
#include "smmdtc/spin_algebra.hpp"
#include "smmdtc/states.hpp"

namespace smmdtc::app {

using nlohmann::json;

namespace {

DensityMatrix prepare_state(const RunConfig& cfg) {
  const ModelSpec& model = cfg.model;
  if (cfg.initial_state.kind == InitialStateKind::thermal) {
    const LabFrameHamiltonian lab(model);
    return thermal_state(lab.at(0.0), *cfg.initial_state.beta);
  }
  const InitialStateSpec spec = resolve_initial_state(cfg.initial_state, model, cfg.seed);
  return product_state(spec, model.n_sites, model.spin.dim());
}

std::unique_ptr<Trajectory> evolve(const RunConfig& cfg, const DensityMatrix& rho0) {
  const ModelSpec& model = cfg.model;
  if (cfg.evolution.backend == Backend::spectral) {
    const HamiltonianTerm h_f = build_rotating_frame(model);
    return std::make_unique<SpectralTrajectory>(spectral_evolve(rho0, h_f),
                                                sample_times(cfg.evolution, model.period()), model.omega);
  }
  return std::make_unique<SteppingTrajectory>(rho0, std::make_shared<LabFrameHamiltonian>(model),
                                              cfg.evolution, model.period(), model.omega, Frame::lab);
}

// Too few bins in the band is a short run, not a failure.
SubharmonicPeak detect_or_warn(const SpectrumResult& s, Band band, std::vector<std::string>& warnings) {
  try {
    return detect_subharmonic(s, band);
  } catch (const DomainError& e) {
    warnings.push_back(std::string("detection skipped: ") + e.what());
    return {};
  }
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json peak_json(const SubharmonicPeak& p, const SpectrumResult& s) {
  json out = {
      {"detected", p.detected},
      {"f_dtc", p.detected ? json(p.frequency) : json(nullptr)},
      {"peak_frequency", p.frequency},
      {"peak_magnitude", p.magnitude},
      {"peak_bin_magnitude", p.bin_magnitude},
      {"peak_bin", p.bin},
      {"band_median", p.band_median},
      {"bin_width", s.bin_width},
  };
  if (!p.detected) out["message"] = "no sub-harmonic detected";
  return out;
}

}  // namespace

RunResult run_pipeline(const RunConfig& cfg) {
  RunResult r;
  r.config = cfg;
  r.warnings = cfg.warnings;
  const ModelSpec& model = cfg.model;
  model.validate();

  const ChainSpinOperators ops = chain_spin_operators(model.spin, model.n_sites);
  const DensityMatrix rho0 = prepare_state(cfg);
  const std::unique_ptr<Trajectory> traj = evolve(cfg, rho0);

  const double period = model.period();
  std::vector<double> t_over_t0;
  t_over_t0.reserve(traj->times().size());
  for (double t : traj->times()) t_over_t0.push_back(t / period);
  r.series.times = t_over_t0;
  r.series.add("t_over_T0", t_over_t0);

  const auto sz = local_magnetizations(*traj, ops);
  r.series.add("m", average_magnetization(sz));
  if (cfg.output.site_series) {
    for (int j = 0; j < model.n_sites; ++j) {
      r.series.add("sz_site_" + std::to_string(j), sz[static_cast<std::size_t>(j)]);
    }
  }
  if (cfg.output.transverse) {
    const auto tr = transverse_components(*traj, ops);
    std::vector<std::vector<double>> sx_all;
    for (int j = 0; j < model.n_sites; ++j) {
      const auto& s = tr[static_cast<std::size_t>(j)];
      if (cfg.output.site_series) {
        r.series.add("sx_site_" + std::to_string(j), s.sx);
        r.series.add("sy_site_" + std::to_string(j), s.sy);
      }
      sx_all.push_back(s.sx);
    }
    r.series.add("mx", average_magnetization(sx_all));
  }
  if (auto* stepping = dynamic_cast<const SteppingTrajectory*>(traj.get())) {
    r.stepping_stats = stepping->last_stats();
  }
  r.series.validate();

  const auto discard = static_cast<std::size_t>(
      std::llround(cfg.analysis.discard_periods * cfg.evolution.samples_per_period));
  r.spectrum = dft(r.series, "m", cfg.analysis.window, discard);
  r.peak = detect_or_warn(r.spectrum, cfg.analysis.band, r.warnings);
  if (cfg.output.transverse) {
    TransverseAnalysis ta;
    ta.spectrum = dft(r.series, "mx", cfg.analysis.window, discard);
    ta.peak = detect_or_warn(ta.spectrum, cfg.analysis.band, r.warnings);
    r.transverse = ta;
  }

  r.f_dtc_analytic = f_dtc_analytic(model.b_drive / model.omega, model.d_aniso / model.omega);
  r.single_smm_gap = single_smm_spectrum(model.spin, model.d_aniso, model.b_drive).gap / model.omega;
  r.susceptibility = dtc_susceptibility(model.d_aniso, model.b_drive);

  if (r.peak.detected) {
    const std::span<const double> t(r.series.times);
    const std::span<const double> m(r.series.column("m"));
    try {
      r.envelope = envelope_analysis(t.subspan(discard), m.subspan(discard), r.peak.frequency,
                                     cfg.analysis.envelope);
    } catch (const DomainError& e) {
      r.warnings.push_back(std::string("envelope skipped: ") + e.what());
    }
  }

  if (cfg.analysis.symmetry_residual) {
    if (model.e_rhombic != 0.0) {
      r.warnings.push_back("symmetry residual skipped: needs model.e == 0");
    } else {
      r.residual = dynamical_symmetry_residual(model, cfg.analysis.symmetry_magnons);
      if (r.residual->weak_field) r.warnings.push_back("symmetry residual: B < 10 D, outside the strong-field regime");
      if (r.residual->many_magnons) r.warnings.push_back("symmetry residual: magnon number is not small");
    }
  }
  return r;
}

json RunResult::analysis_json() const {
  json out = {{"schema_version", kSchemaVersion}, {"config", config.to_json()}};
  out["sub_harmonic"] = peak_json(peak, spectrum);
  out["analytic"] = {
      {"f_dtc_s1", f_dtc_analytic},
      {"single_smm_gap", single_smm_gap},
      {"susceptibility", susceptibility},
  };
  out["parseval"] = {{"time_energy", spectrum.time_energy}, {"spectral_energy", spectrum.spectral_energy}};
  if (transverse) out["sub_harmonic_sx"] = peak_json(transverse->peak, transverse->spectrum);
  if (envelope) {
    out["envelope"] = {
        {"dtc_period", envelope->dtc_period},
        {"minima", envelope->minima_times.size()},
        {"period", optional_number(envelope->envelope_period)},
        {"ratio", optional_number(envelope->ratio_t_over_tdtc)},
        {"decay_time", optional_number(envelope->decay_time)},
    };
  } else {
    out["envelope"] = nullptr;
  }
  if (residual) {
    out["symmetry_residual"] = {
        {"magnons", config.analysis.symmetry_magnons},
        {"lambda_pred", residual->lambda_pred},
        {"residual", residual->residual},
        {"normalized", residual->normalized},
        {"weak_field", residual->weak_field},
        {"many_magnons", residual->many_magnons},
    };
  } else {
    out["symmetry_residual"] = nullptr;
  }
  json init = {{"kind", config.to_json()["initial_state"]["kind"]}};
  if (config.initial_state.beta) {
    init["beta"] = *config.initial_state.beta;
    init["thermalized_against"] = "lab-frame H(t=0), drive included";
  }
  out["initial_state"] = init;
  if (stepping_stats) {
    out["stepping"] = {
        {"steps", stepping_stats->steps},
        {"dt", stepping_stats->dt},
        {"max_trace_drift", stepping_stats->max_trace_drift},
        {"max_hermiticity_defect", stepping_stats->max_hermiticity_defect},
        {"max_purity_drift", stepping_stats->max_purity_drift},
    };
  }
  out["warnings"] = warnings;
  return out;
}

}  // namespace smmdtc::app
