#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "smmdtc/analysis.hpp"
#include "smmdtc/app/config.hpp"
#include "smmdtc/evolution.hpp"
#include "smmdtc/observables.hpp"

namespace smmdtc::app {

struct TransverseAnalysis {
  SpectrumResult spectrum;  // of the site-averaged lab-frame <S^x>
  SubharmonicPeak peak;
};

struct RunResult {
  RunConfig config;
  TimeSeries series;  // t_over_T0, m, sz_site_j [, sx_site_j, sy_site_j, mx]
  SpectrumResult spectrum;
  SubharmonicPeak peak;
  std::optional<TransverseAnalysis> transverse;
  std::optional<EnvelopeResult> envelope;
  std::optional<SymmetryResidual> residual;
  double f_dtc_analytic = 0.0;  // S = 1 closed form
  double single_smm_gap = 0.0;  // configured S
  double susceptibility = 0.0;
  std::optional<StepStats> stepping_stats;
  std::vector<std::string> warnings;

  nlohmann::json analysis_json() const;
};

// State preparation, evolution, observables and analysis for one config.
RunResult run_pipeline(const RunConfig& cfg);

}  // namespace smmdtc::app
