#pragma once

#include <filesystem>
#include <string>

#include "smmdtc/app/config.hpp"

namespace smmdtc::app {

struct AnalyticOutputs {
  std::string levels_csv;  // level, energy_over_d, energy_over_omega
  std::string curve_csv;   // b_over_omega, f_dtc_s1, gap, susceptibility
  std::string summary;     // human-readable, for stdout
};

inline constexpr double kCurveStep = 0.01;
inline constexpr double kCurveMax = 1.5;

// Single-magnet levels at the configured B and the f_DTC(B) curve, no dynamics.
AnalyticOutputs analytic_spectrum(const RunConfig& cfg);

void write_analytic_outputs(const AnalyticOutputs& out, const std::filesystem::path& dir);

}  // namespace smmdtc::app
