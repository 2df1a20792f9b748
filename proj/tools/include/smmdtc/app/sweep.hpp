#pragma once

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "smmdtc/app/config.hpp"

namespace smmdtc::app {

struct SweepPointOutcome {
  std::size_t index = 0;
  bool ok = false;
  int exit_code = 0;
  std::string error;
  bool detected = false;
  double f_dtc = 0.0;
  double peak_magnitude = 0.0;
  double f_dtc_analytic = 0.0;
  double envelope_period = std::nan("");
  double ratio = std::nan("");
};

struct SweepReport {
  std::vector<SweepPointOutcome> points;
  int exit_code() const;  // first failing point's code, 0 if all ran
};

// "point_0007" style directory name.
std::string point_directory(std::size_t index, std::size_t total);

// Runs every point with at most sweep.parallelism workers. Each point writes
// into <output.dir>/<point_directory>; sweep_summary.csv goes into output.dir.
SweepReport run_sweep(const SweepConfig& sweep);

}  // namespace smmdtc::app
