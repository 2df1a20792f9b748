#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "smmdtc/evolution.hpp"
#include "smmdtc/linalg.hpp"
#include "smmdtc/model.hpp"
#include "smmdtc/spin_algebra.hpp"

namespace smmdtc {

// Uniformly sampled real traces. times are in units of T0.
struct TimeSeries {
  std::vector<double> times;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;
  std::map<std::string, std::string> metadata;

  // Checks strictly increasing, uniformly spaced times and matching lengths.
  void validate() const;
  const std::vector<double>& column(std::string_view label) const;
  void add(std::string label, std::vector<double> series);
  double spacing() const;
};

// Imaginary residue above this is a numerical-consistency error.
inline constexpr double kImaginaryTolerance = 1e-8;

// Strips the imaginary part after checking it is below kImaginaryTolerance.
std::vector<double> real_part_checked(const CMatrix& table, Eigen::Index row, std::string_view what);

// <S_j^z>(t); frame independent.
std::vector<double> local_magnetization(const Trajectory& traj, const ChainSpinOperators& ops, int site);

// All sites in one pass over the trajectory.
std::vector<std::vector<double>> local_magnetizations(const Trajectory& traj,
                                                      const ChainSpinOperators& ops);

std::vector<double> average_magnetization(const std::vector<std::vector<double>>& per_site);

struct TransverseSeries {
  std::vector<double> sx;
  std::vector<double> sy;
};

// Lab-frame <S_j^x>, <S_j^y>, converting from the rotating frame if needed.
TransverseSeries transverse_components(const Trajectory& traj, const ChainSpinOperators& ops, int site);
std::vector<TransverseSeries> transverse_components(const Trajectory& traj, const ChainSpinOperators& ops);

struct DynamicalSymmetrySeries {
  std::vector<cd> total;                      // <sum_j (S_j^z + i S_j^y)>, rotating frame
  std::vector<std::vector<double>> site_real;  // Re <S_j^z + i S_j^y> per site
};

DynamicalSymmetrySeries dynamical_symmetry_series(const Trajectory& traj, const ChainSpinOperators& ops);

// <H> at each sample in the trajectory's own frame.
std::vector<double> energy_series(const Trajectory& traj, const CMatrix& h);

struct SymmetryResidual {
  double lambda_pred = 0.0;
  double residual = 0.0;
  double normalized = 0.0;
  bool weak_field = false;    // B < 10 D, outside the intended regime
  bool many_magnons = false;  // n_magnons not small against N * 2S
};

// Predicted ladder eigenvalue B - (D/2)(S - n/N) + (S+1) D^2 / (16 B).
double symmetry_eigenvalue(SpinQuantum s, int n_sites, double b, double d, int n_magnons);

// Residual of the ladder relation [A, H_F] = lambda A for A = sum_j (S_j^z + i S_j^y),
// projected onto the lowest n_magnons + 1 eigenstates of H_F:
// r = || P([A, H_F] - lambda A) P ||_2, normalized by || P A P ||_2.
// The normalizer is floored at 1e-12 ||A||_F.
SymmetryResidual dynamical_symmetry_residual(const ModelSpec& spec, int n_magnons);
SymmetryResidual dynamical_symmetry_residual(const CMatrix& h_f, const ChainSpinOperators& ops,
                                             double b, double d, int n_magnons);

}  // namespace smmdtc
