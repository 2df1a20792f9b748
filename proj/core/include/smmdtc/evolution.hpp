#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "smmdtc/linalg.hpp"
#include "smmdtc/model.hpp"
#include "smmdtc/spin_algebra.hpp"
#include "smmdtc/states.hpp"

namespace smmdtc {

enum class Backend { stepping, spectral };

// Times are in units of the drive period T0 = 2 pi / omega.
struct EvolutionConfig {
  Backend backend = Backend::spectral;
  double dt_over_period = 1e-3;
  double periods = 1000.0;
  int samples_per_period = 20;

  static constexpr std::size_t kMaxSamples = 10'000'000;

  void validate() const;
  std::size_t n_samples() const;
};

// Absolute sample instants k * T0 / samples_per_period, k = 0 .. n_samples-1.
std::vector<double> sample_times(const EvolutionConfig& cfg, double period);

struct StepStats {
  std::size_t steps = 0;
  double dt = 0.0;
  double max_trace_drift = 0.0;
  double max_hermiticity_defect = 0.0;
  double max_purity_drift = 0.0;
};

using SampleSink = std::function<void(std::size_t index, double t, const CMatrix& rho)>;

// Fourth-order Runge-Kutta integration of d rho/dt = -i [H(t), rho], with
// rho re-Hermitized after every step. The sink sees rho at each sample
// instant. Throws NumericalError once trace, Hermiticity or purity drift
// exceeds kAbortDrift.
StepStats step_evolve(const DensityMatrix& rho0, const TimeDependentHamiltonian& h,
                      const EvolutionConfig& cfg, double period, const SampleSink& sink);

// Convenience overload that keeps every sample. Only for small systems.
std::vector<DensityMatrix> step_evolve(const DensityMatrix& rho0, const TimeDependentHamiltonian& h,
                                       const EvolutionConfig& cfg, double period,
                                       StepStats* stats = nullptr);

inline constexpr double kAbortDrift = 1e-6;

// Exact evolution under a static Hamiltonian. h is diagonalized once and
// rho(0) is kept in its eigenbasis; expectations are summed directly from
// rho_mn(0) exp(-i (E_m - E_n) t) O_nm without reconstructing rho(t).
class SpectralPropagator {
 public:
  SpectralPropagator(const CMatrix& h, const DensityMatrix& rho0);

  const RVector& eigenvalues() const { return eigenvalues_; }
  const CMatrix& eigenvectors() const { return eigenvectors_; }
  const CMatrix& rho_eigenbasis() const { return rho_eigen_; }
  Eigen::Index dim() const { return eigenvalues_.size(); }

  cd expectation(const CMatrix& op, double t) const;

  // Row k holds <ops[k]>(times[i]) in column i.
  CMatrix expectation_series(std::span<const CMatrix> ops, std::span<const double> times) const;

  CMatrix density_at(double t) const;

 private:
  RVector eigenvalues_;
  CMatrix eigenvectors_;
  CMatrix rho_eigen_;
};

SpectralPropagator spectral_evolve(const DensityMatrix& rho0, const HamiltonianTerm& h_f);

// R(t) op R(t)^dagger with R(t) = prod_j exp(+i omega t S_j^z). total_mz is
// the diagonal of sum_j S_j^z in the product basis.
CMatrix rotate_observable(const CMatrix& op, const RVector& total_mz, double t, double omega);
SiteOperator rotate_observable(const SiteOperator& op, SpinQuantum s, int n_sites, double t,
                               double omega);

enum class Frame { lab, rotating };

// Evolution output that can be queried for expectation values of arbitrary
// operators at its sample instants, in the frame it was computed in.
class Trajectory {
 public:
  virtual ~Trajectory() = default;
  virtual Frame frame() const = 0;
  // Rotation rate relating this trajectory's frame to the lab frame.
  virtual double omega() const = 0;
  virtual const std::vector<double>& times() const = 0;
  virtual CMatrix expectations(std::span<const CMatrix> ops) const = 0;
};

// Re-integrates on each query, so memory stays O(dim^2) for long runs.
class SteppingTrajectory final : public Trajectory {
 public:
  SteppingTrajectory(DensityMatrix rho0, std::shared_ptr<const TimeDependentHamiltonian> h,
                     EvolutionConfig cfg, double period, double omega, Frame frame);

  Frame frame() const override { return frame_; }
  double omega() const override { return omega_; }
  const std::vector<double>& times() const override { return times_; }
  CMatrix expectations(std::span<const CMatrix> ops) const override;
  const StepStats& last_stats() const { return stats_; }

 private:
  DensityMatrix rho0_;
  std::shared_ptr<const TimeDependentHamiltonian> h_;
  EvolutionConfig cfg_;
  double period_;
  double omega_;
  Frame frame_;
  std::vector<double> times_;
  mutable StepStats stats_;
};

class SpectralTrajectory final : public Trajectory {
 public:
  SpectralTrajectory(SpectralPropagator propagator, std::vector<double> times, double omega);

  Frame frame() const override { return Frame::rotating; }
  double omega() const override { return omega_; }
  const std::vector<double>& times() const override { return times_; }
  CMatrix expectations(std::span<const CMatrix> ops) const override;
  const SpectralPropagator& propagator() const { return propagator_; }

 private:
  SpectralPropagator propagator_;
  std::vector<double> times_;
  double omega_;
};

}  // namespace smmdtc
