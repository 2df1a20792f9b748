#include "smmdtc/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "smmdtc/errors.hpp"

namespace smmdtc {

void EvolutionConfig::validate() const {
  if (!(dt_over_period > 0.0)) throw DomainError("evolution: dt must be > 0");
  if (dt_over_period > 1e-2) {
    throw DomainError("evolution: dt must resolve the drive (dt <= T0/100)");
  }
  if (!(periods > 0.0) || !std::isfinite(periods)) throw DomainError("evolution: periods must be > 0");
  if (samples_per_period < 2) throw DomainError("evolution: samples_per_period must be >= 2");
  if (periods * samples_per_period > static_cast<double>(kMaxSamples)) {
    throw DomainError("evolution: periods * samples_per_period exceeds the output cap of 1e7");
  }
}

std::size_t EvolutionConfig::n_samples() const {
  return static_cast<std::size_t>(std::llround(periods * samples_per_period));
}

std::vector<double> sample_times(const EvolutionConfig& cfg, double period) {
  cfg.validate();
  const std::size_t n = cfg.n_samples();
  std::vector<double> t(n);
  const double spacing = period / cfg.samples_per_period;
  for (std::size_t k = 0; k < n; ++k) t[k] = static_cast<double>(k) * spacing;
  return t;
}

namespace {

// -i [H, rho] = -i (X - X^dagger) with X = H rho, valid for Hermitian H, rho.
void liouvillian(const CMatrix& h, const CMatrix& rho, CMatrix& x, CMatrix& out) {
  x.noalias() = h * rho;
  out = -kI * (x - x.adjoint());
}

std::string drift_message(std::size_t step, const char* what, double value) {
  std::ostringstream os;
  os << "stepping integrator aborted at step " << step << ": " << what << " drift " << value
     << " exceeds " << kAbortDrift << " (reduce dt)";
  return os.str();
}

}  // namespace

StepStats step_evolve(const DensityMatrix& rho0, const TimeDependentHamiltonian& h,
                      const EvolutionConfig& cfg, double period, const SampleSink& sink) {
  cfg.validate();
  if (h.dim() != rho0.dim()) throw DimensionError("step_evolve: Hamiltonian and rho differ in size");
  if (!(period > 0.0)) throw DomainError("step_evolve: period must be > 0");

  // Integer number of steps between samples; dt shrinks to fit if needed.
  const double ratio = 1.0 / (cfg.samples_per_period * cfg.dt_over_period);
  const auto steps_per_sample =
      static_cast<std::size_t>(std::max(1.0, std::ceil(ratio - 1e-9)));
  const double sample_spacing = period / cfg.samples_per_period;
  const double dt = sample_spacing / static_cast<double>(steps_per_sample);
  const std::size_t n_samples = cfg.n_samples();

  const Eigen::Index n = rho0.dim();
  CMatrix rho = rho0.matrix();
  CMatrix hmat(n, n), x(n, n), k1(n, n), k2(n, n), k3(n, n), k4(n, n), tmp(n, n);
  const double purity0 = rho0.purity();

  StepStats stats;
  stats.dt = dt;
  for (std::size_t sample = 0; sample < n_samples; ++sample) {
    const double t_sample = static_cast<double>(sample) * sample_spacing;
    if (sink) sink(sample, t_sample, rho);
    if (sample + 1 == n_samples) break;
    for (std::size_t s = 0; s < steps_per_sample; ++s) {
      const double t = t_sample + static_cast<double>(s) * dt;
      h.evaluate(t, hmat);
      liouvillian(hmat, rho, x, k1);
      h.evaluate(t + 0.5 * dt, hmat);
      tmp = rho + (0.5 * dt) * k1;
      liouvillian(hmat, tmp, x, k2);
      tmp = rho + (0.5 * dt) * k2;
      liouvillian(hmat, tmp, x, k3);
      h.evaluate(t + dt, hmat);
      tmp = rho + dt * k3;
      liouvillian(hmat, tmp, x, k4);
      rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

      const double herm = hermiticity_defect(rho);
      rho = 0.5 * (rho + rho.adjoint()).eval();
      const double trace_drift = std::abs(rho.trace() - cd{1.0});
      const double purity_drift = std::abs(rho.squaredNorm() - purity0);
      ++stats.steps;
      stats.max_hermiticity_defect = std::max(stats.max_hermiticity_defect, herm);
      stats.max_trace_drift = std::max(stats.max_trace_drift, trace_drift);
      stats.max_purity_drift = std::max(stats.max_purity_drift, purity_drift);
      if (herm > kAbortDrift) throw NumericalError(drift_message(stats.steps, "Hermiticity", herm));
      if (trace_drift > kAbortDrift) throw NumericalError(drift_message(stats.steps, "trace", trace_drift));
      if (purity_drift > kAbortDrift) throw NumericalError(drift_message(stats.steps, "purity", purity_drift));
    }
  }
  return stats;
}

std::vector<DensityMatrix> step_evolve(const DensityMatrix& rho0, const TimeDependentHamiltonian& h,
                                       const EvolutionConfig& cfg, double period, StepStats* stats) {
  std::vector<DensityMatrix> out;
  out.reserve(cfg.n_samples());
  auto s = step_evolve(rho0, h, cfg, period, [&](std::size_t, double, const CMatrix& rho) {
    out.push_back(DensityMatrix::unchecked(rho));
  });
  if (stats) *stats = s;
  return out;
}

SpectralPropagator::SpectralPropagator(const CMatrix& h, const DensityMatrix& rho0) {
  if (h.rows() != rho0.dim()) throw DimensionError("SpectralPropagator: size mismatch");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (hermiticity_defect(h) > 1e-12 * scale) {
    throw DomainError("SpectralPropagator: Hamiltonian is not Hermitian");
  }
  auto eig = eigh(h);
  eigenvalues_ = std::move(eig.values);
  eigenvectors_ = std::move(eig.vectors);
  rho_eigen_ = eigenvectors_.adjoint() * rho0.matrix() * eigenvectors_;
}

cd SpectralPropagator::expectation(const CMatrix& op, double t) const {
  const double times[] = {t};
  const CMatrix ops[] = {op};
  return expectation_series(ops, times)(0, 0);
}

CMatrix SpectralPropagator::expectation_series(std::span<const CMatrix> ops,
                                               std::span<const double> times) const {
  const Eigen::Index n = dim();
  const auto n_ops = static_cast<Eigen::Index>(ops.size());
  const auto n_t = static_cast<Eigen::Index>(times.size());

  // Stacked W_k(m, n) = rho_mn * (O_k)_nm in the eigenbasis.
  CMatrix weights(n_ops * n, n);
  for (Eigen::Index k = 0; k < n_ops; ++k) {
    const CMatrix& op = ops[static_cast<std::size_t>(k)];
    if (op.rows() != n || op.cols() != n) {
      throw DimensionError("expectation_series: operator shape mismatch");
    }
    const CMatrix op_eigen = eigenvectors_.adjoint() * op * eigenvectors_;
    weights.middleRows(k * n, n) = rho_eigen_.cwiseProduct(op_eigen.transpose());
  }

  // <O>(t) = sum_m conj(P_m) (W P)_m with P_n = exp(+i E_n t).
  constexpr Eigen::Index kChunk = 512;
  CMatrix out(n_ops, n_t);
  CMatrix phases(n, kChunk);
  CMatrix product(n_ops * n, kChunk);
  for (Eigen::Index start = 0; start < n_t; start += kChunk) {
    const Eigen::Index len = std::min(kChunk, n_t - start);
    for (Eigen::Index c = 0; c < len; ++c) {
      const double t = times[static_cast<std::size_t>(start + c)];
      for (Eigen::Index m = 0; m < n; ++m) phases(m, c) = std::polar(1.0, eigenvalues_(m) * t);
    }
    product.leftCols(len).noalias() = weights * phases.leftCols(len);
    for (Eigen::Index k = 0; k < n_ops; ++k) {
      out.block(k, start, 1, len) =
          (phases.leftCols(len).conjugate().cwiseProduct(product.block(k * n, 0, n, len)))
              .colwise()
              .sum();
    }
  }
  return out;
}

CMatrix SpectralPropagator::density_at(double t) const {
  const Eigen::Index n = dim();
  CVector phase(n);
  for (Eigen::Index m = 0; m < n; ++m) phase(m) = std::polar(1.0, -eigenvalues_(m) * t);
  const CMatrix evolved = phase.asDiagonal() * rho_eigen_ * phase.conjugate().asDiagonal();
  return eigenvectors_ * evolved * eigenvectors_.adjoint();
}

SpectralPropagator spectral_evolve(const DensityMatrix& rho0, const HamiltonianTerm& h_f) {
  return SpectralPropagator(h_f.matrix, rho0);
}

CMatrix rotate_observable(const CMatrix& op, const RVector& total_mz, double t, double omega) {
  if (op.rows() != total_mz.size() || op.cols() != total_mz.size()) {
    throw DimensionError("rotate_observable: operator does not match the basis size");
  }
  const Eigen::Index n = op.rows();
  CVector phase(n);
  for (Eigen::Index i = 0; i < n; ++i) phase(i) = std::polar(1.0, omega * t * total_mz(i));
  return phase.asDiagonal() * op * phase.conjugate().asDiagonal();
}

SiteOperator rotate_observable(const SiteOperator& op, SpinQuantum s, int n_sites, double t,
                               double omega) {
  return {op.site_index, rotate_observable(op.matrix, total_magnetization_diagonal(s, n_sites), t, omega)};
}

SteppingTrajectory::SteppingTrajectory(DensityMatrix rho0,
                                       std::shared_ptr<const TimeDependentHamiltonian> h,
                                       EvolutionConfig cfg, double period, double omega, Frame frame)
    : rho0_(std::move(rho0)),
      h_(std::move(h)),
      cfg_(cfg),
      period_(period),
      omega_(omega),
      frame_(frame),
      times_(sample_times(cfg, period)) {
  if (!h_) throw DomainError("SteppingTrajectory: null Hamiltonian");
}

CMatrix SteppingTrajectory::expectations(std::span<const CMatrix> ops) const {
  const auto n_ops = static_cast<Eigen::Index>(ops.size());
  CMatrix out(n_ops, static_cast<Eigen::Index>(times_.size()));
  stats_ = step_evolve(rho0_, *h_, cfg_, period_, [&](std::size_t i, double, const CMatrix& rho) {
    for (Eigen::Index k = 0; k < n_ops; ++k) {
      const CMatrix& op = ops[static_cast<std::size_t>(k)];
      out(k, static_cast<Eigen::Index>(i)) = op.transpose().cwiseProduct(rho).sum();
    }
  });
  return out;
}

SpectralTrajectory::SpectralTrajectory(SpectralPropagator propagator, std::vector<double> times,
                                       double omega)
    : propagator_(std::move(propagator)), times_(std::move(times)), omega_(omega) {}

CMatrix SpectralTrajectory::expectations(std::span<const CMatrix> ops) const {
  return propagator_.expectation_series(ops, times_);
}

}  // namespace smmdtc
