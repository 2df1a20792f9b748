#include "smmdtc/states.hpp"

#include <cmath>
#include <random>
#include <string>

#include "smmdtc/errors.hpp"

namespace smmdtc {

DensityMatrix::DensityMatrix(CMatrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
    throw DimensionError("DensityMatrix: matrix must be square and non-empty");
  }
  const double herm = hermiticity_defect(rho_);
  if (herm > kHermitianTol) {
    throw NumericalError("DensityMatrix: not Hermitian (defect " + std::to_string(herm) + ")");
  }
  const double trace_err = std::abs(rho_.trace() - cd{1.0});
  if (trace_err > kTraceTol) {
    throw NumericalError("DensityMatrix: trace differs from 1 by " + std::to_string(trace_err));
  }
  const RVector w = Eigen::SelfAdjointEigenSolver<CMatrix>(rho_, Eigen::EigenvaluesOnly).eigenvalues();
  if (w.minCoeff() < -kPositivityTol) {
    throw NumericalError("DensityMatrix: negative eigenvalue " + std::to_string(w.minCoeff()));
  }
}

DensityMatrix DensityMatrix::unchecked(CMatrix rho) { return DensityMatrix(std::move(rho), NoCheck{}); }

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho.
  return rho_.squaredNorm();
}

cd DensityMatrix::expectation(const CMatrix& op) const {
  if (op.rows() != rho_.rows() || op.cols() != rho_.cols()) {
    throw DimensionError("DensityMatrix::expectation: operator shape mismatch");
  }
  // Tr(O rho) = sum_ij O_ij rho_ji
  return (op.transpose().cwiseProduct(rho_)).sum();
}

DensityMatrix thermal_state(const CMatrix& h, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("thermal_state: beta must be positive and finite");
  }
  if (h.rows() != h.cols() || h.rows() == 0) throw DimensionError("thermal_state: h must be square");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (hermiticity_defect(h) > 1e-12 * scale) {
    throw DomainError("thermal_state: Hamiltonian is not Hermitian");
  }
  const auto eig = eigh(h);
  const double e0 = eig.values.minCoeff();
  RVector weights = (-beta * (eig.values.array() - e0)).exp().matrix();
  weights /= weights.sum();
  CMatrix rho = eig.vectors * weights.asDiagonal() * eig.vectors.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

DensityMatrix thermal_state(const HamiltonianTerm& h, double beta) { return thermal_state(h.matrix, beta); }

DensityMatrix product_state(const InitialStateSpec& spec, int n_sites, int dim) {
  if (spec.kind == InitialStateKind::thermal) {
    throw DomainError("product_state: spec describes a thermal state");
  }
  if (static_cast<int>(spec.local_states.size()) != n_sites) {
    throw DimensionError("product_state: expected " + std::to_string(n_sites) +
                         " local states, got " + std::to_string(spec.local_states.size()));
  }
  chain_dimension(dim, n_sites);
  CVector psi = CVector::Ones(1);
  for (int j = 0; j < n_sites; ++j) {
    const CVector& local = spec.local_states[j];
    if (local.size() != dim) {
      throw DimensionError("product_state: local state " + std::to_string(j) + " has length " +
                           std::to_string(local.size()) + ", expected " + std::to_string(dim));
    }
    const double norm = local.norm();
    if (std::abs(norm - 1.0) > 1e-10) {
      throw DomainError("product_state: local state " + std::to_string(j) +
                        " is not normalized (norm " + std::to_string(norm) + ")");
    }
    CVector next(psi.size() * dim);
    for (Eigen::Index a = 0; a < psi.size(); ++a) next.segment(a * dim, dim) = psi(a) * local;
    psi = std::move(next);
  }
  CMatrix rho = psi * psi.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

double default_beta(const ModelSpec& spec) {
  if (spec.j_exchange == 0.0) {
    throw DomainError("default_beta: J = 0 has no default inverse temperature; set beta explicitly");
  }
  const double j = std::abs(spec.j_exchange);
  return spec.spin.s() > 1.0 ? 1.0 / j : 1.0 / (j * spec.spin.s());
}

CVector basis_state(SpinQuantum s, double m) {
  const double index = s.s() - m;
  const double rounded = std::round(index);
  if (std::abs(index - rounded) > 1e-9 || rounded < 0 || rounded >= s.dim()) {
    throw DomainError("basis_state: m = " + std::to_string(m) + " is not a valid projection");
  }
  CVector v = CVector::Zero(s.dim());
  v(static_cast<Eigen::Index>(rounded)) = 1.0;
  return v;
}

CVector coherent_state(SpinQuantum s, double theta, double phi) {
  // exp(-i phi Sz) exp(-i theta Sy) |S, S>, expanded in closed form.
  const int two_s = s.two_s();
  const double c = std::cos(0.5 * theta);
  const double sn = std::sin(0.5 * theta);
  CVector v(s.dim());
  for (int k = 0; k <= two_s; ++k) {
    // k flips down from m = S, i.e. m = S - k
    const double binom = std::exp(std::lgamma(two_s + 1.0) - std::lgamma(k + 1.0) -
                                  std::lgamma(two_s - k + 1.0));
    const double amp = std::sqrt(binom) * std::pow(c, two_s - k) * std::pow(sn, k);
    const double m = s.s() - k;
    v(k) = amp * std::exp(-kI * (m * phi));
  }
  return v / v.norm();
}

CVector random_local_state(SpinQuantum s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(s.dim());
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = cd{normal(rng), normal(rng)};
  return v / v.norm();
}

}  // namespace smmdtc
