#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "smmdtc/linalg.hpp"
#include "smmdtc/model.hpp"
#include "smmdtc/spin_algebra.hpp"

namespace smmdtc {

// Hermitian, unit-trace, positive semidefinite operator on the chain space.
class DensityMatrix {
 public:
  // Validates the invariants; throws NumericalError on violation.
  explicit DensityMatrix(CMatrix rho);

  // Skips validation. For integrator internals that monitor drift themselves.
  static DensityMatrix unchecked(CMatrix rho);

  const CMatrix& matrix() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }
  double purity() const;
  cd expectation(const CMatrix& op) const;

  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kPositivityTol = 1e-10;

 private:
  struct NoCheck {};
  DensityMatrix(CMatrix rho, NoCheck) : rho_(std::move(rho)) {}
  CMatrix rho_;
};

enum class InitialStateKind { thermal, product_synchronized, product_custom };

struct InitialStateSpec {
  InitialStateKind kind = InitialStateKind::thermal;
  std::optional<double> beta;      // thermal only; default from the model when empty
  std::vector<CVector> local_states;  // product kinds, one normalized vector per site
};

// rho = exp(-beta h) / Tr exp(-beta h), built in the eigenbasis of h with the
// ground energy subtracted before exponentiation.
DensityMatrix thermal_state(const CMatrix& h, double beta);
DensityMatrix thermal_state(const HamiltonianTerm& h, double beta);

// rho = (x)_j |psi_j><psi_j|
DensityMatrix product_state(const InitialStateSpec& spec, int n_sites, int dim);

// beta = 1/(J S) for S <= 1 and 1/J for S > 1; J = 0 has no default.
double default_beta(const ModelSpec& spec);

// Single-site states in the m = S..-S basis.
CVector basis_state(SpinQuantum s, double m);
CVector coherent_state(SpinQuantum s, double theta, double phi);
CVector random_local_state(SpinQuantum s, std::uint64_t seed);

}  // namespace smmdtc
