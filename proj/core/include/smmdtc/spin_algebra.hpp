#pragma once

#include <cstddef>
#include <vector>

#include "smmdtc/linalg.hpp"

namespace smmdtc {

// Spin quantum number stored as 2S so half-integer spins are exact.
class SpinQuantum {
 public:
  // Throws DomainError unless two_s >= 1.
  explicit SpinQuantum(int two_s);

  // Accepts S in steps of 1/2 (0.5, 1, 1.5, ...).
  static SpinQuantum from_spin(double s);

  int two_s() const { return two_s_; }
  int dim() const { return two_s_ + 1; }
  double s() const { return 0.5 * two_s_; }
  double casimir() const { return s() * (s() + 1.0); }

  friend bool operator==(const SpinQuantum&, const SpinQuantum&) = default;

 private:
  int two_s_;
};

// Single-site spin matrices in the |S, m> basis ordered m = S, S-1, ..., -S.
struct SpinOperatorSet {
  SpinQuantum spin;
  CMatrix sx, sy, sz, s_plus, s_minus;
};

SpinOperatorSet spin_matrices(SpinQuantum s);

// A local operator embedded at one site of the chain:
// I^{(x)site} (x) local (x) I^{(x)(n-1-site)}.
struct SiteOperator {
  int site_index = 0;
  CMatrix matrix;
};

// dim^n_sites, throwing DimensionError past kMaxHilbertDim.
std::size_t chain_dimension(int dim, int n_sites);

SiteOperator embed(int site, const CMatrix& local, int n_sites, int dim);

// The three spin components embedded at every site, built once per chain.
struct ChainSpinOperators {
  SpinQuantum spin;
  int n_sites;
  std::vector<CMatrix> sx, sy, sz;

  std::size_t dim() const { return static_cast<std::size_t>(sz.front().rows()); }
  CMatrix total_sx() const;
  CMatrix total_sy() const;
  CMatrix total_sz() const;
};

ChainSpinOperators chain_spin_operators(SpinQuantum s, int n_sites);

// Eigenvalue of sum_j S_j^z on each computational basis state (the total
// z-operator is diagonal in the product basis).
RVector total_magnetization_diagonal(SpinQuantum s, int n_sites);

}  // namespace smmdtc
