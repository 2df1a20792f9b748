#include "smmdtc/spin_algebra.hpp"

#include <cmath>
#include <string>

#include "smmdtc/errors.hpp"

namespace smmdtc {

SpinQuantum::SpinQuantum(int two_s) : two_s_(two_s) {
  if (two_s < 1) {
    throw DomainError("SpinQuantum: 2S must be >= 1 (got " + std::to_string(two_s) + ")");
  }
}

SpinQuantum SpinQuantum::from_spin(double s) {
  const double twice = 2.0 * s;
  const double rounded = std::round(twice);
  if (!std::isfinite(s) || std::abs(twice - rounded) > 1e-9) {
    throw DomainError("SpinQuantum: S must be a multiple of 1/2");
  }
  return SpinQuantum(static_cast<int>(rounded));
}

SpinOperatorSet spin_matrices(SpinQuantum s) {
  const int d = s.dim();
  const double spin = s.s();
  SpinOperatorSet ops{s, CMatrix::Zero(d, d), CMatrix::Zero(d, d), CMatrix::Zero(d, d),
                      CMatrix::Zero(d, d), CMatrix::Zero(d, d)};
  for (int i = 0; i < d; ++i) {
    const double m = spin - i;
    ops.sz(i, i) = m;
    // <m+1|S+|m> sits one row above the diagonal because m decreases with i.
    if (i > 0) ops.s_plus(i - 1, i) = std::sqrt(spin * (spin + 1.0) - m * (m + 1.0));
  }
  ops.s_minus = ops.s_plus.adjoint();
  ops.sx = 0.5 * (ops.s_plus + ops.s_minus);
  ops.sy = (ops.s_plus - ops.s_minus) / (2.0 * kI);
  return ops;
}

std::size_t chain_dimension(int dim, int n_sites) {
  if (dim < 1 || n_sites < 1) throw DimensionError("chain_dimension: dim and n_sites must be >= 1");
  std::size_t total = 1;
  for (int k = 0; k < n_sites; ++k) {
    total *= static_cast<std::size_t>(dim);
    if (total > kMaxHilbertDim) {
      throw DimensionError("chain dimension " + std::to_string(dim) + "^" +
                           std::to_string(n_sites) + " exceeds the dense cap of " +
                           std::to_string(kMaxHilbertDim));
    }
  }
  return total;
}

SiteOperator embed(int site, const CMatrix& local, int n_sites, int dim) {
  if (local.rows() != dim || local.cols() != dim) {
    throw DimensionError("embed: local operator is " + std::to_string(local.rows()) + "x" +
                         std::to_string(local.cols()) + ", expected " + std::to_string(dim) +
                         "x" + std::to_string(dim));
  }
  if (site < 0 || site >= n_sites) {
    throw DimensionError("embed: site " + std::to_string(site) + " outside [0, " +
                         std::to_string(n_sites) + ")");
  }
  const auto total = static_cast<Eigen::Index>(chain_dimension(dim, n_sites));
  Eigen::Index left = 1;
  for (int k = 0; k < site; ++k) left *= dim;
  const Eigen::Index right = total / (left * dim);

  CMatrix out = CMatrix::Zero(total, total);
  for (Eigen::Index l = 0; l < left; ++l) {
    for (Eigen::Index a = 0; a < dim; ++a) {
      for (Eigen::Index b = 0; b < dim; ++b) {
        const cd v = local(a, b);
        if (v == cd{}) continue;
        const Eigen::Index row0 = (l * dim + a) * right;
        const Eigen::Index col0 = (l * dim + b) * right;
        for (Eigen::Index r = 0; r < right; ++r) out(row0 + r, col0 + r) = v;
      }
    }
  }
  return {site, std::move(out)};
}

namespace {

CMatrix sum_of(const std::vector<CMatrix>& ops) {
  CMatrix total = CMatrix::Zero(ops.front().rows(), ops.front().cols());
  for (const auto& op : ops) total += op;
  return total;
}

}  // namespace

CMatrix ChainSpinOperators::total_sx() const { return sum_of(sx); }
CMatrix ChainSpinOperators::total_sy() const { return sum_of(sy); }
CMatrix ChainSpinOperators::total_sz() const { return sum_of(sz); }

ChainSpinOperators chain_spin_operators(SpinQuantum s, int n_sites) {
  chain_dimension(s.dim(), n_sites);
  const auto local = spin_matrices(s);
  ChainSpinOperators ops{s, n_sites, {}, {}, {}};
  for (int j = 0; j < n_sites; ++j) {
    ops.sx.push_back(embed(j, local.sx, n_sites, s.dim()).matrix);
    ops.sy.push_back(embed(j, local.sy, n_sites, s.dim()).matrix);
    ops.sz.push_back(embed(j, local.sz, n_sites, s.dim()).matrix);
  }
  return ops;
}

RVector total_magnetization_diagonal(SpinQuantum s, int n_sites) {
  const auto total = static_cast<Eigen::Index>(chain_dimension(s.dim(), n_sites));
  RVector m(total);
  for (Eigen::Index k = 0; k < total; ++k) {
    Eigen::Index rest = k;
    double sum = 0.0;
    for (int j = 0; j < n_sites; ++j) {
      sum += s.s() - static_cast<double>(rest % s.dim());
      rest /= s.dim();
    }
    m(k) = sum;
  }
  return m;
}

}  // namespace smmdtc
