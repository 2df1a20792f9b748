#include "smmdtc/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smmdtc/errors.hpp"

namespace smmdtc {

void TimeSeries::validate() const {
  if (labels.size() != values.size()) throw DimensionError("TimeSeries: label/value count mismatch");
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k].size() != times.size()) {
      throw DimensionError("TimeSeries: column '" + labels[k] + "' has the wrong length");
    }
  }
  if (times.size() < 2) return;
  const double h = times[1] - times[0];
  if (!(h > 0.0)) throw DomainError("TimeSeries: times must be strictly increasing");
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double expected = times[0] + static_cast<double>(i) * h;
    if (std::abs(times[i] - expected) > 1e-12 * std::max(1.0, std::abs(expected)) * 10.0 ||
        !(times[i] > times[i - 1])) {
      throw DomainError("TimeSeries: non-uniform sampling at index " + std::to_string(i));
    }
  }
}

const std::vector<double>& TimeSeries::column(std::string_view label) const {
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k] == label) return values[k];
  }
  throw DomainError("TimeSeries: no column '" + std::string(label) + "'");
}

void TimeSeries::add(std::string label, std::vector<double> series) {
  labels.push_back(std::move(label));
  values.push_back(std::move(series));
}

double TimeSeries::spacing() const {
  if (times.size() < 2) throw DomainError("TimeSeries: need at least two samples");
  return times[1] - times[0];
}

std::vector<double> real_part_checked(const CMatrix& table, Eigen::Index row, std::string_view what) {
  std::vector<double> out(static_cast<std::size_t>(table.cols()));
  for (Eigen::Index i = 0; i < table.cols(); ++i) {
    const cd v = table(row, i);
    const double scale = std::max(1.0, std::abs(v.real()));
    if (std::abs(v.imag()) > kImaginaryTolerance * scale) {
      throw NumericalError("expectation of " + std::string(what) + " has imaginary part " +
                           std::to_string(v.imag()) + " at sample " + std::to_string(i));
    }
    out[static_cast<std::size_t>(i)] = v.real();
  }
  return out;
}

std::vector<double> local_magnetization(const Trajectory& traj, const ChainSpinOperators& ops, int site) {
  if (site < 0 || site >= ops.n_sites) throw DimensionError("local_magnetization: site out of range");
  const CMatrix op[] = {ops.sz[static_cast<std::size_t>(site)]};
  return real_part_checked(traj.expectations(op), 0, "S^z");
}

std::vector<std::vector<double>> local_magnetizations(const Trajectory& traj,
                                                      const ChainSpinOperators& ops) {
  const CMatrix table = traj.expectations(ops.sz);
  std::vector<std::vector<double>> out;
  for (int j = 0; j < ops.n_sites; ++j) out.push_back(real_part_checked(table, j, "S^z"));
  return out;
}

std::vector<double> average_magnetization(const std::vector<std::vector<double>>& per_site) {
  if (per_site.empty()) throw DimensionError("average_magnetization: no sites");
  const std::size_t n = per_site.front().size();
  std::vector<double> m(n, 0.0);
  for (const auto& s : per_site) {
    if (s.size() != n) throw DimensionError("average_magnetization: series lengths differ");
    for (std::size_t i = 0; i < n; ++i) m[i] += s[i];
  }
  const double inv = 1.0 / static_cast<double>(per_site.size());
  for (auto& v : m) v *= inv;
  return m;
}

namespace {

// Rotates a pair (<S^x>, <S^y>) between frames. to_lab selects R O R^dagger.
void convert_frame(std::vector<double>& x, std::vector<double>& y, const std::vector<double>& times,
                   double omega, bool to_lab) {
  const double sign = to_lab ? 1.0 : -1.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double c = std::cos(omega * times[i]);
    const double s = sign * std::sin(omega * times[i]);
    const double xr = x[i];
    const double yr = y[i];
    x[i] = c * xr - s * yr;
    y[i] = s * xr + c * yr;
  }
}

}  // namespace

std::vector<TransverseSeries> transverse_components(const Trajectory& traj, const ChainSpinOperators& ops) {
  std::vector<CMatrix> request;
  for (int j = 0; j < ops.n_sites; ++j) {
    request.push_back(ops.sx[static_cast<std::size_t>(j)]);
    request.push_back(ops.sy[static_cast<std::size_t>(j)]);
  }
  const CMatrix table = traj.expectations(request);
  std::vector<TransverseSeries> out;
  for (int j = 0; j < ops.n_sites; ++j) {
    TransverseSeries s{real_part_checked(table, 2 * j, "S^x"), real_part_checked(table, 2 * j + 1, "S^y")};
    if (traj.frame() == Frame::rotating) convert_frame(s.sx, s.sy, traj.times(), traj.omega(), true);
    out.push_back(std::move(s));
  }
  return out;
}

TransverseSeries transverse_components(const Trajectory& traj, const ChainSpinOperators& ops, int site) {
  if (site < 0 || site >= ops.n_sites) throw DimensionError("transverse_components: site out of range");
  const CMatrix request[] = {ops.sx[static_cast<std::size_t>(site)], ops.sy[static_cast<std::size_t>(site)]};
  const CMatrix table = traj.expectations(request);
  TransverseSeries s{real_part_checked(table, 0, "S^x"), real_part_checked(table, 1, "S^y")};
  if (traj.frame() == Frame::rotating) convert_frame(s.sx, s.sy, traj.times(), traj.omega(), true);
  return s;
}

DynamicalSymmetrySeries dynamical_symmetry_series(const Trajectory& traj, const ChainSpinOperators& ops) {
  std::vector<CMatrix> request;
  for (int j = 0; j < ops.n_sites; ++j) {
    request.push_back(ops.sx[static_cast<std::size_t>(j)]);
    request.push_back(ops.sy[static_cast<std::size_t>(j)]);
    request.push_back(ops.sz[static_cast<std::size_t>(j)]);
  }
  const CMatrix table = traj.expectations(request);
  const std::size_t n_t = traj.times().size();
  DynamicalSymmetrySeries out;
  out.total.assign(n_t, cd{});
  for (int j = 0; j < ops.n_sites; ++j) {
    auto sx = real_part_checked(table, 3 * j, "S^x");
    auto sy = real_part_checked(table, 3 * j + 1, "S^y");
    const auto sz = real_part_checked(table, 3 * j + 2, "S^z");
    if (traj.frame() == Frame::lab) convert_frame(sx, sy, traj.times(), traj.omega(), false);
    std::vector<double> re(n_t);
    for (std::size_t i = 0; i < n_t; ++i) {
      re[i] = sz[i];
      out.total[i] += cd{sz[i], sy[i]};
    }
    out.site_real.push_back(std::move(re));
  }
  return out;
}

std::vector<double> energy_series(const Trajectory& traj, const CMatrix& h) {
  const CMatrix request[] = {h};
  return real_part_checked(traj.expectations(request), 0, "H");
}

double symmetry_eigenvalue(SpinQuantum s, int n_sites, double b, double d, int n_magnons) {
  if (n_sites < 1) throw DomainError("symmetry_eigenvalue: n_sites must be >= 1");
  double correction = 0.0;
  if (d != 0.0) {
    if (b == 0.0) throw DomainError("symmetry_eigenvalue: B = 0 with D != 0 is outside the expansion");
    correction = (s.s() + 1.0) * d * d / (16.0 * b);
  }
  return b - 0.5 * d * (s.s() - static_cast<double>(n_magnons) / n_sites) + correction;
}

SymmetryResidual dynamical_symmetry_residual(const CMatrix& h_f, const ChainSpinOperators& ops,
                                             double b, double d, int n_magnons) {
  const auto dim = static_cast<Eigen::Index>(ops.dim());
  if (h_f.rows() != dim || h_f.cols() != dim) throw DimensionError("dynamical_symmetry_residual: size mismatch");
  if (n_magnons < 0 || n_magnons + 1 > dim) {
    throw DomainError("dynamical_symmetry_residual: projected subspace is empty or exceeds the space");
  }
  SymmetryResidual out;
  out.lambda_pred = symmetry_eigenvalue(ops.spin, ops.n_sites, b, d, n_magnons);
  out.weak_field = std::abs(b) < 10.0 * std::abs(d);
  out.many_magnons = 2 * n_magnons > ops.n_sites * ops.spin.two_s();

  const CMatrix ladder = ops.total_sz() + kI * ops.total_sy();
  const auto eig = eigh(h_f);
  const Eigen::Index k = n_magnons + 1;
  const CMatrix low = eig.vectors.leftCols(k);

  // Projected blocks in the eigenbasis of H_F; P X P has the same 2-norm as low^dagger X low.
  const CMatrix a_block = low.adjoint() * ladder * low;
  const CMatrix r_block = low.adjoint() * (commutator(ladder, h_f) - out.lambda_pred * ladder) * low;
  Eigen::JacobiSVD<CMatrix> svd_r(r_block);
  Eigen::JacobiSVD<CMatrix> svd_a(a_block);
  out.residual = svd_r.singularValues()(0);
  // Floor for degenerate subspaces where P A P vanishes to rounding.
  const double a_norm = std::max(svd_a.singularValues()(0), 1e-12 * ladder.norm());
  out.normalized = out.residual / a_norm;
  return out;
}

SymmetryResidual dynamical_symmetry_residual(const ModelSpec& spec, int n_magnons) {
  const auto h_f = build_rotating_frame(spec);
  const auto ops = chain_spin_operators(spec.spin, spec.n_sites);
  return dynamical_symmetry_residual(h_f.matrix, ops, spec.b_drive, spec.d_aniso, n_magnons);
}

}  // namespace smmdtc
