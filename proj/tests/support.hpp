#pragma once

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "smmdtc/smmdtc.hpp"

namespace support {

inline smmdtc::CMatrix to_eigen(const oracle::Mat& m) {
  smmdtc::CMatrix r(m.n, m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r(i, j) = m(i, j);
  return r;
}

inline oracle::Mat from_eigen(const smmdtc::CMatrix& m) {
  oracle::Mat r(static_cast<int>(m.rows()));
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j) r(i, j) = m(i, j);
  return r;
}

inline double diff(const smmdtc::CMatrix& a, const oracle::Mat& b) {
  if (a.rows() != b.n || a.cols() != b.n) return INFINITY;
  double m = 0.0;
  for (int i = 0; i < b.n; ++i)
    for (int j = 0; j < b.n; ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline oracle::Params params_of(const smmdtc::ModelSpec& s) {
  oracle::Params p;
  p.two_s = s.spin.two_s();
  p.n = s.n_sites;
  p.j = s.j_exchange;
  p.d = s.d_aniso;
  p.e = s.e_rhombic;
  p.b = s.b_drive;
  p.b_static = s.b_static;
  p.omega = s.omega;
  p.ising = s.coupling == smmdtc::Coupling::ising;
  return p;
}

inline smmdtc::ModelSpec small_model(int two_s, int n, double j) {
  smmdtc::ModelSpec m;
  m.spin = smmdtc::SpinQuantum(two_s);
  m.n_sites = n;
  m.j_exchange = j;
  return m;
}

}  // namespace support
