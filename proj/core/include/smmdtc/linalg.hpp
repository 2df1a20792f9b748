#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace smmdtc {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr cd kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

// Largest dense chain dimension (2S+1)^N accepted anywhere in the library.
inline constexpr std::size_t kMaxHilbertDim = 5000;

// max_ij |A - A^dagger|_ij
double hermiticity_defect(const CMatrix& a);

// Entrywise maximum of |A - B|.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

CMatrix commutator(const CMatrix& a, const CMatrix& b);

// Eigendecomposition of a Hermitian matrix; eigenvalues ascending and
// eigenvectors as orthonormal columns.
struct HermitianEigen {
  RVector values;
  CMatrix vectors;
};

HermitianEigen eigh(const CMatrix& h);

}  // namespace smmdtc
