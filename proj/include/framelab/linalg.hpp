#pragma once

#include <cmath>

#include "framelab/types.hpp"

namespace framelab {

/// Default absolute tolerance for Hermitian symmetry checks.
inline constexpr double kHermitianTol = 1e-10;
/// A pivot below this fraction of the largest entry is treated as zero.
inline constexpr double kSingularPivotRel = 1e-12;

/// Eigenvalues of a Hermitian matrix, sorted descending. The input must be
/// square and Hermitian within tol (max entry of |a - a^H|); residual
/// imaginary parts are discarded and eigenvalues in [-tol, 0) are clamped
/// to zero so positive semidefinite inputs report a clean spectrum.
Spectrum eig_hermitian(const ComplexMatrix& a, double tol = kHermitianTol);

/// Determinant via partial-pivot LU. Returns 0 when a pivot falls below
/// the singularity threshold.
Complex determinant(const ComplexMatrix& a);

/// Inverse via partial-pivot LU; throws Singular on rank deficiency.
ComplexMatrix inverse(const ComplexMatrix& a);

/// True iff every diagonal of a square matrix is constant within tol.
template <typename Derived>
bool is_toeplitz(const Eigen::MatrixBase<Derived>& a, double tol) {
  const auto n = a.rows();
  if (n != a.cols()) fail(ErrorCode::NotSquare, "is_toeplitz: matrix must be square");
  for (Eigen::Index r = 0; r + 1 < n; ++r)
    for (Eigen::Index c = 0; c + 1 < n; ++c)
      if (std::abs(a(r, c) - a(r + 1, c + 1)) > tol) return false;
  return true;
}

/// True iff Toeplitz and each row wraps into the next: a(r, n-1) = a(r+1, 0).
template <typename Derived>
bool is_circulant(const Eigen::MatrixBase<Derived>& a, double tol) {
  const auto n = a.rows();
  if (n != a.cols()) fail(ErrorCode::NotSquare, "is_circulant: matrix must be square");
  if (!is_toeplitz(a, tol)) return false;
  for (Eigen::Index r = 0; r + 1 < n; ++r)
    if (std::abs(a(r, n - 1) - a(r + 1, 0)) > tol) return false;
  return true;
}

}  // namespace framelab
