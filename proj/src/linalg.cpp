#include "framelab/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>
#include <vector>

namespace framelab {

namespace {

struct LuFactors {
  ComplexMatrix lu;       // L below the diagonal (unit), U on and above
  std::vector<int> perm;  // row permutation applied to the input
  int sign = 1;
  bool singular = false;
};

LuFactors lu_decompose(const ComplexMatrix& a) {
  const Eigen::Index n = a.rows();
  LuFactors f;
  f.lu = a;
  f.perm.resize(static_cast<std::size_t>(n));
  std::iota(f.perm.begin(), f.perm.end(), 0);

  const double scale = a.cwiseAbs().maxCoeff();
  const double threshold = kSingularPivotRel * scale;

  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::Index pivot_row = j;
    double pivot_mag = std::abs(f.lu(j, j));
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double mag = std::abs(f.lu(i, j));
      if (mag > pivot_mag) {
        pivot_mag = mag;
        pivot_row = i;
      }
    }
    if (pivot_mag <= threshold) {
      f.singular = true;
      return f;
    }
    if (pivot_row != j) {
      f.lu.row(pivot_row).swap(f.lu.row(j));
      std::swap(f.perm[static_cast<std::size_t>(pivot_row)],
                f.perm[static_cast<std::size_t>(j)]);
      f.sign = -f.sign;
    }
    const Complex pivot = f.lu(j, j);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const Complex factor = f.lu(i, j) / pivot;
      f.lu(i, j) = factor;
      if (j + 1 < n)
        f.lu.row(i).tail(n - j - 1) -= factor * f.lu.row(j).tail(n - j - 1);
    }
  }
  return f;
}

// NaN entries slip through tolerance comparisons, so finiteness is checked
// up front at each entry point.
void require_finite(const ComplexMatrix& a, const char* op) {
  if (!a.allFinite())
    fail(ErrorCode::NonFinite, std::string(op) + ": matrix carries NaN or Inf entries");
}

}  // namespace

Spectrum eig_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols())
    fail(ErrorCode::NotSquare, "eig_hermitian: matrix must be square");
  require_finite(a, "eig_hermitian");
  const double asymmetry = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (asymmetry > tol)
    fail(ErrorCode::NotHermitian,
         "eig_hermitian: asymmetry " + std::to_string(asymmetry) + " exceeds tolerance");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::NoConvergence, "eig_hermitian: eigensolver did not converge");

  Spectrum values = solver.eigenvalues().reverse();
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (values[i] < 0.0 && values[i] >= -tol) values[i] = 0.0;
  return values;
}

Complex determinant(const ComplexMatrix& a) {
  if (a.rows() != a.cols())
    fail(ErrorCode::NotSquare, "determinant: matrix must be square");
  require_finite(a, "determinant");
  const LuFactors f = lu_decompose(a);
  if (f.singular) return Complex(0.0, 0.0);
  Complex det(static_cast<double>(f.sign), 0.0);
  for (Eigen::Index j = 0; j < f.lu.rows(); ++j) det *= f.lu(j, j);
  return det;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  if (a.rows() != a.cols())
    fail(ErrorCode::NotSquare, "inverse: matrix must be square");
  require_finite(a, "inverse");
  const Eigen::Index n = a.rows();
  const LuFactors f = lu_decompose(a);
  if (f.singular) fail(ErrorCode::Singular, "inverse: matrix is singular");

  ComplexMatrix inv(n, n);
  ComplexVector col(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    // Forward substitution on the permuted unit vector, then back substitution.
    for (Eigen::Index i = 0; i < n; ++i) {
      Complex sum = (f.perm[static_cast<std::size_t>(i)] == c) ? Complex(1.0, 0.0)
                                                               : Complex(0.0, 0.0);
      for (Eigen::Index j = 0; j < i; ++j) sum -= f.lu(i, j) * col(j);
      col(i) = sum;
    }
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      Complex sum = col(i);
      for (Eigen::Index j = i + 1; j < n; ++j) sum -= f.lu(i, j) * col(j);
      col(i) = sum / f.lu(i, i);
    }
    inv.col(c) = col;
  }
  return inv;
}

}  // namespace framelab
