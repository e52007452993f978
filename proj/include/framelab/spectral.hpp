#pragma once

#include <span>

#include "framelab/types.hpp"

namespace framelab {

/// A frame is declared tight when lambda_max - lambda_min falls within this.
inline constexpr double kTightnessTol = 1e-9;
/// Eigenvalues below this make the inverse-eigenvalue sum unbounded.
inline constexpr double kInvSumFloor = 1e-12;

/// Eigen-structure of one k-row subframe Gram matrix G_k G_k^H.
struct SpectrumReport {
  PatternMask pattern;
  Spectrum eigenvalues;  // descending
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double inv_sum = 0.0;  // sum of 1/lambda_i; +inf when unbounded
  bool inv_sum_unbounded = false;
  double product = 0.0;   // product of eigenvalues
  double det_formula = 0.0;  // closed-form Vandermonde determinant
  bool is_tight = false;
};

/// Full report for the subframe selected by the pattern, which must carry
/// exactly k = g.cols() data positions.
SpectrumReport spectrum_report(const ComplexMatrix& g, const PatternMask& pattern);

/// log of det(V_k V_k^H) for the k rows (0-based) of an n-row DFT frame:
/// sum over row pairs of log(4 sin^2(pi (q - p) / n)) minus k log k.
double log_vandermonde_det(int n, std::span<const int> rows);

/// exp of the above; equals the eigenvalue product of the subframe Gram.
double vandermonde_det(int n, std::span<const int> rows);

/// Both sides of the sine-product identity
///   prod_{r=1}^{n-1} (sin^2(pi r / n))^(n-r)  =  n^n / 2^(n(n-1)),
/// kept in log form since the linear values underflow past n ~ 36.
struct SineProduct {
  double log_lhs = 0.0;
  double log_rhs = 0.0;
  double lhs() const;
  double rhs() const;
};
SineProduct sine_product_identity(int n);

struct ExtremeEigs {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

/// Extreme eigenvalues of G_p G_p^H for the p rows the pattern selects.
/// For p > k the spectrum is computed on the k x k Gram of the same rows;
/// the remaining p - k eigenvalues are exact zeros by rank.
ExtremeEigs subframe_extreme_eigs(const ComplexMatrix& g, const PatternMask& pattern);

/// True iff lambda_min <= 1 + tol and lambda_max >= 1 - tol, which every
/// unit-norm row subset satisfies by the Schur-Horn inequalities.
bool eigs_straddle_one(const ComplexMatrix& g, const PatternMask& pattern,
                       double tol = 1e-9);

/// Sweep of lambda_min(G_k G_k^H) over all k-row subsets of the (n, k) code
/// with n not a multiple of k. The maximum stays strictly below 1 and below
/// (n/k - 1) / floor(n/k).
struct LambdaMinSweep {
  double bound = 0.0;           // (n/k - 1) / floor(n/k)
  double max_lambda_min = 0.0;  // maximum over all k-subsets
  PatternMask argmax;           // a subset attaining the maximum
  bool holds = false;
};
LambdaMinSweep max_lambda_min_sweep(int n, int k);

/// Per-sample variance of codevectors y = G_sys x with E[x x^H] = sigma_x2 I:
/// sigma_x2 * inv_sum / k.
double codevector_variance(const SpectrumReport& report, double sigma_x2);

/// Mean-squared reconstruction error under uncorrelated per-sample noise of
/// variance sigma_q2: (k/n) * sigma_q2, independent of the pattern.
double predicted_mse(int n, int k, double sigma_q2);

}  // namespace framelab
