#include "framelab/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "framelab/frames.hpp"
#include "framelab/linalg.hpp"

namespace framelab {

SpectrumReport spectrum_report(const ComplexMatrix& g, const PatternMask& pattern) {
  if (pattern.n() != g.rows())
    fail(ErrorCode::DimensionMismatch, "pattern length must equal the generator row count");
  if (pattern.popcount() != g.cols())
    fail(ErrorCode::DimensionMismatch,
         "pattern must select exactly k = " + std::to_string(g.cols()) + " rows");

  const ComplexMatrix gk = subframe(g, pattern);
  const ComplexMatrix gram = gk * gk.adjoint();

  SpectrumReport report;
  report.pattern = pattern;
  report.eigenvalues = eig_hermitian(gram);
  report.lambda_max = report.eigenvalues(0);
  report.lambda_min = report.eigenvalues(report.eigenvalues.size() - 1);

  report.inv_sum = 0.0;
  for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i) {
    if (report.eigenvalues(i) < kInvSumFloor) {
      report.inv_sum_unbounded = true;
      report.inv_sum = std::numeric_limits<double>::infinity();
      break;
    }
    report.inv_sum += 1.0 / report.eigenvalues(i);
  }

  report.product = report.eigenvalues.prod();
  const std::vector<int> rows = pattern.data_positions();
  report.det_formula = vandermonde_det(static_cast<int>(g.rows()), rows);
  report.is_tight = (report.lambda_max - report.lambda_min) <= kTightnessTol;
  return report;
}

double log_vandermonde_det(int n, std::span<const int> rows) {
  if (n < 1) fail(ErrorCode::InvalidSize, "n must be at least 1");
  const int k = static_cast<int>(rows.size());
  if (k < 1 || k > n) fail(ErrorCode::InvalidSubset, "need between 1 and n rows");
  std::uint64_t seen = 0;
  for (int r : rows) {
    if (r < 0 || r >= n) fail(ErrorCode::InvalidSubset, "row index outside 0..n-1");
    if (n <= 64) {
      if (seen & (1ull << r)) fail(ErrorCode::InvalidSubset, "duplicate row index");
      seen |= 1ull << r;
    }
  }

  double log_det = -static_cast<double>(k) * std::log(static_cast<double>(k));
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      const double s =
          std::sin(std::numbers::pi * std::abs(rows[b] - rows[a]) / static_cast<double>(n));
      log_det += std::log(4.0) + 2.0 * std::log(s);
    }
  return log_det;
}

double vandermonde_det(int n, std::span<const int> rows) {
  return std::exp(log_vandermonde_det(n, rows));
}

double SineProduct::lhs() const { return std::exp(log_lhs); }
double SineProduct::rhs() const { return std::exp(log_rhs); }

SineProduct sine_product_identity(int n) {
  if (n < 2) fail(ErrorCode::InvalidSize, "the identity needs n >= 2");
  SineProduct out;
  for (int r = 1; r < n; ++r)
    out.log_lhs += 2.0 * (n - r) * std::log(std::sin(std::numbers::pi * r / n));
  out.log_rhs = n * std::log(static_cast<double>(n)) -
                static_cast<double>(n) * (n - 1) * std::log(2.0);
  return out;
}

ExtremeEigs subframe_extreme_eigs(const ComplexMatrix& g, const PatternMask& pattern) {
  const ComplexMatrix sub = subframe(g, pattern);
  const Eigen::Index p = sub.rows();
  const Eigen::Index k = sub.cols();
  if (p < 1) fail(ErrorCode::InvalidSubset, "need at least one row");

  if (p <= k) {
    const Spectrum eigs = eig_hermitian(sub * sub.adjoint());
    return {eigs(eigs.size() - 1), eigs(0)};
  }
  // Rank <= k < p, so the p x p Gram has p - k exact zero eigenvalues; the
  // nonzero ones match those of the k x k Gram.
  const Spectrum eigs = eig_hermitian(sub.adjoint() * sub);
  return {0.0, eigs(0)};
}

bool eigs_straddle_one(const ComplexMatrix& g, const PatternMask& pattern, double tol) {
  const ExtremeEigs ext = subframe_extreme_eigs(g, pattern);
  return ext.lambda_min <= 1.0 + tol && ext.lambda_max >= 1.0 - tol;
}

namespace {

// Lex-greatest rotation equals the mask itself: one representative per
// rotation orbit. Subframe Grams depend on row differences only, so
// rotations share a spectrum and the reduction is exact.
bool is_rotation_canonical(const PatternMask& mask) {
  for (int s = 1; s < mask.n(); ++s)
    if (mask.rotated(s).bits() > mask.bits()) return false;
  return true;
}

}  // namespace

LambdaMinSweep max_lambda_min_sweep(int n, int k) {
  if (n < 1 || k < 1 || k > n) fail(ErrorCode::InvalidSpec, "need 1 <= k <= n");
  if (n > 28) fail(ErrorCode::TooLarge, "subset sweeps are capped at n = 28");
  if (n % k == 0)
    fail(ErrorCode::NotApplicable,
         "n = " + std::to_string(n / k) + " * k admits tight subframes with lambda_min = 1");

  const FrameSpec spec{n, k, FrameKind::Complex, std::nullopt};
  const ComplexMatrix g = generator(spec);

  LambdaMinSweep sweep;
  sweep.bound = (spec.redundancy() - 1.0) / std::floor(spec.redundancy());
  sweep.max_lambda_min = -1.0;

  // Gosper's hack over all k-subsets of n positions; exhaustive up to
  // n = 16, rotation-orbit representatives beyond.
  const bool orbits_only = n > 16;
  const std::uint64_t limit = 1ull << n;
  std::uint64_t v = (1ull << k) - 1ull;
  while (v < limit) {
    const PatternMask mask(n, v);
    if (!orbits_only || is_rotation_canonical(mask)) {
      const ExtremeEigs ext = subframe_extreme_eigs(g, mask);
      if (ext.lambda_min > sweep.max_lambda_min) {
        sweep.max_lambda_min = ext.lambda_min;
        sweep.argmax = mask;
      }
    }
    const std::uint64_t c = v & (~v + 1ull);
    const std::uint64_t r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }

  sweep.holds = sweep.max_lambda_min <= sweep.bound + 1e-9 &&
                sweep.max_lambda_min < 1.0 - 1e-9;
  return sweep;
}

double codevector_variance(const SpectrumReport& report, double sigma_x2) {
  if (sigma_x2 < 0.0) fail(ErrorCode::InvalidModel, "source variance must be nonnegative");
  if (sigma_x2 == 0.0) return 0.0;
  return sigma_x2 * report.inv_sum / report.pattern.popcount();
}

double predicted_mse(int n, int k, double sigma_q2) {
  if (sigma_q2 < 0.0) fail(ErrorCode::InvalidModel, "noise variance must be nonnegative");
  return static_cast<double>(k) / n * sigma_q2;
}

}  // namespace framelab
