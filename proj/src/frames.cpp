#include "framelab/frames.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "framelab/linalg.hpp"

namespace framelab {

namespace {

std::uint64_t length_mask(int n) {
  return (n == 64) ? ~0ull : ((1ull << n) - 1ull);
}

}  // namespace

void FrameSpec::validate() const {
  if (n < 1) fail(ErrorCode::InvalidSpec, "n must be at least 1");
  if (k < 1 || k > n) fail(ErrorCode::InvalidSpec, "k must satisfy 1 <= k <= n");
  if (kind == FrameKind::Real) {
    if (n % 2 == 0 && k % 2 == 0)
      fail(ErrorCode::InvalidSpec, "n and k cannot be even simultaneously for a real code");
    if (alpha_override)
      fail(ErrorCode::InvalidSpec, "alpha override applies to the complex kind only");
  } else if (alpha_override && (*alpha_override < 0 || *alpha_override > k)) {
    fail(ErrorCode::InvalidSpec, "alpha override must satisfy 0 <= alpha <= k");
  }
}

int FrameSpec::alpha() const {
  if (kind == FrameKind::Complex && alpha_override) return *alpha_override;
  return (n + 1) / 2 - (n - k) / 2;
}

bool operator==(const FrameSpec& a, const FrameSpec& b) {
  return a.n == b.n && a.k == b.k && a.kind == b.kind &&
         a.alpha_override == b.alpha_override;
}

PatternMask::PatternMask(int n, std::uint64_t bits) : n_(n), bits_(bits) {
  if (n < 1 || n > kMaxLength)
    fail(ErrorCode::InvalidSize, "pattern length must be between 1 and 64");
  if (bits & ~length_mask(n))
    fail(ErrorCode::InvalidPattern, "pattern bits exceed the stated length");
}

PatternMask PatternMask::from_string(std::string_view text) {
  const int n = static_cast<int>(text.size());
  if (n < 1 || n > kMaxLength)
    fail(ErrorCode::InvalidPattern, "pattern length must be between 1 and 64");
  std::uint64_t bits = 0;
  for (int i = 0; i < n; ++i) {
    const char c = text[static_cast<std::size_t>(i)];
    if (c == 'x' || c == 'X')
      bits |= 1ull << (n - 1 - i);
    else if (c != '-')
      fail(ErrorCode::InvalidPattern,
           std::string("pattern may contain only 'x' and '-', found '") + c + "'");
  }
  return PatternMask(n, bits);
}

PatternMask PatternMask::from_indices(int n, const std::vector<int>& rows) {
  if (n < 1 || n > kMaxLength)
    fail(ErrorCode::InvalidSize, "pattern length must be between 1 and 64");
  std::uint64_t bits = 0;
  for (int r : rows) {
    if (r < 1 || r > n) fail(ErrorCode::IndexOutOfRange, "row index outside 1..n");
    const std::uint64_t bit = 1ull << (n - r);
    if (bits & bit) fail(ErrorCode::InvalidSubset, "duplicate row index");
    bits |= bit;
  }
  return PatternMask(n, bits);
}

PatternMask PatternMask::evenly_spaced(int n, int k) {
  if (k < 1 || n % k != 0)
    fail(ErrorCode::InvalidSubset, "evenly spaced pattern requires k dividing n");
  const int step = n / k;
  std::uint64_t bits = 0;
  for (int i = 0; i < n; i += step) bits |= 1ull << (n - 1 - i);
  return PatternMask(n, bits);
}

std::string PatternMask::to_string() const {
  std::string out(static_cast<std::size_t>(n_), '-');
  for (int i = 0; i < n_; ++i)
    if (is_data(i)) out[static_cast<std::size_t>(i)] = 'x';
  return out;
}

int PatternMask::popcount() const { return std::popcount(bits_); }

bool PatternMask::is_data(int pos) const {
  if (pos < 0 || pos >= n_) fail(ErrorCode::IndexOutOfRange, "position outside 0..n-1");
  return (bits_ >> (n_ - 1 - pos)) & 1ull;
}

std::vector<int> PatternMask::data_positions() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(popcount()));
  for (int i = 0; i < n_; ++i)
    if (is_data(i)) out.push_back(i);
  return out;
}

PatternMask PatternMask::rotated(int s) const {
  const int shift = ((s % n_) + n_) % n_;
  if (shift == 0) return *this;
  const std::uint64_t m = length_mask(n_);
  const std::uint64_t moved = ((bits_ << shift) | (bits_ >> (n_ - shift))) & m;
  return PatternMask(n_, moved);
}

PatternMask PatternMask::reflected() const {
  std::uint64_t out = 0;
  for (int i = 0; i < n_; ++i)
    if (is_data(i)) out |= 1ull << i;
  return PatternMask(n_, out);
}

bool pattern_text_less(const PatternMask& a, const PatternMask& b) {
  if (a.n() != b.n()) return a.n() < b.n();
  return a.bits() > b.bits();  // 'x' (set) sorts before '-'
}

ComplexMatrix dft_matrix(int n) {
  if (n < 1) fail(ErrorCode::InvalidSize, "DFT matrix size must be at least 1");
  ComplexMatrix w(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int m = 0; m < n; ++m)
    for (int p = 0; p < n; ++p) {
      // Reduce the phase index mod n before touching floating point.
      const long long phase = (static_cast<long long>(m) * p) % n;
      w(m, p) = std::polar(scale, 2.0 * std::numbers::pi * static_cast<double>(phase) / n);
    }
  return w;
}

ComplexMatrix spectral_selector(const FrameSpec& spec) {
  spec.validate();
  const int alpha = spec.alpha();
  const int beta = spec.beta();
  ComplexMatrix sigma = ComplexMatrix::Zero(spec.n, spec.k);
  for (int i = 0; i < alpha; ++i) sigma(i, i) = 1.0;
  for (int i = 0; i < beta; ++i) sigma(spec.n - beta + i, alpha + i) = 1.0;
  return sigma;
}

ComplexMatrix generator(const FrameSpec& spec) {
  spec.validate();
  const ComplexMatrix wn = dft_matrix(spec.n);
  const ComplexMatrix sigma = spectral_selector(spec);
  const double gain = std::sqrt(spec.redundancy());

  if (spec.kind == FrameKind::Complex) return gain * (wn.adjoint() * sigma);

  if (spec.k % 2 == 0)
    fail(ErrorCode::InvalidSpec,
         "a real generator requires odd k: with even k the retained frequency bins "
         "cannot be conjugate-paired");
  ComplexMatrix g = gain * (wn.adjoint() * sigma * dft_matrix(spec.k));
  const double residue = g.imag().cwiseAbs().maxCoeff();
  if (residue > kRealnessTol)
    fail(ErrorCode::Internal,
         "real generator carries imaginary residue " + std::to_string(residue));
  g.imag().setZero();
  return g;
}

ComplexMatrix subframe(const ComplexMatrix& g, const PatternMask& pattern) {
  if (pattern.n() != g.rows())
    fail(ErrorCode::DimensionMismatch, "pattern length must equal the generator row count");
  const std::vector<int> rows = pattern.data_positions();
  ComplexMatrix out(static_cast<Eigen::Index>(rows.size()), g.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = g.row(rows[i]);
  return out;
}

ComplexMatrix systematic_generator(const ComplexMatrix& g, const PatternMask& pattern) {
  if (pattern.n() != g.rows())
    fail(ErrorCode::DimensionMismatch, "pattern length must equal the generator row count");
  if (pattern.popcount() != g.cols())
    fail(ErrorCode::DimensionMismatch,
         "pattern must select exactly k = " + std::to_string(g.cols()) + " data positions");
  const ComplexMatrix gk = subframe(g, pattern);
  ComplexMatrix gsys = g * inverse(gk);
  if (g.imag().cwiseAbs().maxCoeff() == 0.0) {
    const double residue = gsys.imag().cwiseAbs().maxCoeff();
    if (residue > 1e-10)
      fail(ErrorCode::Internal,
           "systematic generator of a real code carries imaginary residue " +
               std::to_string(residue));
    gsys.imag().setZero();
  }
  return gsys;
}

int circular_distance(int p, int q, int n) {
  if (n < 1) fail(ErrorCode::InvalidSize, "n must be at least 1");
  if (p < 1 || p > n || q < 1 || q > n)
    fail(ErrorCode::IndexOutOfRange, "row indices must lie in 1..n");
  const int d = std::abs(q - p);
  return std::min(d, n - d);
}

Complex generator_gram_entry(const FrameSpec& spec, int r, int s) {
  spec.validate();
  if (r < 0 || r >= spec.n || s < 0 || s >= spec.n)
    fail(ErrorCode::IndexOutOfRange, "row indices must lie in 0..n-1");
  const double phi = 2.0 * std::numbers::pi * static_cast<double>(s - r) / spec.n;
  Complex sum(0.0, 0.0);
  for (int m = 0; m < spec.alpha(); ++m) sum += std::polar(1.0, m * phi);
  for (int m = spec.n - spec.beta(); m < spec.n; ++m) sum += std::polar(1.0, m * phi);
  return sum / static_cast<double>(spec.k);
}

}  // namespace framelab
