#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace framelab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Eigenvalues of a Hermitian matrix, sorted descending.
using Spectrum = Eigen::VectorXd;

enum class ErrorCode {
  NotSquare,
  NotHermitian,
  NoConvergence,
  Singular,
  DimensionMismatch,
  InvalidSpec,
  InvalidSize,
  InvalidSubset,
  InvalidPattern,
  IndexOutOfRange,
  InvalidModel,
  NonFinite,
  TooLarge,
  NotApplicable,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

enum class FrameKind { Real, Complex };

/// Parameters of one (n, k) DFT code. The real kind keeps a real-valued
/// generator by pairing conjugate frequency bins, which requires odd k;
/// the complex kind admits any alpha + beta = k split of the retained bins.
struct FrameSpec {
  int n = 0;
  int k = 0;
  FrameKind kind = FrameKind::Real;
  std::optional<int> alpha_override;  // Complex kind only

  /// Throws InvalidSpec if the parameters violate a constraint.
  void validate() const;

  /// Retained low-frequency bin count: ceil(n/2) - floor((n-k)/2),
  /// unless overridden for the complex kind.
  int alpha() const;
  int beta() const { return k - alpha(); }

  double redundancy() const { return static_cast<double>(n) / k; }
};

bool operator==(const FrameSpec& a, const FrameSpec& b);

/// Codeword pattern over n positions: set positions carry data (systematic)
/// samples, clear ones carry parity. Rendered as 'x' and '-'.
class PatternMask {
 public:
  static constexpr int kMaxLength = 64;

  PatternMask() = default;
  PatternMask(int n, std::uint64_t bits);

  /// Parses "x-x-x-" style text; 'x'/'X' marks a data position.
  static PatternMask from_string(std::string_view text);
  /// Builds a mask from 1-based row indices.
  static PatternMask from_indices(int n, const std::vector<int>& rows);
  /// Every M-th position set, starting at position 1; requires k | n.
  static PatternMask evenly_spaced(int n, int k);

  std::string to_string() const;

  int n() const { return n_; }
  int popcount() const;
  bool is_data(int pos) const;  // 0-based
  std::uint64_t bits() const { return bits_; }

  /// 0-based positions of data samples, ascending.
  std::vector<int> data_positions() const;

  /// Cyclic left shift of the pattern text by s positions.
  PatternMask rotated(int s) const;
  /// Pattern text reversed.
  PatternMask reflected() const;

  friend bool operator==(const PatternMask& a, const PatternMask& b) = default;

 private:
  int n_ = 0;
  std::uint64_t bits_ = 0;  // position i stored at bit (n-1-i)
};

/// Text order with 'x' sorting before '-': the order patterns are listed in.
bool pattern_text_less(const PatternMask& a, const PatternMask& b);

}  // namespace framelab
