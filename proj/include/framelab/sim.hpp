#pragma once

#include <cstdint>
#include <random>

#include "framelab/types.hpp"

namespace framelab {

/// Additive noise applied to codevector samples before reconstruction.
struct NoiseModel {
  enum class Kind { IidAdditive, UniformQuantizer };

  Kind kind = Kind::IidAdditive;
  double sigma_q2 = 0.0;  // IidAdditive: per-sample noise variance
  int bits = 0;           // UniformQuantizer: bits per (real) sample
  double range = 0.0;     // UniformQuantizer: quantizer spans [-range, range]

  static NoiseModel iid_additive(double sigma_q2);
  static NoiseModel uniform_quantizer(int bits, double range);
  void validate() const;
};

/// Outcome of a Monte-Carlo encoding run, with the closed-form predictions
/// computed from the same inputs.
struct SimReport {
  std::int64_t trials = 0;
  double empirical_sigma_y2 = 0.0;
  double predicted_sigma_y2 = 0.0;
  double empirical_mse = 0.0;
  double predicted_mse = 0.0;
  /// Noise variance the MSE prediction uses: the model value for iid noise,
  /// the measured quantization-error variance for the quantizer.
  double sigma_q2_effective = 0.0;
  std::uint64_t seed = 0;
};

/// Left inverse of the systematic generator in closed form: (k/n) G_k G^H.
ComplexMatrix reconstruction_operator(const ComplexMatrix& g, const PatternMask& pattern);

/// Linear reconstruction x_hat = (k/n) G_k G^H y_hat.
ComplexVector reconstruct(const ComplexMatrix& g, const PatternMask& pattern,
                          const ComplexVector& y_hat);

/// Encodes Gaussian sources with the systematic generator of (spec, pattern),
/// perturbs codevectors per the noise model, reconstructs linearly, and
/// accumulates per-sample codevector power and reconstruction MSE.
/// Reproducible: trials are split over 64 fixed substreams derived from the
/// seed, so equal inputs give bit-identical reports at any worker count.
SimReport simulate(const FrameSpec& spec, const PatternMask& pattern,
                   const NoiseModel& noise, double sigma_x2, std::int64_t trials,
                   std::uint64_t seed);

/// Substream seeding: SplitMix64 finalizer applied to
/// seed + (stream + 1) * 0x9E3779B97F4A7C15.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream);

/// Standard-normal stream: mt19937_64 drives uniform doubles in (0, 1] via
/// ((x >> 11) + 1) * 2^-53, paired through the Box-Muller transform. Both
/// steps are pinned by the standard, so draws are identical across
/// platforms for a given (seed, stream).
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream)
      : engine_(derive_stream_seed(seed, stream)) {}

  double next();

 private:
  double next_uniform();

  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace framelab
