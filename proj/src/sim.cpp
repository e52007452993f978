#include "framelab/sim.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "framelab/frames.hpp"
#include "framelab/parallel.hpp"
#include "framelab/spectral.hpp"

namespace framelab {

namespace {

constexpr int kNumShards = 64;

/// Kahan compensated accumulator; shards merge through it in fixed order.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double value) {
    const double y = value - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

struct ShardTotals {
  CompensatedSum codeword_power;  // sum over trials of ||y||^2
  CompensatedSum error_power;     // sum over trials of ||x_hat - x||^2
  CompensatedSum noise_power;     // sum over trials of ||q||^2
};

double midrise_quantize(double value, double step, double range) {
  const int levels_per_side = static_cast<int>(std::llround(range / step));
  double cell = std::floor(value / step);
  // Saturate to the outermost reconstruction level.
  cell = std::min(std::max(cell, static_cast<double>(-levels_per_side)),
                  static_cast<double>(levels_per_side - 1));
  return (cell + 0.5) * step;
}

template <typename Scalar>
Scalar draw_source(GaussianStream& rng, double sigma_x);

template <>
double draw_source<double>(GaussianStream& rng, double sigma_x) {
  return sigma_x * rng.next();
}

template <>
Complex draw_source<Complex>(GaussianStream& rng, double sigma_x) {
  // Sources are real-valued regardless of the code kind.
  return Complex(sigma_x * rng.next(), 0.0);
}

template <typename Scalar>
Scalar draw_iid_noise(GaussianStream& rng, double sigma_q);

template <>
double draw_iid_noise<double>(GaussianStream& rng, double sigma_q) {
  return sigma_q * rng.next();
}

template <>
Complex draw_iid_noise<Complex>(GaussianStream& rng, double sigma_q) {
  // Split the per-sample variance evenly over real and imaginary parts.
  const double s = sigma_q / std::numbers::sqrt2;
  const double re = s * rng.next();
  const double im = s * rng.next();
  return Complex(re, im);
}

template <typename Scalar>
Scalar quantization_noise(Scalar value, double step, double range);

template <>
double quantization_noise<double>(double value, double step, double range) {
  return midrise_quantize(value, step, range) - value;
}

template <>
Complex quantization_noise<Complex>(Complex value, double step, double range) {
  return Complex(midrise_quantize(value.real(), step, range) - value.real(),
                 midrise_quantize(value.imag(), step, range) - value.imag());
}

template <typename Scalar>
void run_shard(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& g_sys,
               const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& recon,
               const NoiseModel& noise, double sigma_x, std::int64_t shard_trials,
               std::uint64_t seed, std::uint64_t shard, ShardTotals& totals) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = g_sys.rows();
  const Eigen::Index k = g_sys.cols();
  GaussianStream rng(seed, shard);

  const double sigma_q = std::sqrt(noise.sigma_q2);
  const double step = (noise.kind == NoiseModel::Kind::UniformQuantizer)
                          ? 2.0 * noise.range / std::pow(2.0, noise.bits)
                          : 0.0;

  Vector x(k), y(n), q(n), y_hat(n), x_hat(k);
  for (std::int64_t t = 0; t < shard_trials; ++t) {
    for (Eigen::Index i = 0; i < k; ++i) x(i) = draw_source<Scalar>(rng, sigma_x);
    y.noalias() = g_sys * x;
    if (noise.kind == NoiseModel::Kind::IidAdditive) {
      for (Eigen::Index i = 0; i < n; ++i) q(i) = draw_iid_noise<Scalar>(rng, sigma_q);
    } else {
      for (Eigen::Index i = 0; i < n; ++i)
        q(i) = quantization_noise<Scalar>(y(i), step, noise.range);
    }
    y_hat = y + q;
    x_hat.noalias() = recon * y_hat;

    totals.codeword_power.add(y.squaredNorm());
    totals.error_power.add((x_hat - x).squaredNorm());
    totals.noise_power.add(q.squaredNorm());
  }
}

}  // namespace

NoiseModel NoiseModel::iid_additive(double sigma_q2) {
  NoiseModel m;
  m.kind = Kind::IidAdditive;
  m.sigma_q2 = sigma_q2;
  m.validate();
  return m;
}

NoiseModel NoiseModel::uniform_quantizer(int bits, double range) {
  NoiseModel m;
  m.kind = Kind::UniformQuantizer;
  m.bits = bits;
  m.range = range;
  m.validate();
  return m;
}

void NoiseModel::validate() const {
  if (kind == Kind::IidAdditive) {
    if (!(sigma_q2 >= 0.0)) fail(ErrorCode::InvalidModel, "sigma_q2 must be nonnegative");
  } else {
    if (bits < 1) fail(ErrorCode::InvalidModel, "quantizer needs at least 1 bit");
    if (bits > 52) fail(ErrorCode::InvalidModel, "quantizer bits capped at 52");
    if (!(range > 0.0)) fail(ErrorCode::InvalidModel, "quantizer range must be positive");
  }
}

ComplexMatrix reconstruction_operator(const ComplexMatrix& g, const PatternMask& pattern) {
  if (pattern.popcount() != g.cols())
    fail(ErrorCode::DimensionMismatch,
         "pattern must select exactly k = " + std::to_string(g.cols()) + " rows");
  const double k_over_n = static_cast<double>(g.cols()) / static_cast<double>(g.rows());
  return k_over_n * (subframe(g, pattern) * g.adjoint());
}

ComplexVector reconstruct(const ComplexMatrix& g, const PatternMask& pattern,
                          const ComplexVector& y_hat) {
  if (y_hat.size() != g.rows())
    fail(ErrorCode::DimensionMismatch, "observation length must equal n");
  return reconstruction_operator(g, pattern) * y_hat;
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double GaussianStream::next_uniform() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

SimReport simulate(const FrameSpec& spec, const PatternMask& pattern,
                   const NoiseModel& noise, double sigma_x2, std::int64_t trials,
                   std::uint64_t seed) {
  spec.validate();
  noise.validate();
  if (trials < 1) fail(ErrorCode::InvalidModel, "trials must be at least 1");
  if (!(sigma_x2 >= 0.0)) fail(ErrorCode::InvalidModel, "sigma_x2 must be nonnegative");

  const ComplexMatrix g = generator(spec);
  const ComplexMatrix g_sys = systematic_generator(g, pattern);
  const ComplexMatrix recon = reconstruction_operator(g, pattern);
  const double sigma_x = std::sqrt(sigma_x2);

  std::vector<ShardTotals> totals(kNumShards);
  const std::int64_t base = trials / kNumShards;
  const std::int64_t extra = trials % kNumShards;

  const bool real_path = spec.kind == FrameKind::Real;
  const RealMatrix g_sys_re = g_sys.real();
  const RealMatrix recon_re = recon.real();

  parallel_for_index(kNumShards, [&](std::int64_t shard) {
    const std::int64_t shard_trials = base + (shard < extra ? 1 : 0);
    if (shard_trials == 0) return;
    if (real_path)
      run_shard<double>(g_sys_re, recon_re, noise, sigma_x, shard_trials, seed,
                        static_cast<std::uint64_t>(shard), totals[static_cast<std::size_t>(shard)]);
    else
      run_shard<Complex>(g_sys, recon, noise, sigma_x, shard_trials, seed,
                         static_cast<std::uint64_t>(shard), totals[static_cast<std::size_t>(shard)]);
  });

  CompensatedSum codeword_power, error_power, noise_power;
  for (const ShardTotals& t : totals) {
    codeword_power.add(t.codeword_power.sum);
    error_power.add(t.error_power.sum);
    noise_power.add(t.noise_power.sum);
  }

  const double samples = static_cast<double>(trials) * spec.n;
  SimReport report;
  report.trials = trials;
  report.seed = seed;
  report.empirical_sigma_y2 = codeword_power.sum / samples;
  report.empirical_mse = error_power.sum / (static_cast<double>(trials) * spec.k);
  report.sigma_q2_effective = (noise.kind == NoiseModel::Kind::IidAdditive)
                                  ? noise.sigma_q2
                                  : noise_power.sum / samples;
  report.predicted_mse = predicted_mse(spec.n, spec.k, report.sigma_q2_effective);
  report.predicted_sigma_y2 =
      codevector_variance(spectrum_report(g, pattern), sigma_x2);
  return report;
}

}  // namespace framelab
