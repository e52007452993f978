#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "framelab/frames.hpp"
#include "framelab/sim.hpp"
#include "framelab/spectral.hpp"
#include "oracles.hpp"

using namespace framelab;

namespace {

bool reports_identical(const SimReport& a, const SimReport& b) {
  return a.trials == b.trials && a.seed == b.seed &&
         a.empirical_sigma_y2 == b.empirical_sigma_y2 &&
         a.predicted_sigma_y2 == b.predicted_sigma_y2 &&
         a.empirical_mse == b.empirical_mse && a.predicted_mse == b.predicted_mse &&
         a.sigma_q2_effective == b.sigma_q2_effective;
}

}  // namespace

TEST_CASE("noiseless reconstruction is exact") {
  const FrameSpec spec{6, 3, FrameKind::Real, std::nullopt};
  const ComplexMatrix g = generator(spec);
  const PatternMask mask = PatternMask::from_string("xx-x--");
  const ComplexMatrix gsys = systematic_generator(g, mask);

  ComplexVector x = ComplexVector::Zero(3);
  x(0) = 1.0;
  const ComplexVector y = gsys * x;
  const ComplexVector recovered = reconstruct(g, mask, y);
  CHECK((recovered - x).cwiseAbs().maxCoeff() <= 1e-9);

  const ComplexVector zero = reconstruct(g, mask, ComplexVector::Zero(6));
  CHECK(zero.cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(reconstruct(g, mask, ComplexVector::Zero(5)), Error);
}

TEST_CASE("closed-form left inverse matches the normal-equation pseudoinverse") {
  for (const auto& [n, k, kind] :
       std::vector<std::tuple<int, int, FrameKind>>{{6, 3, FrameKind::Real},
                                                    {7, 5, FrameKind::Real},
                                                    {7, 4, FrameKind::Complex},
                                                    {9, 5, FrameKind::Complex}}) {
    const FrameSpec spec{n, k, kind, std::nullopt};
    const ComplexMatrix g = generator(spec);
    std::uint64_t bits = 0;  // alternate data/parity then fill up
    int placed = 0;
    for (int i = 0; i < n && placed < k; i += 2, ++placed) bits |= 1ull << (n - 1 - i);
    for (int i = 1; i < n && placed < k; i += 2, ++placed) bits |= 1ull << (n - 1 - i);
    const PatternMask mask(n, bits);

    const ComplexMatrix closed_form = reconstruction_operator(g, mask);
    const ComplexMatrix via_normal_eqs =
        oracle::pinv_normal_equations(systematic_generator(g, mask));
    CHECK((closed_form - via_normal_eqs).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("a single noiseless trial reconstructs to machine precision") {
  const SimReport report =
      simulate(FrameSpec{6, 3, FrameKind::Real, std::nullopt},
               PatternMask::from_string("x-x-x-"), NoiseModel::iid_additive(0.0), 1.0,
               1, 99);
  CHECK(report.empirical_mse <= 1e-18);
  CHECK(report.predicted_mse == 0.0);
  CHECK(report.empirical_sigma_y2 > 0.0);
}

TEST_CASE("equal seeds give bit-identical reports, different seeds differ") {
  const FrameSpec spec{6, 3, FrameKind::Real, std::nullopt};
  const PatternMask mask = PatternMask::from_string("xx-x--");
  const NoiseModel noise = NoiseModel::iid_additive(1e-2);
  const SimReport a = simulate(spec, mask, noise, 1.0, 20000, 7);
  const SimReport b = simulate(spec, mask, noise, 1.0, 20000, 7);
  CHECK(reports_identical(a, b));
  const SimReport c = simulate(spec, mask, noise, 1.0, 20000, 8);
  CHECK(a.empirical_mse != c.empirical_mse);
}

TEST_CASE("results are independent of the worker count") {
  const FrameSpec spec{7, 5, FrameKind::Real, std::nullopt};
  const PatternMask mask = PatternMask::from_string("xx-xx-x");
  const NoiseModel noise = NoiseModel::iid_additive(1e-2);

  setenv("FRAME_LAB_THREADS", "1", 1);
  const SimReport serial = simulate(spec, mask, noise, 1.0, 30011, 5);
  setenv("FRAME_LAB_THREADS", "7", 1);
  const SimReport parallel = simulate(spec, mask, noise, 1.0, 30011, 5);
  unsetenv("FRAME_LAB_THREADS");
  CHECK(reports_identical(serial, parallel));
}

TEST_CASE("iid noise obeys the variance and error laws") {
  const FrameSpec spec{6, 3, FrameKind::Real, std::nullopt};
  const NoiseModel noise = NoiseModel::iid_additive(1e-2);

  const SimReport spaced = simulate(spec, PatternMask::from_string("x-x-x-"), noise,
                                    1.0, 200000, 2024);
  CHECK(std::abs(spaced.empirical_mse - 5e-3) <= 0.05 * 5e-3);
  CHECK(std::abs(spaced.empirical_sigma_y2 - 1.0) <= 0.05);
  CHECK(spaced.predicted_mse == predicted_mse(6, 3, 1e-2));

  const SimReport consecutive = simulate(spec, PatternMask::from_string("xxx---"),
                                         noise, 1.0, 200000, 2024);
  CHECK(std::abs(consecutive.empirical_mse - 5e-3) <= 0.05 * 5e-3);
  CHECK(std::abs(consecutive.empirical_sigma_y2 - 19.0 / 3.0) <= 0.05 * 19.0 / 3.0);
  CHECK(std::abs(consecutive.predicted_sigma_y2 - 19.0 / 3.0) <= 1e-9);
}

TEST_CASE("complex codes split the noise across components") {
  const FrameSpec spec{7, 4, FrameKind::Complex, std::nullopt};
  const PatternMask mask = PatternMask::from_string("x-x-x-x");
  const SimReport report =
      simulate(spec, mask, NoiseModel::iid_additive(1e-2), 1.0, 200000, 11);
  CHECK(std::abs(report.empirical_mse - report.predicted_mse) <=
        0.05 * report.predicted_mse);
  CHECK(std::abs(report.empirical_sigma_y2 - report.predicted_sigma_y2) <=
        0.05 * report.predicted_sigma_y2);
}

TEST_CASE("quantizer mode measures its own noise variance") {
  const FrameSpec spec{6, 3, FrameKind::Real, std::nullopt};
  const PatternMask mask = PatternMask::from_string("x-x-x-");
  const SimReport report = simulate(spec, mask, NoiseModel::uniform_quantizer(7, 4.0),
                                    1.0, 200000, 31);
  CHECK(report.sigma_q2_effective > 0.0);
  // Step is 1/16, so the uncorrelated-noise idealization puts sigma_q2 near
  // step^2 / 12; the empirical value should be the same order.
  const double idealized = (1.0 / 16.0) * (1.0 / 16.0) / 12.0;
  CHECK(report.sigma_q2_effective == doctest::Approx(idealized).epsilon(0.5));
  CHECK(std::abs(report.empirical_mse - report.predicted_mse) <=
        0.10 * report.predicted_mse);
}

TEST_CASE("invalid models and trial counts are rejected") {
  const FrameSpec spec{6, 3, FrameKind::Real, std::nullopt};
  const PatternMask mask = PatternMask::from_string("x-x-x-");
  CHECK_THROWS_AS(simulate(spec, mask, NoiseModel::iid_additive(1e-2), 1.0, 0, 1), Error);
  CHECK_THROWS_AS(NoiseModel::iid_additive(-1.0), Error);
  CHECK_THROWS_AS(NoiseModel::uniform_quantizer(0, 1.0), Error);
  CHECK_THROWS_AS(NoiseModel::uniform_quantizer(8, 0.0), Error);
}

TEST_CASE("gaussian substreams are seeded apart and standard normal") {
  GaussianStream a(42, 0);
  GaussianStream b(42, 1);
  bool all_equal = true;
  for (int i = 0; i < 16; ++i)
    if (a.next() != b.next()) all_equal = false;
  CHECK_FALSE(all_equal);

  GaussianStream c(7, 3);
  double sum = 0.0, sum_sq = 0.0;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const double z = c.next();
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / draws;
  const double variance = sum_sq / draws - mean * mean;
  CHECK(std::abs(mean) <= 0.01);
  CHECK(std::abs(variance - 1.0) <= 0.02);
}
