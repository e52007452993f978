#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>
#include <random>

#include "framelab/frames.hpp"
#include "framelab/linalg.hpp"
#include "oracles.hpp"

using namespace framelab;

namespace {

ComplexMatrix circulant_from_row(const std::vector<Complex>& row) {
  const int n = static_cast<int>(row.size());
  ComplexMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      m(r, c) = row[static_cast<std::size_t>(((c - r) % n + n) % n)];
  return m;
}

}  // namespace

TEST_CASE("identity spectrum") {
  const Spectrum eigs = eig_hermitian(ComplexMatrix::Identity(2, 2));
  REQUIRE(eigs.size() == 2);
  CHECK(std::abs(eigs(0) - 1.0) < 1e-12);
  CHECK(std::abs(eigs(1) - 1.0) < 1e-12);
}

TEST_CASE("2x2 closed form") {
  ComplexMatrix a(2, 2);
  a << Complex(2, 0), Complex(0, 1), Complex(0, -1), Complex(2, 0);
  const Spectrum eigs = eig_hermitian(a);
  CHECK(std::abs(eigs(0) - 3.0) < 1e-12);
  CHECK(std::abs(eigs(1) - 1.0) < 1e-12);
}

TEST_CASE("random Hermitian matches characteristic-polynomial roots") {
  std::mt19937 rng(20240817);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = oracle::random_hermitian(rng, 5);
    const Spectrum eigs = eig_hermitian(a);
    const std::vector<double> expected = oracle::hermitian_eigs_via_roots(a);
    REQUIRE(eigs.size() == 5);
    for (int i = 0; i < 5; ++i)
      CHECK(std::abs(eigs(i) - expected[static_cast<std::size_t>(i)]) <= 1e-9);
  }
}

TEST_CASE("eigenvalue sum equals trace") {
  std::mt19937 rng(7);
  for (int n = 1; n <= 8; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      const ComplexMatrix a = oracle::random_hermitian(rng, n);
      const Spectrum eigs = eig_hermitian(a);
      CHECK(std::abs(eigs.sum() - a.trace().real()) <= n * 1e-10);
    }
}

TEST_CASE("diagonal entries sit between the extreme eigenvalues") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const ComplexMatrix a = oracle::random_hermitian(rng, 6);
    const Spectrum eigs = eig_hermitian(a);
    for (int i = 0; i < 6; ++i) {
      CHECK(eigs(5) <= a(i, i).real() + 1e-10);
      CHECK(a(i, i).real() <= eigs(0) + 1e-10);
    }
  }
}

TEST_CASE("eigenvalues of a sum obey the Weyl bounds") {
  std::mt19937 rng(13);
  const int k = 6;
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = oracle::random_hermitian(rng, k);
    const ComplexMatrix b = oracle::random_hermitian(rng, k);
    const Spectrum ea = eig_hermitian(a);
    const Spectrum eb = eig_hermitian(b);
    const Spectrum es = eig_hermitian(a + b);
    for (int i = 1; i <= k; ++i)
      for (int j = 1; j <= k; ++j) {
        if (j <= i) CHECK(es(i - 1) <= ea(j - 1) + eb(i - j) + 1e-9);
        if (j >= i) CHECK(es(i - 1) >= ea(j - 1) + eb(k + i - j - 1) - 1e-9);
      }
  }
}

TEST_CASE("eig rejects bad inputs") {
  CHECK_THROWS_AS(eig_hermitian(ComplexMatrix::Zero(2, 3)), Error);
  ComplexMatrix skewed(2, 2);
  skewed << Complex(1, 0), Complex(1, 0), Complex(0, 0), Complex(1, 0);
  try {
    eig_hermitian(skewed);
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
  // Widening the tolerance admits the same matrix.
  CHECK_NOTHROW(eig_hermitian(skewed, 2.0));
}

TEST_CASE("semidefinite spectra clamp numerical negatives to zero") {
  std::mt19937 rng(17);
  std::normal_distribution<double> gauss;
  ComplexMatrix b(2, 4);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 4; ++c) b(r, c) = Complex(gauss(rng), gauss(rng));
  const Spectrum eigs = eig_hermitian(ComplexMatrix(b.adjoint() * b));  // rank <= 2
  REQUIRE(eigs.size() == 4);
  CHECK(eigs(2) == 0.0);
  CHECK(eigs(3) == 0.0);
}

TEST_CASE("determinant basics") {
  CHECK(std::abs(determinant(ComplexMatrix::Identity(4, 4)) - Complex(1, 0)) < 1e-14);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 3.0;
  CHECK(std::abs(determinant(d) - Complex(6, 0)) < 1e-14);
  CHECK_THROWS_AS(determinant(ComplexMatrix::Zero(2, 3)), Error);
}

TEST_CASE("subframe Gram determinant of the (6,3) split pattern") {
  const ComplexMatrix g = generator(FrameSpec{6, 3, FrameKind::Real, std::nullopt});
  const ComplexMatrix gk = subframe(g, PatternMask::from_string("xx-x--"));
  const Complex det = determinant(gk * gk.adjoint());
  CHECK(std::abs(det.imag()) <= 1e-10 * std::abs(det));
  CHECK(std::abs(det.real() - 4.0 / 9.0) <= 1e-12);  // prints as 0.4444
  CHECK(std::abs(det.real() - 0.4444) <= 5e-5);
}

TEST_CASE("determinant equals the eigenvalue product for Hermitian inputs") {
  std::mt19937 rng(19);
  for (int n = 2; n <= 7; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      ComplexMatrix a = oracle::random_hermitian(rng, n);
      a += 3.0 * n * ComplexMatrix::Identity(n, n);  // keep well conditioned
      const double product = eig_hermitian(a).prod();
      const Complex det = determinant(a);
      CHECK(std::abs(det.imag()) <= 1e-10 * std::abs(det));
      CHECK(std::abs(det.real() - product) <= 1e-8 * std::abs(product));
    }
}

TEST_CASE("inverse basics and multiply-back") {
  CHECK((inverse(ComplexMatrix::Identity(3, 3)) - ComplexMatrix::Identity(3, 3))
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  const ComplexMatrix di = inverse(d);
  CHECK(std::abs(di(0, 0) - Complex(0.5, 0)) < 1e-14);
  CHECK(std::abs(di(1, 1) - Complex(0.25, 0)) < 1e-14);

  std::mt19937 rng(23);
  std::normal_distribution<double> gauss;
  ComplexMatrix a(6, 6);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) a(r, c) = Complex(gauss(rng), gauss(rng));
  a += 4.0 * ComplexMatrix::Identity(6, 6);
  const ComplexMatrix product = a * inverse(a);
  CHECK((product - ComplexMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("inverse rejects singular and non-square inputs") {
  ComplexMatrix rank1(2, 2);
  rank1 << Complex(1, 0), Complex(2, 0), Complex(2, 0), Complex(4, 0);
  try {
    inverse(rank1);
    FAIL("expected Singular");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Singular);
  }
  CHECK_THROWS_AS(inverse(ComplexMatrix::Zero(2, 3)), Error);
}

TEST_CASE("non-finite entries are rejected, not silently accepted") {
  ComplexMatrix poisoned = ComplexMatrix::Identity(3, 3);
  poisoned(1, 2) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  // NaN would sail through the symmetry tolerance check otherwise.
  for (const auto& op : {+[](const ComplexMatrix& a) { (void)eig_hermitian(a); },
                         +[](const ComplexMatrix& a) { (void)determinant(a); },
                         +[](const ComplexMatrix& a) { (void)inverse(a); }}) {
    try {
      op(poisoned);
      FAIL("expected NonFinite");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonFinite);
    }
  }
}

TEST_CASE("Toeplitz predicate") {
  ComplexMatrix yes(2, 2);
  yes << Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(1, 0);
  CHECK(is_toeplitz(yes, 1e-12));
  ComplexMatrix no(2, 2);
  no << Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(4, 0);
  CHECK_FALSE(is_toeplitz(no, 1e-12));
  CHECK_THROWS_AS(is_toeplitz(ComplexMatrix::Zero(2, 3), 1e-12), Error);
}

TEST_CASE("circulant predicate") {
  const ComplexMatrix c = circulant_from_row({Complex(1, 0), Complex(2, 0), Complex(3, 0)});
  CHECK(is_circulant(c, 1e-12));
  ComplexMatrix toeplitz_only(2, 2);
  toeplitz_only << Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(1, 0);
  CHECK(is_toeplitz(toeplitz_only, 1e-12));
  CHECK_FALSE(is_circulant(toeplitz_only, 1e-12));
}

TEST_CASE("real-valued matrices work with the predicates") {
  RealMatrix m(3, 3);
  m << 1, 2, 3, 3, 1, 2, 2, 3, 1;
  CHECK(is_circulant(m, 0.0));
}
