#include "gdd/scenario.hpp"

#include <Eigen/LU>
#include <doctest.h>

#include <cmath>

using namespace gdd;

TEST_CASE("toeplitz_covariance") {
  const HermitianPD r = toeplitz_covariance(3, 0.95);
  CHECK(r.matrix()(0, 0).real() == 1.0);
  CHECK(r.matrix()(0, 1).real() == doctest::Approx(0.95));
  CHECK(r.matrix()(0, 2).real() == doctest::Approx(0.9025));
  CHECK(r.matrix()(2, 1).real() == doctest::Approx(0.95));
  CHECK(relative_difference(toeplitz_covariance(4, 0.0).matrix(), CMatrix::Identity(4, 4)) == 0.0);
  CHECK_THROWS_AS(toeplitz_covariance(3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(toeplitz_covariance(0, 0.5), std::invalid_argument);
}

TEST_CASE("validate_dimensions names the augmented constraint") {
  CHECK_NOTHROW(validate_dimensions({.N = 12, .K = 6, .M = 3, .J = 2, .L = 11}));
  try {
    validate_dimensions({.N = 12, .K = 3, .M = 3, .J = 2, .L = 11});
    FAIL("expected throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("L+K=14 < M+N=15") != std::string::npos);
  }
  CHECK_THROWS_AS(validate_dimensions({.N = 2, .K = 5, .M = 1, .J = 3, .L = 4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_dimensions({.N = 2, .K = 2, .M = 3, .J = 1, .L = 4}),
                  std::invalid_argument);
}

TEST_CASE("random_subspaces is deterministic and full rank") {
  const auto [a1, c1] = random_subspaces(6, 2, 3, 8, 42);
  const auto [a2, c2] = random_subspaces(6, 2, 3, 8, 42);
  const auto [a3, c3] = random_subspaces(6, 2, 3, 8, 43);
  CHECK(a1 == a2);
  CHECK(c1 == c2);
  CHECK(a1 != a3);
  CHECK(a1.rows() == 6);
  CHECK(a1.cols() == 2);
  CHECK(c1.rows() == 3);
  CHECK(c1.cols() == 8);
  const RVector s = singular_values(c1);
  CHECK(s(2) > 1e-3 * s(0));
}

TEST_CASE("sample_noise has the requested covariance") {
  const HermitianPD r = toeplitz_covariance(3, 0.6);
  Rng rng(9);
  const int cols = 200000;
  const CMatrix z = sample_noise(r, cols, rng);
  const CMatrix mean = z.rowwise().mean();
  CHECK(mean.cwiseAbs().maxCoeff() < 4.0 / std::sqrt(1e5));
  const CMatrix cov = z * z.adjoint() / static_cast<double>(cols);
  CHECK((cov - r.matrix()).cwiseAbs().maxCoeff() < 0.02);
  // Circularity: E[z z^T] = 0.
  const CMatrix pseudo = z * z.transpose() / static_cast<double>(cols);
  CHECK(pseudo.cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("make_signal") {
  CMatrix a(1, 1);
  a << 2.0;
  CMatrix c(1, 1);
  c << 3.0;
  CVector theta(1);
  theta << 1.0;
  CVector alpha(1);
  alpha << 1.0;
  const CMatrix s = make_signal(a, theta, alpha, c);
  CHECK(s(0, 0) == Complex(6.0, 0.0));

  Rng rng(10);
  const CMatrix a4 = rng.complex_normal(5, 2);
  const CMatrix c4 = rng.complex_normal(3, 7);
  const CMatrix sig = make_signal(a4, rng.complex_normal(2, 1), rng.complex_normal(3, 1), c4);
  const RVector sv = singular_values(sig);
  CHECK(sv(1) < 1e-12 * sv(0));
  CHECK_THROWS_AS(make_signal(a4, CVector(3), CVector(3), c4), std::invalid_argument);
}

TEST_CASE("snr_of and scale_to_snr") {
  SUBCASE("scalar case") {
    CMatrix a(1, 1);
    a << 2.0;
    CMatrix c(1, 1);
    c << 1.0;
    CVector one(1);
    one << 1.0;
    const Scenario sc({.N = 1, .K = 1, .M = 1, .J = 1, .L = 1}, a, c,
                      HermitianPD(CMatrix::Identity(1, 1)), {one, one});
    CHECK(snr_of(sc, one, one) == doctest::Approx(4.0));
    const SignalCoordinates s = scale_to_snr(sc, one, one, 10.0 * std::log10(8.0));
    CHECK(std::abs(s.theta(0)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(s.alpha(0) == Complex(1.0, 0.0));
  }
  SUBCASE("explicit-inverse oracle and exact targeting") {
    const Scenario sc = Scenario::random({.N = 6, .K = 9, .M = 2, .J = 3, .L = 4}, 0.8, 3);
    const CVector& th = sc.direction().theta;
    const CVector& al = sc.direction().alpha;
    const CVector s = sc.A() * th;
    const CVector b = sc.C().adjoint() * al;
    const double oracle =
        b.squaredNorm() * (s.adjoint() * sc.R().matrix().inverse() * s)(0, 0).real();
    CHECK(relative_difference(snr_of(sc, th, al), oracle) < 1e-12);
    for (double db : {-5.0, 0.0, 13.0}) {
      const SignalCoordinates scaled = scale_to_snr(sc, th, al, db);
      CHECK(relative_difference(snr_of(sc, scaled), db_to_linear(db)) < 1e-12);
    }
  }
  SUBCASE("invariant to the split of amplitude between theta and alpha") {
    const Scenario sc = Scenario::random({.N = 4, .K = 6, .M = 2, .J = 2, .L = 4}, 0.5, 8);
    const CVector& th = sc.direction().theta;
    const CVector& al = sc.direction().alpha;
    const Complex g(1.7, -0.4);
    CHECK(relative_difference(snr_of(sc, th * g, al / std::conj(g)), snr_of(sc, th, al)) < 1e-12);
  }
}

TEST_CASE("Scenario validation") {
  CHECK_THROWS_AS(Scenario::random({.N = 12, .K = 3, .M = 3, .J = 2, .L = 11}, 0.95, 1),
                  std::invalid_argument);
  const Scenario sc = Scenario::random({.N = 4, .K = 6, .M = 2, .J = 2, .L = 4}, 0.5, 1);
  CHECK_THROWS_AS(Scenario(sc.dims(), CMatrix::Zero(4, 2), sc.C(), sc.R(), sc.direction()),
                  std::invalid_argument);
  const Scenario white = sc.with_covariance(HermitianPD(CMatrix::Identity(4, 4)));
  CHECK(white.A() == sc.A());
  CHECK(white.C() == sc.C());
  CHECK(relative_difference(white.R().matrix(), CMatrix::Identity(4, 4)) == 0.0);
}
