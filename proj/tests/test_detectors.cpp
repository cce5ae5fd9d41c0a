#include "gdd/detectors.hpp"
#include "gdd/verify.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace gdd;

namespace {

CMatrix scalar(double v) {
  CMatrix m(1, 1);
  m << v;
  return m;
}

}  // namespace

TEST_CASE("detector names round-trip") {
  for (DetectorKind k : kAllDetectors) CHECK(parse_detector(to_string(k)) == k);
  CHECK(to_string(DetectorKind::BoseGlrt) == "BOSE_GLRT");
  CHECK_FALSE(parse_detector("glrgdd_ru").has_value());
}

TEST_CASE("scalar examples") {
  // N = J = M = 1, K = 2, C = [1 0]: X_par = x1, X_perp = x2, S+ = |x2|^2.
  CMatrix c = CMatrix::Zero(1, 2);
  c(0, 0) = 1.0;
  const SubspaceFactorization f = factor_waveform_subspace(c);
  const CMatrix a = scalar(1.0);

  CMatrix x(1, 2);
  x << 1.0, 1.0;
  const TransformedData td = transform_data(x, CMatrix(1, 0), f);
  CHECK(glrgdd_ru(td, a).value == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(amgdd_ru(td, a).value == doctest::Approx(1.0).epsilon(1e-14));

  x << 1.0, std::sqrt(2.0);
  const TransformedData td2 = transform_data(x, CMatrix(1, 0), f);
  CHECK(td2.s_plus.matrix()(0, 0).real() == doctest::Approx(2.0));
  CHECK(amgdd_ru(td2, a).value == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(glrgdd_ru(td2, a).value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(bose_glrt(x, a, f).value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("statistics vanish when X has no component along C") {
  Rng rng(21);
  const int n = 4, k = 7, m = 2, l = 6;
  const CMatrix a = rng.complex_normal(n, 2);
  const CMatrix c = rng.complex_normal(m, k);
  const SubspaceFactorization f = factor_waveform_subspace(c);
  const CMatrix x = rng.complex_normal(n, k - m) * f.c_perp;
  const CMatrix x_l = rng.complex_normal(n, l);
  const TransformedData td = transform_data(x, x_l, f);
  CHECK(glrgdd_ru(td, a).value < 1e-20);
  CHECK(amgdd_ru(td, a).value < 1e-20);
  CHECK(glrgdd(x, x_l, a, f).value < 1e-20);
  CHECK(amgdd(x, x_l, a, f).value < 1e-20);
}

TEST_CASE("statistics agree with the explicit-inverse reference forms") {
  for (Regime regime : {Regime::AllValid, Regime::SampleAbundant, Regime::LowSample}) {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      const Instance inst = random_instance(regime, seed);
      CAPTURE(seed);
      CAPTURE(inst.dims.to_string());
      const StatisticEvaluator eval(inst.a, inst.c);
      CHECK(relative_difference(eval.evaluate(DetectorKind::GlrgddRu, inst.x, inst.x_l),
                                oracle::glr_ru(inst.x, inst.x_l, inst.a, inst.c)) < 1e-8);
      CHECK(relative_difference(eval.evaluate(DetectorKind::AmgddRu, inst.x, inst.x_l),
                                oracle::amf_ru(inst.x, inst.x_l, inst.a, inst.c)) < 1e-8);
      if (inst.dims.L >= inst.dims.N) {
        CHECK(relative_difference(eval.evaluate(DetectorKind::Glrgdd, inst.x, inst.x_l),
                                  oracle::glr_raw(inst.x, inst.x_l, inst.a, inst.c)) < 1e-8);
        CHECK(relative_difference(eval.evaluate(DetectorKind::Amgdd, inst.x, inst.x_l),
                                  oracle::amf_projection(inst.x, inst.x_l, inst.a, inst.c)) < 1e-8);
      }
      if (inst.dims.K >= inst.dims.M + inst.dims.N) {
        const CMatrix none(inst.dims.N, 0);
        CHECK(relative_difference(bose_glrt(inst.x, inst.a, inst.c).value,
                                  oracle::glr_ru(inst.x, none, inst.a, inst.c)) < 1e-8);
      }
    }
  }
}

TEST_CASE("GLRGDD is a monotone function of GLRGDD_RU when L >= N") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const Instance inst = random_instance(Regime::SampleAbundant, seed);
    CAPTURE(seed);
    const double ru = *statistic(DetectorKind::GlrgddRu, inst);
    CHECK(ru >= 0.0);
    CHECK(ru < 1.0);
    CHECK(monotone_map_error(inst) < 1e-8);
  }
}

TEST_CASE("degenerate agreements") {
  for (std::uint64_t seed = 200; seed < 230; ++seed) {
    CHECK(bose_agreement_error(random_instance(Regime::NoTraining, seed)) <= 1e-12);
    CHECK(amgdd_agreement_error(random_instance(Regime::SquareWaveform, seed)) <= 1e-12);
  }
}

TEST_CASE("validity rules") {
  const Dimensions low{.N = 12, .K = 10, .M = 3, .J = 2, .L = 11};
  CHECK_FALSE(validity_error(DetectorKind::GlrgddRu, low));
  CHECK_FALSE(validity_error(DetectorKind::AmgddRu, low));
  CHECK(*validity_error(DetectorKind::Glrgdd, low) == "GLRGDD requires L ≥ N (L=11, N=12)");
  CHECK(*validity_error(DetectorKind::Amgdd, low) == "AMGDD requires L ≥ N (L=11, N=12)");
  CHECK(*validity_error(DetectorKind::BoseGlrt, low) == "BOSE_GLRT requires K ≥ M+N (K=10, M+N=15)");

  const Dimensions too_small{.N = 12, .K = 3, .M = 3, .J = 2, .L = 11};
  CHECK(validity_error(DetectorKind::GlrgddRu, too_small)->find("L+K=14 < M+N=15") !=
        std::string::npos);

  SUBCASE("Bose boundary K = M + N") {
    Rng rng(22);
    const int n = 4, m = 2;
    const CMatrix a = rng.complex_normal(n, 1);
    const double t = bose_glrt(rng.complex_normal(n, m + n), a, rng.complex_normal(m, m + n)).value;
    CHECK(t >= 0.0);
    CHECK(t < 1.0);
    CHECK_THROWS_WITH_AS(bose_glrt(rng.complex_normal(n, m + n - 1), a,
                                   rng.complex_normal(m, m + n - 1)),
                         "Bose constraint violated: K=5 < M+N=6", std::invalid_argument);
  }
  SUBCASE("conventional SCM needs L >= N") {
    Rng rng(23);
    CHECK_THROWS_AS(glrgdd(rng.complex_normal(4, 6), rng.complex_normal(4, 3),
                           rng.complex_normal(4, 1), rng.complex_normal(2, 6)),
                    std::invalid_argument);
  }
}

TEST_CASE("evaluator matches the individual entry points") {
  const Instance inst = random_instance(Regime::AllValid, 7);
  const StatisticEvaluator eval(inst.a, inst.c);
  const std::vector<double> all = eval.evaluate(kAllDetectors, inst.x, inst.x_l);
  const SubspaceFactorization f = factor_waveform_subspace(inst.c);
  const TransformedData td = transform_data(inst.x, inst.x_l, f);
  CHECK(all[0] == glrgdd_ru(td, inst.a).value);
  CHECK(all[1] == amgdd_ru(td, inst.a).value);
  CHECK(all[2] == glrgdd(inst.x, inst.x_l, inst.a, f).value);
  CHECK(all[3] == amgdd(inst.x, inst.x_l, inst.a, f).value);
  CHECK(all[4] == bose_glrt(inst.x, inst.a, f).value);
}

TEST_CASE("identity chain holds on random sample-abundant data") {
  for (std::uint64_t seed = 300; seed < 320; ++seed) {
    const Instance inst = random_instance(Regime::SampleAbundant, seed);
    const auto residuals = detector_identities(inst.x, inst.x_l, inst.a, inst.c);
    CHECK(residuals.size() == 8);
    for (const auto& r : residuals) {
      CAPTURE(r.name);
      CHECK(r.residual <= 1e-8);
    }
  }
}
