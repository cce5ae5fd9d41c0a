#include "gdd/verify.hpp"

#include <doctest.h>

using namespace gdd;

TEST_CASE("regime names round-trip") {
  for (Regime r : {Regime::SampleAbundant, Regime::LowSample, Regime::NoTraining,
                   Regime::SquareWaveform, Regime::AllValid}) {
    CHECK(parse_regime(to_string(r)) == r);
  }
  CHECK_FALSE(parse_regime("sparse").has_value());
}

TEST_CASE("random_instance respects its regime") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Dimensions a = random_instance(Regime::SampleAbundant, seed).dims;
    CHECK(a.L >= a.N);
    CHECK(a.N >= 3);
    CHECK(a.N <= 8);
    const Dimensions l = random_instance(Regime::LowSample, seed).dims;
    CHECK(l.L < l.N);
    CHECK(l.L + l.K >= l.M + l.N);
    const Dimensions n = random_instance(Regime::NoTraining, seed).dims;
    CHECK(n.L == 0);
    CHECK(n.K >= n.M + n.N);
    const Dimensions s = random_instance(Regime::SquareWaveform, seed).dims;
    CHECK(s.K == s.M);
    const Dimensions v = random_instance(Regime::AllValid, seed).dims;
    for (DetectorKind k : kAllDetectors) CHECK_FALSE(validity_error(k, v).has_value());
  }
  const Instance a = random_instance(Regime::LowSample, 77);
  const Instance b = random_instance(Regime::LowSample, 77);
  CHECK(a.x == b.x);
  CHECK(a.x_l == b.x_l);
  CHECK(a.c == b.c);
}

TEST_CASE("invariance errors are small for every valid detector") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = random_instance(Regime::AllValid, seed);
    for (DetectorKind k : kAllDetectors) {
      for (Transform t : {Transform::SpatialBasis, Transform::WaveformBasis, Transform::Scale}) {
        CAPTURE(to_string(k));
        CAPTURE(to_string(t));
        CHECK(invariance_error(k, inst, t) < 1e-8);
      }
    }
  }
  const Instance low = random_instance(Regime::LowSample, 3);
  CHECK_THROWS_AS(invariance_error(DetectorKind::Glrgdd, low, Transform::Scale),
                  std::invalid_argument);
}

TEST_CASE("run_verify") {
  const VerifyReport report = run_verify(1, 40);
  CHECK(report.instances == 40);
  CHECK(report.checks > 40);
  CHECK(report.passed());
  CHECK_FALSE(report.vacuous());
  CHECK(report.worst.contains("monotone_map"));
  CHECK(report.worst.contains("bose_equals_glrgdd_ru"));
  CHECK(report.worst.contains("amgdd_equals_amgdd_ru"));

  const VerifyReport empty = run_verify(1, 0);
  CHECK(empty.vacuous());
}
