#include "gdd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace gdd {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::SampleAbundant: return "sample-abundant";
    case Regime::LowSample: return "low-sample";
    case Regime::NoTraining: return "no-training";
    case Regime::SquareWaveform: return "square-waveform";
    case Regime::AllValid: return "all-valid";
  }
  return "?";
}

std::optional<Regime> parse_regime(std::string_view name) {
  for (Regime r : {Regime::SampleAbundant, Regime::LowSample, Regime::NoTraining,
                   Regime::SquareWaveform, Regime::AllValid}) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

std::string_view to_string(Transform t) {
  switch (t) {
    case Transform::SpatialBasis: return "spatial_basis";
    case Transform::WaveformBasis: return "waveform_basis";
    case Transform::Scale: return "scale";
  }
  return "?";
}

namespace {

int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng.engine());
}

double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng.engine());
}

Dimensions draw_dimensions(Regime regime, Rng& rng) {
  Dimensions d;
  d.N = uniform(rng, 3, 8);
  d.J = uniform(rng, 1, d.N);
  d.M = uniform(rng, 1, 4);
  switch (regime) {
    case Regime::SampleAbundant:
      d.L = uniform(rng, d.N, d.N + 8);
      d.K = uniform(rng, d.M, d.M + d.N + 3);
      break;
    case Regime::LowSample:
      d.L = uniform(rng, 0, d.N - 1);
      d.K = uniform(rng, d.M + d.N - d.L, d.M + d.N - d.L + 4);
      break;
    case Regime::NoTraining:
      d.L = 0;
      d.K = uniform(rng, d.M + d.N, d.M + d.N + 4);
      break;
    case Regime::SquareWaveform:
      d.L = uniform(rng, d.N, d.N + 8);
      d.K = d.M;
      break;
    case Regime::AllValid:
      d.L = uniform(rng, d.N, d.N + 8);
      d.K = uniform(rng, d.M + d.N, d.M + d.N + 4);
      break;
  }
  return d;
}

// Random invertible matrix with condition number at most 100.
CMatrix well_conditioned(Rng& rng, int n) {
  for (;;) {
    CMatrix t = rng.complex_normal(n, n);
    const RVector s = singular_values(t);
    if (s(n - 1) * 100.0 > s(0)) return t;
  }
}

Complex random_scale(Rng& rng) {
  const double magnitude = std::pow(10.0, uniform_real(rng, -1.0, 1.0));
  const double phase = uniform_real(rng, 0.0, 2.0 * std::numbers::pi);
  return std::polar(magnitude, phase);
}

void record(VerifyReport& report, const Instance& inst, const std::string& check,
            double value, double limit) {
  ++report.checks;
  auto [it, inserted] = report.worst.emplace(check, value);
  if (!inserted) it->second = std::max(it->second, value);
  if (!(value <= limit)) {
    report.failures.push_back({check, inst.regime, inst.seed, inst.dims, value, limit});
  }
}

}  // namespace

Instance random_instance(Regime regime, std::uint64_t seed) {
  Rng rng = make_stream(seed, StreamTag::Verify, 0);
  Instance inst;
  inst.regime = regime;
  inst.seed = seed;
  inst.dims = draw_dimensions(regime, rng);
  const Dimensions& d = inst.dims;
  inst.a = rng.complex_normal(d.N, d.J);
  inst.c = rng.complex_normal(d.M, d.K);
  const double rho = uniform_real(rng, 0.0, 0.95);
  const HermitianPD r = toeplitz_covariance(d.N, rho);
  inst.x = sample_noise(r, d.K, rng);
  inst.x_l = sample_noise(r, d.L, rng);
  // Half of the instances carry a signal with SNR drawn uniformly in [-5, 25] dB.
  if (uniform(rng, 0, 1) == 1) {
    const CVector theta = rng.complex_normal(d.J, 1);
    const CVector alpha = rng.complex_normal(d.M, 1);
    const CVector s = inst.a * theta;
    const CVector r_inv_s = r.solve(s);
    const double snr = (inst.c.adjoint() * alpha).squaredNorm() * s.dot(r_inv_s).real();
    const double gain = std::sqrt(db_to_linear(uniform_real(rng, -5.0, 25.0)) / snr);
    inst.x += make_signal(inst.a, theta * gain, alpha, inst.c);
  }
  return inst;
}

std::optional<double> statistic(DetectorKind kind, const CMatrix& x, const CMatrix& x_l,
                                const CMatrix& a, const CMatrix& c) {
  const Dimensions d{static_cast<int>(x.rows()), static_cast<int>(x.cols()),
                     static_cast<int>(c.rows()), static_cast<int>(a.cols()),
                     static_cast<int>(x_l.cols())};
  if (validity_error(kind, d)) return std::nullopt;
  const StatisticEvaluator eval(a, c);
  return eval.evaluate(kind, x, x_l);
}

std::optional<double> statistic(DetectorKind kind, const Instance& inst) {
  return statistic(kind, inst.x, inst.x_l, inst.a, inst.c);
}

double monotone_map_error(const Instance& inst) {
  const auto t_ru = statistic(DetectorKind::GlrgddRu, inst);
  const auto t_g = statistic(DetectorKind::Glrgdd, inst);
  if (!t_ru || !t_g) throw std::invalid_argument("monotone_map_error: needs L >= N");
  return std::abs(*t_g - *t_ru / (1.0 - *t_ru)) / (1.0 + *t_g);
}

double bose_agreement_error(const Instance& inst) {
  const CMatrix no_training(inst.x.rows(), 0);
  const double bose = bose_glrt(inst.x, inst.a, inst.c).value;
  const TransformedData td =
      transform_data(inst.x, no_training, factor_waveform_subspace(inst.c));
  return relative_difference(bose, glrgdd_ru(td, inst.a).value);
}

double amgdd_agreement_error(const Instance& inst) {
  if (inst.dims.K != inst.dims.M) throw std::invalid_argument("amgdd_agreement_error: needs K = M");
  const SubspaceFactorization f = factor_waveform_subspace(inst.c);
  const double two_step = amgdd(inst.x, inst.x_l, inst.a, f).value;
  const double ru = amgdd_ru(transform_data(inst.x, inst.x_l, f), inst.a).value;
  return relative_difference(two_step, ru);
}

double invariance_error(DetectorKind kind, const Instance& inst, Transform t) {
  const auto base = statistic(kind, inst);
  if (!base) throw std::invalid_argument("invariance_error: detector invalid for instance");
  Rng rng = make_stream(inst.seed, StreamTag::Verify, 1 + static_cast<std::uint64_t>(t));
  std::optional<double> moved;
  switch (t) {
    case Transform::SpatialBasis:
      moved = statistic(kind, inst.x, inst.x_l, inst.a * well_conditioned(rng, inst.dims.J), inst.c);
      break;
    case Transform::WaveformBasis:
      moved = statistic(kind, inst.x, inst.x_l, inst.a, well_conditioned(rng, inst.dims.M) * inst.c);
      break;
    case Transform::Scale: {
      const Complex s = random_scale(rng);
      moved = statistic(kind, s * inst.x, s * inst.x_l, inst.a, inst.c);
      break;
    }
  }
  return relative_difference(*base, *moved);
}

void verify_instance(const Instance& inst, VerifyReport& report) {
  ++report.instances;
  const Dimensions& d = inst.dims;

  if (d.L >= d.N) {
    for (const auto& r : detector_identities(inst.x, inst.x_l, inst.a, inst.c)) {
      record(report, inst, "identity:" + r.name, r.residual, VerifyLimits::identity);
    }
    record(report, inst, "monotone_map", monotone_map_error(inst), VerifyLimits::monotone_map);
  }
  if (d.L == 0) {
    record(report, inst, "bose_equals_glrgdd_ru", bose_agreement_error(inst),
           VerifyLimits::degenerate);
  }
  if (d.K == d.M && d.L >= d.N) {
    record(report, inst, "amgdd_equals_amgdd_ru", amgdd_agreement_error(inst),
           VerifyLimits::degenerate);
  }
  for (DetectorKind kind : kAllDetectors) {
    const auto value = statistic(kind, inst);
    if (!value) continue;
    const std::string name(to_string(kind));
    record(report, inst, "finite_nonnegative:" + name,
           std::isfinite(*value) && *value >= 0.0 ? 0.0 : 1.0, 0.0);
    if (kind == DetectorKind::GlrgddRu || kind == DetectorKind::BoseGlrt) {
      // Reported as the excess over 1 - margin; must be <= 0.
      record(report, inst, "bounded:" + name, *value - (1.0 - VerifyLimits::bounded_margin), 0.0);
    }
    for (Transform t : {Transform::SpatialBasis, Transform::WaveformBasis, Transform::Scale}) {
      record(report, inst, "invariance:" + name + ":" + std::string(to_string(t)),
             invariance_error(kind, inst, t), VerifyLimits::invariance);
    }
  }
}

VerifyReport run_verify(std::uint64_t seed, int instance_count) {
  constexpr Regime kCycle[] = {Regime::SampleAbundant, Regime::LowSample, Regime::NoTraining,
                               Regime::SquareWaveform};
  VerifyReport report;
  for (int i = 0; i < instance_count; ++i) {
    const Regime regime = kCycle[i % 4];
    const std::uint64_t instance_seed = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(i)));
    try {
      verify_instance(random_instance(regime, instance_seed), report);
    } catch (const std::exception& e) {
      ++report.instances;
      report.failures.push_back({std::string("exception: ") + e.what(), regime, instance_seed,
                                 Dimensions{}, 1.0, 0.0});
    }
  }
  return report;
}

}  // namespace gdd
