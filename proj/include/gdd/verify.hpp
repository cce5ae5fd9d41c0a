#pragma once

// Randomized self-check of the detector algebra: the identity chain between the
// factored GLRGDD and the right-unitary statistics, the monotone map between
// GLRGDD and GLRGDD_RU, degenerate agreements and invariances.

#include "gdd/detectors.hpp"
#include "gdd/scenario.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gdd {

enum class Regime {
  SampleAbundant,  ///< L >= N
  LowSample,       ///< L < N <= L + K - M
  NoTraining,      ///< L = 0, K >= M + N
  SquareWaveform,  ///< K = M, L >= N
  AllValid,        ///< L >= N and K >= M + N: every detector runs
};

std::string_view to_string(Regime regime);
std::optional<Regime> parse_regime(std::string_view name);

/// One random problem instance. Test data may contain a signal.
struct Instance {
  Regime regime = Regime::SampleAbundant;
  std::uint64_t seed = 0;
  Dimensions dims;
  CMatrix a;
  CMatrix c;
  CMatrix x;
  CMatrix x_l;
};

/// Draws dimensions for the regime (N in 3..8) and the matrices, all from `seed`.
Instance random_instance(Regime regime, std::uint64_t seed);

/// Statistic of `kind` on the instance, or nullopt when the kind is invalid for its sizes.
std::optional<double> statistic(DetectorKind kind, const Instance& inst);
std::optional<double> statistic(DetectorKind kind, const CMatrix& x, const CMatrix& x_l,
                                const CMatrix& a, const CMatrix& c);

/// |t_GLRGDD - t/(1-t)| / (1 + t_GLRGDD) with t = t_GLRGDD_RU. Needs L >= N.
double monotone_map_error(const Instance& inst);

/// Relative gap between BOSE_GLRT and GLRGDD_RU with the training set dropped.
double bose_agreement_error(const Instance& inst);

/// Relative gap between AMGDD and AMGDD_RU. Needs K = M.
double amgdd_agreement_error(const Instance& inst);

enum class Transform { SpatialBasis, WaveformBasis, Scale };
std::string_view to_string(Transform t);

/// Largest relative change of the statistic under A -> A T_A, C -> T_C C or
/// (X, X_L) -> (c X, c X_L), with T_A, T_C, c drawn from the instance seed.
double invariance_error(DetectorKind kind, const Instance& inst, Transform t);

/// Tolerances of the self-check.
struct VerifyLimits {
  static constexpr double identity = 1e-8;
  static constexpr double monotone_map = 1e-8;
  static constexpr double degenerate = 1e-12;
  static constexpr double invariance = 1e-8;
  static constexpr double bounded_margin = 1e-12;  // GLR-type statistics < 1 - margin
};

struct VerifyFailure {
  std::string check;
  Regime regime = Regime::SampleAbundant;
  std::uint64_t instance_seed = 0;
  Dimensions dims;
  double value = 0.0;
  double limit = 0.0;
};

struct VerifyReport {
  int instances = 0;
  int checks = 0;
  std::map<std::string, double> worst;  ///< worst value seen per check name
  std::vector<VerifyFailure> failures;

  bool passed() const { return failures.empty(); }
  bool vacuous() const { return instances == 0; }
};

/// Runs every applicable check on one instance and folds the results into `report`.
void verify_instance(const Instance& inst, VerifyReport& report);

/// Cycles through the regimes {SampleAbundant, LowSample, NoTraining,
/// SquareWaveform}; instance i uses the seed derived from (seed, i).
VerifyReport run_verify(std::uint64_t seed, int instance_count);

}  // namespace gdd
