#pragma once

// Experiment configuration in a line-oriented `key = value` format:
//
//   # twelve-channel run
//   N = 12
//   K = 16
//   snr_grid_db = 0, 2, 4
//   detectors = GLRGDD_RU, AMGDD_RU
//
// `#` starts a comment; lists are comma-separated; unknown keys are errors.

#include "gdd/detectors.hpp"
#include "gdd/scenario.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gdd {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ExperimentConfig {
  Dimensions dims;
  double rho = 0.95;
  double pfa = 1e-2;
  std::vector<double> snr_grid_db;
  int calib_trials = 5000;
  int pd_trials = 2000;
  std::vector<DetectorKind> detectors;
  std::uint64_t master_seed = 1;
  std::optional<std::uint64_t> scenario_seed;  ///< defaults to master_seed
  std::string output_path;

  std::uint64_t effective_scenario_seed() const { return scenario_seed.value_or(master_seed); }
};

/// Parses and validates. Syntax errors carry the line number; constraint
/// violations spell out the inequality.
ExperimentConfig parse_config(std::string_view text);

/// Checks every dimension and detector constraint; throws ConfigError.
void validate_config(const ExperimentConfig& config);

/// Inverse of parse_config.
std::string format_config(const ExperimentConfig& config);

/// Full-scale trial counts: pfa 1e-3, 1e5 calibration and 1e4 detection trials.
void apply_full_scale(ExperimentConfig& config);

/// N=12, J=2, M=3, K=16, L=14 with all five detectors.
ExperimentConfig fig1_preset();

/// N=12, J=2, M=3, L=11 and K in {6, 10, 14}; only the right-unitary detectors.
/// The K values are a chosen grid spanning the low-sample regime.
std::vector<ExperimentConfig> fig2_preset();

}  // namespace gdd
