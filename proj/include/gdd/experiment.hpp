#pragma once

#include "gdd/config.hpp"
#include "gdd/montecarlo.hpp"

#include <string>
#include <vector>

namespace gdd {

inline constexpr std::string_view kPdCsvHeader = "detector,snr_db,pd,trials,threshold,pfa,seed";
inline constexpr std::string_view kCalibrationCsvHeader = "detector,threshold,pfa,trials,seed";

/// Builds the scenario described by the config (random A, C and direction from
/// the scenario seed; Toeplitz R).
Scenario make_scenario(const ExperimentConfig& config);

/// Calibrates and sweeps every configured detector with common random numbers.
std::vector<PdCurve> run_experiment(const ExperimentConfig& config,
                                    const ExecutionOptions& exec = {});

std::vector<CalibrationResult> run_calibration(const ExperimentConfig& config,
                                               const ExecutionOptions& exec = {});

/// CSV text, LF line endings, one row per (detector, SNR point).
std::string format_pd_csv(const std::vector<PdCurve>& curves);
std::string format_calibration_csv(const std::vector<CalibrationResult>& results);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(std::string_view s);

/// Writes `text` to `path`; throws std::runtime_error on I/O failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace gdd
