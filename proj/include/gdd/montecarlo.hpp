#pragma once

// Seeded Monte Carlo engine: threshold calibration at a target false-alarm
// probability, detection-probability estimation over SNR grids, and an
// empirical check that the false-alarm rate does not depend on R.
//
// Trial i always draws its data from the stream (seed, phase, i), so results do
// not depend on the number of worker threads. All detectors requested in one
// call see the same realizations.

#include "gdd/detectors.hpp"
#include "gdd/scenario.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace gdd {

struct ExecutionOptions {
  unsigned threads = 0;  ///< 0 selects default_thread_count()
};

/// GDD_THREADS if set and positive, else std::thread::hardware_concurrency().
unsigned default_thread_count();

struct CalibrationResult {
  DetectorKind kind = DetectorKind::GlrgddRu;
  double pfa_target = 0.0;
  int trials = 0;
  double threshold = 0.0;
  std::uint64_t seed = 0;
};

struct PdPoint {
  double snr_db = 0.0;
  double pd = 0.0;
  int detections = 0;
};

struct PdCurve {
  DetectorKind kind = DetectorKind::GlrgddRu;
  std::vector<PdPoint> points;
  int trials_per_point = 0;
  double threshold_used = 0.0;
  double pfa = 0.0;
  std::uint64_t seed = 0;
};

struct CfarReport {
  DetectorKind kind = DetectorKind::GlrgddRu;
  double pfa_target = 0.0;
  int trials = 0;
  double threshold = 0.0;       ///< calibrated under the reference covariance
  double pfa_reference = 0.0;   ///< fresh null data under the reference covariance
  double pfa_empirical = 0.0;   ///< same draws coloured by the other covariance
  double sigma = 0.0;           ///< sqrt(pfa (1 - pfa) / trials)
  bool passed = false;          ///< |pfa_empirical - pfa_target| <= 4 sigma
};

/// Calibration needs at least this many expected exceedances.
inline constexpr double kMinExpectedFalseAlarms = 20.0;

/// Order-statistic threshold: with m = round(n * pfa), the (m+1)-th largest
/// value, so that exactly m of the inputs are strictly greater.
double threshold_from_statistics(std::vector<double> values, double pfa);

/// Number of values strictly greater than the threshold.
int count_exceedances(std::span<const double> values, double threshold);

/// Throws std::invalid_argument if any detector cannot run on the scenario.
void require_valid(const Scenario& scenario, std::span<const DetectorKind> kinds);

/// Statistics of `kinds` over `trials` realizations; result[k][i] belongs to
/// kinds[k] and trial i. `signal` is added to every test matrix when given.
std::vector<std::vector<double>> simulate_statistics(const Scenario& scenario,
                                                     std::span<const DetectorKind> kinds,
                                                     const SignalCoordinates* signal, int trials,
                                                     std::uint64_t seed, StreamTag phase,
                                                     const ExecutionOptions& exec = {});

std::vector<CalibrationResult> calibrate_thresholds(const Scenario& scenario,
                                                    std::span<const DetectorKind> kinds,
                                                    double pfa, int trials, std::uint64_t seed,
                                                    const ExecutionOptions& exec = {});

CalibrationResult calibrate_threshold(const Scenario& scenario, DetectorKind kind, double pfa,
                                      int trials, std::uint64_t seed,
                                      const ExecutionOptions& exec = {});

/// Detections of each detector against its threshold for a given signal.
std::vector<int> count_detections(const Scenario& scenario, std::span<const DetectorKind> kinds,
                                  std::span<const double> thresholds,
                                  const SignalCoordinates& signal, int trials, std::uint64_t seed,
                                  const ExecutionOptions& exec = {});

/// PD at one SNR with the signal along the scenario's direction.
double estimate_pd(const Scenario& scenario, DetectorKind kind, double threshold, double snr_db,
                   int trials, std::uint64_t seed, const ExecutionOptions& exec = {});

/// Calibrates each detector, then sweeps the SNR grid (strictly increasing).
std::vector<PdCurve> pd_curves(const Scenario& scenario, std::span<const DetectorKind> kinds,
                               std::span<const double> snr_grid_db, double pfa, int calib_trials,
                               int pd_trials, std::uint64_t seed,
                               const ExecutionOptions& exec = {});

PdCurve pd_curve(const Scenario& scenario, DetectorKind kind, std::span<const double> snr_grid_db,
                 double pfa, int calib_trials, int pd_trials, std::uint64_t seed,
                 const ExecutionOptions& exec = {});

/// Calibrates under `reference`, then measures the false-alarm rate on fresh
/// null data under `other` (same subspaces and dimensions).
CfarReport cfar_check(const Scenario& reference, const Scenario& other, DetectorKind kind,
                      double pfa, int trials, std::uint64_t seed,
                      const ExecutionOptions& exec = {});

}  // namespace gdd
