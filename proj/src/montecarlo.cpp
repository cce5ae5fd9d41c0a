#include "gdd/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>

namespace gdd {

unsigned default_thread_count() {
  if (const char* env = std::getenv("GDD_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Runs body(i) for i in [0, count) on a bounded pool. If any call throws, the
// exception of the lowest failing index is rethrown after all workers stop.
void parallel_for(int count, unsigned threads, const std::function<void(int)>& body) {
  if (threads == 0) threads = default_thread_count();
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(count, 1)));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < count && !failed.load(); i = next.fetch_add(1)) {
      try {
        body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
        failed.store(true);
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void require_trials(int trials) {
  if (trials < 1) throw std::invalid_argument("trial count must be positive");
}

}  // namespace

double threshold_from_statistics(std::vector<double> values, double pfa) {
  if (!(pfa > 0.0 && pfa < 1.0)) throw std::invalid_argument("pfa must lie in (0, 1)");
  if (values.empty()) throw std::invalid_argument("no statistics to calibrate from");
  const auto m = static_cast<std::size_t>(std::llround(static_cast<double>(values.size()) * pfa));
  if (m >= values.size()) throw std::invalid_argument("pfa too large for the trial count");
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(m), values.end(),
                   std::greater<>());
  return values[m];
}

int count_exceedances(std::span<const double> values, double threshold) {
  return static_cast<int>(std::count_if(values.begin(), values.end(),
                                        [threshold](double v) { return v > threshold; }));
}

void require_valid(const Scenario& scenario, std::span<const DetectorKind> kinds) {
  for (DetectorKind kind : kinds) {
    if (auto err = validity_error(kind, scenario.dims())) throw std::invalid_argument(*err);
  }
}

std::vector<std::vector<double>> simulate_statistics(const Scenario& scenario,
                                                     std::span<const DetectorKind> kinds,
                                                     const SignalCoordinates* signal, int trials,
                                                     std::uint64_t seed, StreamTag phase,
                                                     const ExecutionOptions& exec) {
  require_trials(trials);
  require_valid(scenario, kinds);
  const StatisticEvaluator eval(scenario.A(), scenario.C());
  const Dimensions& d = scenario.dims();
  const CMatrix signal_matrix =
      signal ? make_signal(scenario.A(), signal->theta, signal->alpha, scenario.C())
             : CMatrix::Zero(d.N, d.K);

  std::vector<std::vector<double>> out(kinds.size(), std::vector<double>(trials));
  parallel_for(trials, exec.threads, [&](int i) {
    Rng rng = make_stream(seed, phase, static_cast<std::uint64_t>(i));
    CMatrix x = scenario.noise(d.K, rng);
    const CMatrix x_l = scenario.noise(d.L, rng);
    if (signal) x += signal_matrix;
    const std::vector<double> values = eval.evaluate(kinds, x, x_l);
    for (std::size_t k = 0; k < kinds.size(); ++k) out[k][static_cast<std::size_t>(i)] = values[k];
  });
  return out;
}

std::vector<CalibrationResult> calibrate_thresholds(const Scenario& scenario,
                                                    std::span<const DetectorKind> kinds,
                                                    double pfa, int trials, std::uint64_t seed,
                                                    const ExecutionOptions& exec) {
  if (!(pfa > 0.0 && pfa < 1.0)) throw std::invalid_argument("pfa must lie in (0, 1)");
  require_trials(trials);
  if (trials * pfa < kMinExpectedFalseAlarms - 1e-9) {
    throw std::invalid_argument("calibration refused: trials*pfa=" +
                                std::to_string(trials * pfa) + " < " +
                                std::to_string(kMinExpectedFalseAlarms));
  }
  auto stats = simulate_statistics(scenario, kinds, nullptr, trials, seed,
                                   StreamTag::Calibration, exec);
  std::vector<CalibrationResult> out;
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    out.push_back({kinds[k], pfa, trials, threshold_from_statistics(std::move(stats[k]), pfa),
                   seed});
  }
  return out;
}

CalibrationResult calibrate_threshold(const Scenario& scenario, DetectorKind kind, double pfa,
                                      int trials, std::uint64_t seed,
                                      const ExecutionOptions& exec) {
  const DetectorKind kinds[] = {kind};
  return calibrate_thresholds(scenario, kinds, pfa, trials, seed, exec).front();
}

std::vector<int> count_detections(const Scenario& scenario, std::span<const DetectorKind> kinds,
                                  std::span<const double> thresholds,
                                  const SignalCoordinates& signal, int trials, std::uint64_t seed,
                                  const ExecutionOptions& exec) {
  if (thresholds.size() != kinds.size()) {
    throw std::invalid_argument("count_detections: one threshold per detector required");
  }
  const auto stats =
      simulate_statistics(scenario, kinds, &signal, trials, seed, StreamTag::Detection, exec);
  std::vector<int> counts;
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    counts.push_back(count_exceedances(stats[k], thresholds[k]));
  }
  return counts;
}

double estimate_pd(const Scenario& scenario, DetectorKind kind, double threshold, double snr_db,
                   int trials, std::uint64_t seed, const ExecutionOptions& exec) {
  const SignalCoordinates signal = scale_to_snr(scenario, scenario.direction().theta,
                                                scenario.direction().alpha, snr_db);
  const DetectorKind kinds[] = {kind};
  const double thresholds[] = {threshold};
  const int count = count_detections(scenario, kinds, thresholds, signal, trials, seed, exec)[0];
  return static_cast<double>(count) / trials;
}

std::vector<PdCurve> pd_curves(const Scenario& scenario, std::span<const DetectorKind> kinds,
                               std::span<const double> snr_grid_db, double pfa, int calib_trials,
                               int pd_trials, std::uint64_t seed, const ExecutionOptions& exec) {
  for (std::size_t i = 1; i < snr_grid_db.size(); ++i) {
    if (!(snr_grid_db[i] > snr_grid_db[i - 1])) {
      throw std::invalid_argument("SNR grid must be strictly increasing");
    }
  }
  require_valid(scenario, kinds);
  require_trials(pd_trials);
  const auto calibration = calibrate_thresholds(scenario, kinds, pfa, calib_trials, seed, exec);
  std::vector<double> thresholds;
  std::vector<PdCurve> curves;
  for (const auto& c : calibration) {
    thresholds.push_back(c.threshold);
    PdCurve curve;
    curve.kind = c.kind;
    curve.trials_per_point = pd_trials;
    curve.threshold_used = c.threshold;
    curve.pfa = pfa;
    curve.seed = seed;
    curves.push_back(std::move(curve));
  }
  for (double snr_db : snr_grid_db) {
    const SignalCoordinates signal = scale_to_snr(scenario, scenario.direction().theta,
                                                  scenario.direction().alpha, snr_db);
    const auto counts =
        count_detections(scenario, kinds, thresholds, signal, pd_trials, seed, exec);
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      curves[k].points.push_back(
          {snr_db, static_cast<double>(counts[k]) / pd_trials, counts[k]});
    }
  }
  return curves;
}

PdCurve pd_curve(const Scenario& scenario, DetectorKind kind, std::span<const double> snr_grid_db,
                 double pfa, int calib_trials, int pd_trials, std::uint64_t seed,
                 const ExecutionOptions& exec) {
  const DetectorKind kinds[] = {kind};
  return pd_curves(scenario, kinds, snr_grid_db, pfa, calib_trials, pd_trials, seed, exec).front();
}

CfarReport cfar_check(const Scenario& reference, const Scenario& other, DetectorKind kind,
                      double pfa, int trials, std::uint64_t seed, const ExecutionOptions& exec) {
  if (!(reference.dims() == other.dims())) {
    throw std::invalid_argument("cfar_check: scenarios must share dimensions");
  }
  CfarReport r;
  r.kind = kind;
  r.pfa_target = pfa;
  r.trials = trials;
  r.threshold = calibrate_threshold(reference, kind, pfa, trials, seed, exec).threshold;
  const DetectorKind kinds[] = {kind};
  const auto ref = simulate_statistics(reference, kinds, nullptr, trials, seed,
                                       StreamTag::FreshNull, exec);
  const auto oth = simulate_statistics(other, kinds, nullptr, trials, seed,
                                       StreamTag::FreshNull, exec);
  r.pfa_reference = static_cast<double>(count_exceedances(ref[0], r.threshold)) / trials;
  r.pfa_empirical = static_cast<double>(count_exceedances(oth[0], r.threshold)) / trials;
  r.sigma = std::sqrt(pfa * (1.0 - pfa) / trials);
  r.passed = std::abs(r.pfa_empirical - pfa) <= 4.0 * r.sigma;
  return r;
}

}  // namespace gdd
