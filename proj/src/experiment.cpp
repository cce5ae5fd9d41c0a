#include "gdd/experiment.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gdd {

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

Scenario make_scenario(const ExperimentConfig& config) {
  return Scenario::random(config.dims, config.rho, config.effective_scenario_seed());
}

std::vector<PdCurve> run_experiment(const ExperimentConfig& config, const ExecutionOptions& exec) {
  validate_config(config);
  const Scenario scenario = make_scenario(config);
  return pd_curves(scenario, config.detectors, config.snr_grid_db, config.pfa,
                   config.calib_trials, config.pd_trials, config.master_seed, exec);
}

std::vector<CalibrationResult> run_calibration(const ExperimentConfig& config,
                                               const ExecutionOptions& exec) {
  validate_config(config);
  const Scenario scenario = make_scenario(config);
  return calibrate_thresholds(scenario, config.detectors, config.pfa, config.calib_trials,
                              config.master_seed, exec);
}

std::string format_pd_csv(const std::vector<PdCurve>& curves) {
  std::ostringstream os;
  os << kPdCsvHeader << '\n';
  for (const auto& curve : curves) {
    for (const auto& p : curve.points) {
      os << csv_field(to_string(curve.kind)) << ',' << format_double(p.snr_db) << ','
         << format_double(p.pd) << ',' << curve.trials_per_point << ','
         << format_double(curve.threshold_used) << ',' << format_double(curve.pfa) << ','
         << curve.seed << '\n';
    }
  }
  return os.str();
}

std::string format_calibration_csv(const std::vector<CalibrationResult>& results) {
  std::ostringstream os;
  os << kCalibrationCsvHeader << '\n';
  for (const auto& r : results) {
    os << csv_field(to_string(r.kind)) << ',' << format_double(r.threshold) << ','
       << format_double(r.pfa_target) << ',' << r.trials << ',' << r.seed << '\n';
  }
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace gdd
