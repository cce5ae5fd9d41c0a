#include "gdd/config.hpp"
#include "gdd/experiment.hpp"

#include <charconv>
#include <set>
#include <sstream>

namespace gdd {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> items;
  if (trim(s).empty()) return items;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    items.push_back(trim(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

[[noreturn]] void fail_at(int line, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

template <typename T>
T parse_number(std::string_view s, int line, std::string_view key) {
  T value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc() || ptr != end) {
    fail_at(line, "invalid value '" + std::string(s) + "' for " + std::string(key));
  }
  return value;
}

const std::set<std::string_view> kRequiredKeys = {"N", "K", "M", "J", "L", "snr_grid_db",
                                                  "detectors"};

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail_at(line_no, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(std::string(key)).second) {
      fail_at(line_no, "duplicate key '" + std::string(key) + "'");
    }

    if (key == "N") cfg.dims.N = parse_number<int>(value, line_no, key);
    else if (key == "K") cfg.dims.K = parse_number<int>(value, line_no, key);
    else if (key == "M") cfg.dims.M = parse_number<int>(value, line_no, key);
    else if (key == "J") cfg.dims.J = parse_number<int>(value, line_no, key);
    else if (key == "L") cfg.dims.L = parse_number<int>(value, line_no, key);
    else if (key == "rho") cfg.rho = parse_number<double>(value, line_no, key);
    else if (key == "pfa") cfg.pfa = parse_number<double>(value, line_no, key);
    else if (key == "calib_trials") cfg.calib_trials = parse_number<int>(value, line_no, key);
    else if (key == "pd_trials") cfg.pd_trials = parse_number<int>(value, line_no, key);
    else if (key == "master_seed") cfg.master_seed = parse_number<std::uint64_t>(value, line_no, key);
    else if (key == "scenario_seed") cfg.scenario_seed = parse_number<std::uint64_t>(value, line_no, key);
    else if (key == "output_path") cfg.output_path = std::string(value);
    else if (key == "snr_grid_db") {
      for (auto item : split_list(value)) cfg.snr_grid_db.push_back(parse_number<double>(item, line_no, key));
    } else if (key == "detectors") {
      for (auto item : split_list(value)) {
        const auto kind = parse_detector(item);
        if (!kind) fail_at(line_no, "unknown detector '" + std::string(item) + "'");
        cfg.detectors.push_back(*kind);
      }
    } else {
      fail_at(line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  for (auto key : kRequiredKeys) {
    if (!seen.contains(std::string(key))) throw ConfigError("missing required key '" + std::string(key) + "'");
  }
  validate_config(cfg);
  return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
  try {
    validate_dimensions(cfg.dims);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(cfg.rho >= 0.0 && cfg.rho < 1.0)) throw ConfigError("rho must lie in [0, 1)");
  if (!(cfg.pfa > 0.0 && cfg.pfa < 1.0)) throw ConfigError("pfa must lie in (0, 1)");
  if (cfg.calib_trials < 1 || cfg.pd_trials < 1) throw ConfigError("trial counts must be positive");
  if (cfg.calib_trials * cfg.pfa < 20.0 - 1e-9) {
    throw ConfigError("calib_trials*pfa=" + format_double(cfg.calib_trials * cfg.pfa) +
                      " < 20: too few expected false alarms to calibrate");
  }
  if (cfg.snr_grid_db.empty()) throw ConfigError("snr_grid_db is empty");
  for (std::size_t i = 1; i < cfg.snr_grid_db.size(); ++i) {
    if (!(cfg.snr_grid_db[i] > cfg.snr_grid_db[i - 1])) {
      throw ConfigError("snr_grid_db must be strictly increasing");
    }
  }
  if (cfg.detectors.empty()) throw ConfigError("detector list is empty");
  std::set<DetectorKind> unique(cfg.detectors.begin(), cfg.detectors.end());
  if (unique.size() != cfg.detectors.size()) throw ConfigError("detector listed twice");
  for (DetectorKind kind : cfg.detectors) {
    if (auto err = validity_error(kind, cfg.dims)) throw ConfigError(*err);
  }
}

std::string format_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "N = " << cfg.dims.N << "\n"
     << "K = " << cfg.dims.K << "\n"
     << "M = " << cfg.dims.M << "\n"
     << "J = " << cfg.dims.J << "\n"
     << "L = " << cfg.dims.L << "\n"
     << "rho = " << format_double(cfg.rho) << "\n"
     << "pfa = " << format_double(cfg.pfa) << "\n"
     << "snr_grid_db = ";
  for (std::size_t i = 0; i < cfg.snr_grid_db.size(); ++i) {
    os << (i ? ", " : "") << format_double(cfg.snr_grid_db[i]);
  }
  os << "\ncalib_trials = " << cfg.calib_trials << "\n"
     << "pd_trials = " << cfg.pd_trials << "\n"
     << "detectors = ";
  for (std::size_t i = 0; i < cfg.detectors.size(); ++i) {
    os << (i ? ", " : "") << to_string(cfg.detectors[i]);
  }
  os << "\nmaster_seed = " << cfg.master_seed << "\n";
  if (cfg.scenario_seed) os << "scenario_seed = " << *cfg.scenario_seed << "\n";
  if (!cfg.output_path.empty()) os << "output_path = " << cfg.output_path << "\n";
  return os.str();
}

void apply_full_scale(ExperimentConfig& cfg) {
  cfg.pfa = 1e-3;
  cfg.calib_trials = 100000;
  cfg.pd_trials = 10000;
}

ExperimentConfig fig1_preset() {
  ExperimentConfig cfg;
  cfg.dims = {.N = 12, .K = 16, .M = 3, .J = 2, .L = 14};
  cfg.snr_grid_db = {0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
  cfg.detectors = {kAllDetectors.begin(), kAllDetectors.end()};
  cfg.master_seed = 1;
  cfg.scenario_seed = 7;
  cfg.output_path = "fig1.csv";
  return cfg;
}

std::vector<ExperimentConfig> fig2_preset() {
  std::vector<ExperimentConfig> out;
  for (int k : {6, 10, 14}) {
    ExperimentConfig cfg;
    cfg.dims = {.N = 12, .K = k, .M = 3, .J = 2, .L = 11};
    cfg.snr_grid_db = {0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24, 26};
    cfg.detectors = {DetectorKind::GlrgddRu, DetectorKind::AmgddRu};
    cfg.master_seed = 1;
    cfg.scenario_seed = 7;
    cfg.output_path = "fig2_K" + std::to_string(k) + ".csv";
    out.push_back(std::move(cfg));
  }
  return out;
}

}  // namespace gdd
