// gdd: command-line front end for the rank-one adaptive detectors.
//
//   gdd calibrate --config run.cfg
//   gdd pd-curve  --config run.cfg --out pd.csv --threads 4
//   gdd preset fig1 [--full-scale]
//   gdd verify --instances 500
//
// Exit codes: 0 success, 1 usage/config error, 2 verification failure,
// 3 runtime numerical error.

#include "gdd/config.hpp"
#include "gdd/experiment.hpp"
#include "gdd/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kVerifyFailed = 2, kNumerical = 3 };

struct RunOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  unsigned threads = 0;
  bool full_scale = false;
};

gdd::ExperimentConfig load_config(const RunOptions& opts) {
  std::ifstream in(opts.config_path);
  if (!in) throw gdd::ConfigError("cannot read config file '" + opts.config_path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return gdd::parse_config(text.str());
}

void apply_overrides(gdd::ExperimentConfig& cfg, const RunOptions& opts) {
  if (opts.full_scale) gdd::apply_full_scale(cfg);
  if (opts.seed) cfg.master_seed = *opts.seed;
  if (!opts.out.empty()) cfg.output_path = opts.out;
  gdd::validate_config(cfg);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    gdd::write_text_file(path, text);
    std::cerr << "wrote " << path << "\n";
  }
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind(".csv");
  if (dot != std::string::npos && dot + 4 == path.size()) return path.substr(0, dot) + suffix + ".csv";
  return path + suffix + ".csv";
}

int run_pd_curve(gdd::ExperimentConfig cfg, const RunOptions& opts) {
  apply_overrides(cfg, opts);
  const auto curves = gdd::run_experiment(cfg, {opts.threads});
  emit(cfg.output_path, gdd::format_pd_csv(curves));
  return kOk;
}

int run_calibrate(gdd::ExperimentConfig cfg, const RunOptions& opts) {
  apply_overrides(cfg, opts);
  const auto results = gdd::run_calibration(cfg, {opts.threads});
  emit(cfg.output_path, gdd::format_calibration_csv(results));
  return kOk;
}

int run_preset(const std::string& name, const RunOptions& opts, bool print_config) {
  std::vector<gdd::ExperimentConfig> configs;
  if (name == "fig1") {
    configs.push_back(gdd::fig1_preset());
  } else {
    configs = gdd::fig2_preset();
    std::cerr << "note: fig2 runs one scenario per K in {6, 10, 14}\n";
  }
  for (auto& cfg : configs) {
    RunOptions local = opts;
    if (!opts.out.empty() && configs.size() > 1) {
      local.out = with_suffix(opts.out, "_K" + std::to_string(cfg.dims.K));
    }
    if (print_config) {
      apply_overrides(cfg, local);
      std::cout << "# " << name << " (K=" << cfg.dims.K << ")\n" << gdd::format_config(cfg) << "\n";
      continue;
    }
    run_pd_curve(cfg, local);
  }
  return kOk;
}

int run_verify(std::uint64_t seed, int instances, const std::string& regime,
               std::optional<std::uint64_t> instance_seed) {
  gdd::VerifyReport report;
  if (instance_seed) {
    const auto r = gdd::parse_regime(regime);
    if (!r) throw gdd::ConfigError("unknown regime '" + regime + "'");
    gdd::verify_instance(gdd::random_instance(*r, *instance_seed), report);
  } else {
    report = gdd::run_verify(seed, instances);
  }
  if (report.vacuous()) {
    std::cerr << "warning: zero instances checked; pass is vacuous\n";
  }
  for (const auto& [check, worst] : report.worst) {
    std::cout << check << " worst=" << gdd::format_double(worst) << "\n";
  }
  for (const auto& f : report.failures) {
    std::cout << "FAIL " << f.check << " value=" << gdd::format_double(f.value)
              << " limit=" << gdd::format_double(f.limit) << " regime=" << gdd::to_string(f.regime)
              << " instance_seed=" << f.instance_seed << " (" << f.dims.to_string() << ")\n";
  }
  std::cout << (report.passed() ? "PASS" : "FAIL") << ": " << report.instances << " instances, "
            << report.checks << " checks, " << report.failures.size() << " failures\n";
  return report.passed() ? kOk : kVerifyFailed;
}

void add_run_flags(CLI::App* cmd, RunOptions& opts) {
  cmd->add_option("--seed", opts.seed, "Master seed (overrides the config)");
  cmd->add_option("--out", opts.out, "Output CSV path ('-' for stdout)");
  cmd->add_option("--threads", opts.threads, "Worker threads (default: $GDD_THREADS or all cores)");
  cmd->add_flag("--full-scale", opts.full_scale, "Use pfa 1e-3 with 1e5/1e4 trials");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive detection of a rank-one signal with limited training data"};
  app.require_subcommand(1);

  RunOptions opts;

  auto* calibrate = app.add_subcommand("calibrate", "Calibrate detection thresholds");
  calibrate->add_option("--config", opts.config_path, "Experiment config file")->required();
  add_run_flags(calibrate, opts);

  auto* pd = app.add_subcommand("pd-curve", "Estimate PD versus SNR");
  pd->add_option("--config", opts.config_path, "Experiment config file")->required();
  add_run_flags(pd, opts);

  std::string preset_name;
  bool print_config = false;
  auto* preset = app.add_subcommand("preset", "Run a built-in experiment (fig1 or fig2)");
  preset->add_option("name", preset_name, "Preset name")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2"}));
  preset->add_flag("--print-config", print_config, "Print the preset config instead of running");
  add_run_flags(preset, opts);

  std::uint64_t verify_seed = 1;
  int instances = 500;
  std::string regime = "sample-abundant";
  std::optional<std::uint64_t> instance_seed;
  auto* verify = app.add_subcommand("verify", "Randomized check of the detector identities");
  verify->add_option("--seed", verify_seed, "Master seed");
  verify->add_option("--instances", instances, "Number of random instances")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--instance-seed", instance_seed, "Replay a single instance");
  verify->add_option("--regime", regime, "Regime of the replayed instance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*calibrate) return run_calibrate(load_config(opts), opts);
    if (*pd) return run_pd_curve(load_config(opts), opts);
    if (*preset) return run_preset(preset_name, opts, print_config);
    if (*verify) return run_verify(verify_seed, instances, regime, instance_seed);
  } catch (const gdd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}
