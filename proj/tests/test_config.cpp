#include "gdd/config.hpp"
#include "gdd/experiment.hpp"

#include <doctest.h>

using namespace gdd;

namespace {

const char* kBase = R"(# small run
N = 4
K = 6
M = 2
J = 1
L = 3
snr_grid_db = 0, 5, 10
detectors = GLRGDD_RU, AMGDD_RU
)";

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse_config reads a minimal file with defaults") {
  const ExperimentConfig cfg = parse_config(kBase);
  CHECK(cfg.dims == Dimensions{.N = 4, .K = 6, .M = 2, .J = 1, .L = 3});
  CHECK(cfg.snr_grid_db == std::vector<double>{0, 5, 10});
  CHECK(cfg.detectors == std::vector<DetectorKind>{DetectorKind::GlrgddRu, DetectorKind::AmgddRu});
  CHECK(cfg.rho == 0.95);
  CHECK(cfg.pfa == 0.01);
  CHECK(cfg.master_seed == 1);
  CHECK(cfg.effective_scenario_seed() == 1);
}

TEST_CASE("presets round-trip through format_config") {
  std::vector<ExperimentConfig> all = fig2_preset();
  all.insert(all.begin(), fig1_preset());
  for (const auto& cfg : all) {
    const ExperimentConfig back = parse_config(format_config(cfg));
    CHECK(back.dims == cfg.dims);
    CHECK(back.rho == cfg.rho);
    CHECK(back.pfa == cfg.pfa);
    CHECK(back.snr_grid_db == cfg.snr_grid_db);
    CHECK(back.calib_trials == cfg.calib_trials);
    CHECK(back.pd_trials == cfg.pd_trials);
    CHECK(back.detectors == cfg.detectors);
    CHECK(back.master_seed == cfg.master_seed);
    CHECK(back.scenario_seed == cfg.scenario_seed);
    CHECK(back.output_path == cfg.output_path);
  }
  CHECK(fig1_preset().dims == Dimensions{.N = 12, .K = 16, .M = 3, .J = 2, .L = 14});
  CHECK(fig2_preset().size() == 3);
}

TEST_CASE("constraint violations are explained") {
  std::string text = kBase;
  text.replace(text.find("K = 6"), 5, "K = 2");
  CHECK(config_error(text).find("L+K=5 < M+N=6") != std::string::npos);

  text = kBase;
  text.replace(text.find("detectors = GLRGDD_RU, AMGDD_RU"), 31, "detectors = GLRGDD");
  CHECK(config_error(text) == "GLRGDD requires L ≥ N (L=3, N=4)");

  text = kBase;
  text += "calib_trials = 100\n";
  CHECK(config_error(text).find("too few expected false alarms") != std::string::npos);
}

TEST_CASE("syntax errors carry line numbers") {
  CHECK(config_error(std::string(kBase) + "bogus = 1\n") == "line 9: unknown key 'bogus'");
  CHECK(config_error(std::string(kBase) + "N = 5\n") == "line 9: duplicate key 'N'");
  CHECK(config_error(std::string(kBase) + "rho = abc\n") == "line 9: invalid value 'abc' for rho");
  CHECK(config_error(std::string(kBase) + "just words\n") == "line 9: expected 'key = value'");
  CHECK(config_error(std::string(kBase) + "master_seed = -3\n").rfind("line 9", 0) == 0);
}

TEST_CASE("list validation") {
  std::string text = kBase;
  text.replace(text.find("detectors = GLRGDD_RU, AMGDD_RU"), 31, "detectors =");
  CHECK(config_error(text) == "detector list is empty");

  text = kBase;
  text.replace(text.find("detectors = GLRGDD_RU, AMGDD_RU"), 31, "detectors = AMGDD_RU, AMGDD_RU");
  CHECK(config_error(text) == "detector listed twice");

  text = kBase;
  text.replace(text.find("0, 5, 10"), 8, "0, 5, 5");
  CHECK(config_error(text) == "snr_grid_db must be strictly increasing");

  text = kBase;
  text.replace(text.find("0, 5, 10"), 8, "");
  CHECK(config_error(text) == "snr_grid_db is empty");

  text = kBase;
  text.replace(text.find("L = 3\n"), 6, "");
  CHECK(config_error(text) == "missing required key 'L'");
}

TEST_CASE("full scale") {
  ExperimentConfig cfg = fig1_preset();
  apply_full_scale(cfg);
  CHECK(cfg.pfa == 1e-3);
  CHECK(cfg.calib_trials == 100000);
  CHECK(cfg.pd_trials == 10000);
  CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("CSV formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(std::stod(format_double(0.4640474874067468)) == 0.4640474874067468);
  CHECK(csv_field("GLRGDD_RU") == "GLRGDD_RU");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");

  PdCurve curve;
  curve.kind = DetectorKind::AmgddRu;
  curve.points = {{0.0, 0.25, 1}, {2.5, 1.0, 4}};
  curve.trials_per_point = 4;
  curve.threshold_used = 1.5;
  curve.pfa = 0.01;
  curve.seed = 9;
  CHECK(format_pd_csv({curve}) ==
        "detector,snr_db,pd,trials,threshold,pfa,seed\n"
        "AMGDD_RU,0,0.25,4,1.5,0.01,9\n"
        "AMGDD_RU,2.5,1,4,1.5,0.01,9\n");
  CHECK(format_calibration_csv({{DetectorKind::Glrgdd, 0.01, 5000, 0.75, 3}}) ==
        "detector,threshold,pfa,trials,seed\nGLRGDD,0.75,0.01,5000,3\n");
}
