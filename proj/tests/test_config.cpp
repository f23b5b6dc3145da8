#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "config.hpp"

using namespace annuli;

TEST_CASE("presets") {
  CHECK(alpha_preset("e") == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(alpha_preset("sqrt2") == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(alpha_preset("two_pow_quarter") ==
        doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-15));
  CHECK(alpha_preset("golden") ==
        doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(alpha_preset("nope"), std::invalid_argument);
}

TEST_CASE("defaults and M fallback") {
  ExperimentConfig cfg;
  CHECK(cfg.experiment == "variance");
  CHECK(cfg.resolved_M() == doctest::Approx(27000.0));  // L^3 with L = 30
  cfg.M = 500.0;
  CHECK(cfg.resolved_M() == 500.0);
  cfg.L = 20.0;
  cfg.M = -1.0;
  CHECK(cfg.resolved_M() == doctest::Approx(8000.0));
}

TEST_CASE("parse: values, comments, quoting") {
  auto cfg = parse_config_text(
      "# comment line\n"
      "experiment = \"moments\"  # trailing comment\n"
      "alpha = \"sqrt2\"\n"
      "T = 5000\n"
      "L = 20\n"
      "n_samples = 777\n"
      "seed = 9\n"
      "write_samples = true\n");
  CHECK(cfg.experiment == "moments");
  CHECK(cfg.alpha_name == "sqrt2");
  CHECK(cfg.alpha == doctest::Approx(std::sqrt(2.0)));
  CHECK(cfg.T == 5000.0);
  CHECK(cfg.L == 20.0);
  CHECK(cfg.resolved_M() == doctest::Approx(8000.0));
  CHECK(cfg.n_samples == 777);
  CHECK(cfg.seed == 9);
  CHECK(cfg.write_samples);
}

TEST_CASE("parse: numeric alpha") {
  auto cfg = parse_config_text("alpha = 1.25\n");
  CHECK(cfg.alpha == 1.25);
  CHECK(cfg.alpha_name == "custom");
}

TEST_CASE("round trip: parse(emit(cfg)) == cfg") {
  ExperimentConfig cfg;
  cfg.experiment = "distribution";
  cfg.alpha_name = "custom";
  cfg.alpha = 1.234567890123456;
  cfg.T = 12345.0;
  cfg.L = 17.0;
  cfg.M = 4913.0;
  cfg.window = "indicator_1_2";
  cfg.n_samples = 31415;
  cfg.seed = 271828;
  cfg.out_dir = "/tmp/somewhere";
  cfg.write_samples = true;
  auto again = parse_config_text(emit_config(cfg));
  CHECK(again == cfg);
  // and emission is a fixed point
  CHECK(emit_config(again) == emit_config(cfg));

  // defaults round-trip too; parsing materializes M = L^3
  ExperimentConfig def;
  auto back = parse_config_text(emit_config(def));
  def.M = def.resolved_M();
  CHECK(back == def);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_config_text("unknown_key = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("T = not_a_number\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("experiment = \"nope\"\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("garbage line without equals\n"),
                  std::invalid_argument);
}

TEST_CASE("validation rejects out-of-range fields") {
  ExperimentConfig cfg;
  validate_config(cfg);  // defaults are valid
  cfg.n_samples = 0;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg = {};
  cfg.alpha = -1.0;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg = {};
  cfg.T = 0.0;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg = {};
  cfg.L = -5.0;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg = {};
  cfg.window = "sawtooth";
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
}

TEST_CASE("load_config reads files, errors on missing path") {
  auto path = std::filesystem::temp_directory_path() / "annuli_cfg_test.toml";
  {
    std::ofstream out(path);
    out << "experiment = \"zeta_check\"\nseed = 5\n";
  }
  auto cfg = load_config(path.string());
  CHECK(cfg.experiment == "zeta_check");
  CHECK(cfg.seed == 5);
  std::filesystem::remove(path);
  CHECK_THROWS(load_config(path.string()));
}
