// Command-line front end; talks to the core exclusively through the C API.
#include <cstdio>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "annuli.h"

namespace {

struct ConfigDeleter {
  void operator()(annuli_config* c) const { annuli_config_free(c); }
};
using ConfigPtr = std::unique_ptr<annuli_config, ConfigDeleter>;

int fail(const char* stage) {
  std::fprintf(stderr, "annuli: %s: %s\n", stage, annuli_last_error());
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice-point statistics in thin elliptic annuli"};
  app.require_subcommand(0, 0);

  std::string experiment;
  app.add_option("experiment", experiment,
                 "variance | moments | distribution | unsmoothing | "
                 "poisson_truncation | zeta_check | dioph_scan | spectrum")
      ->required();

  std::string config_path, alpha, T, L, M, samples, seed, out_dir, window;
  bool write_samples = false, print_config = false;
  app.add_option("--config", config_path, "TOML config file");
  app.add_option("--alpha", alpha, "aspect ratio (number or preset name)");
  app.add_option("--T", T, "radius scale");
  app.add_option("--L", L, "annulus width parameter (rho = 1/L)");
  app.add_option("--M", M, "smoothness parameter (default L^3)");
  app.add_option("--samples", samples, "Monte Carlo sample count");
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--out", out_dir, "output directory for reports");
  app.add_option("--window", window, "smooth_gaussian | indicator_1_2");
  app.add_flag("--write-samples", write_samples, "also emit samples.csv");
  app.add_flag("--print-config", print_config,
               "print the resolved config and exit");

  CLI11_PARSE(app, argc, argv);

  annuli_config* raw = nullptr;
  annuli_status st = config_path.empty()
                         ? annuli_config_create(&raw)
                         : annuli_config_load(config_path.c_str(), &raw);
  if (st != ANNULI_OK) return fail("config");
  ConfigPtr cfg(raw);

  // CLI flags override file values.
  auto set = [&](const char* key, const std::string& value) {
    if (value.empty()) return true;
    if (annuli_config_set(cfg.get(), key, value.c_str()) != ANNULI_OK) {
      fail(key);
      return false;
    }
    return true;
  };
  if (!set("experiment", experiment)) return 2;
  if (!set("alpha", alpha) || !set("T", T) || !set("L", L) || !set("M", M) ||
      !set("n_samples", samples) || !set("seed", seed) ||
      !set("out_dir", out_dir) || !set("window", window))
    return 2;
  if (write_samples && !set("write_samples", "true")) return 2;

  if (print_config) {
    char* text = nullptr;
    if (annuli_config_emit(cfg.get(), &text) != ANNULI_OK) return fail("emit");
    std::fputs(text, stdout);
    annuli_string_free(text);
    return 0;
  }

  int exit_status = 0;
  st = annuli_run_experiment(cfg.get(), &exit_status);
  if (st == ANNULI_ERR_BUDGET) {
    fail("run");
    return 3;  // resource error
  }
  if (st != ANNULI_OK) return fail("run");
  return exit_status;
}
