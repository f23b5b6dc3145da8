#pragma once

#include <cstdint>
#include <string>

namespace annuli {

// Resolved experiment configuration.  Parsed from a flat TOML file
// (key = value pairs, # comments) with CLI flags overriding file values;
// emit() materializes every default so parse(emit(cfg)) == cfg.
struct ExperimentConfig {
  std::string experiment = "variance";  // variance | moments | distribution |
                                        // unsmoothing | poisson_truncation |
                                        // zeta_check | dioph_scan | spectrum
  std::string alpha_name = "e";         // preset name or "custom"
  double alpha = 2.718281828459045;
  double T = 1e4;
  double L = 30.0;
  double M = -1.0;  // < 0 means "default to L^3"
  std::string window = "smooth_gaussian";  // or "indicator_1_2"
  int n_samples = 20000;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  bool write_samples = false;

  double resolved_M() const { return M > 0.0 ? M : L * L * L; }

  bool operator==(const ExperimentConfig&) const = default;
};

// Named aspect-ratio presets: e, sqrt2, two_pow_quarter, golden.
double alpha_preset(const std::string& name);

// Parse a flat TOML config; unknown keys are an error.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// TOML text with all defaults materialized; round-trips through parse.
std::string emit_config(const ExperimentConfig& cfg);

// Throws invalid_argument when fields are out of range.
void validate_config(const ExperimentConfig& cfg);

}  // namespace annuli
