#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "stats.hpp"

namespace annuli {

using json = nlohmann::ordered_json;

// JSON skeleton shared by all experiments: resolved config + empty
// results/checks objects.  No timestamps anywhere: reports must be
// byte-identical for identical (config, seed).
json report_skeleton(const ExperimentConfig& cfg);

// Adds "pass": true iff every entry of report["checks"] is true, and
// writes the report; returns the pass flag.
bool finalize_report(json& report, const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

// t, S_sharp, S_smooth rows (NaN fields emitted as empty cells).
void write_samples_csv(const std::string& path,
                       const std::vector<Sample>& samples);

// Self-contained SVG: histogram of values/sigma with the standard normal
// density overlaid.
std::string histogram_svg(const std::vector<double>& values, double sigma,
                          int bins = 61);

}  // namespace annuli
