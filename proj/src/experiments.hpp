#pragma once

#include "config.hpp"

namespace annuli {

// Dispatches to the configured experiment, writes <out_dir>/report.json
// plus any optional CSV/SVG outputs, and returns 0 iff every configured
// tolerance check passed (1 otherwise).  Invalid configs and budget
// overruns surface as exceptions for the caller to map to exit codes.
int run_experiment(const ExperimentConfig& cfg);

}  // namespace annuli
