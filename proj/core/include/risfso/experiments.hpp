// SPDX-License-Identifier: Apache-2.0
// Figure, table and validation runs writing CSV files.
#pragma once

#include "risfso/config.hpp"
#include "risfso/planner.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace risfso {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config_error = 2;
inline constexpr int numerical_error = 3;
inline constexpr int validation_failure = 4;
} // namespace exit_code

struct RunOutcome {
    int exit_code = exit_code::ok;
    std::vector<std::string> files; // relative to output_dir
    std::string message;
};

// Reference values of the design table, keyed by strategy and regime.
struct DesignReference {
    Strategy scenario;
    Regime regime;
    double required_snr_db;
    long bs_count;
};
const std::vector<DesignReference>& design_references();

// Runs cfg.experiment into cfg.output_dir, writing params.csv, the
// experiment's CSV files and MANIFEST. Never throws for numerical or
// validation problems; those map to exit codes.
RunOutcome run_experiment(const ExperimentConfig& cfg, std::ostream& log);

} // namespace risfso
