// SPDX-License-Identifier: Apache-2.0
// Flat key = value experiment configuration.
#pragma once

#include "risfso/scenario.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace risfso {

enum class Experiment { fig4, fig5, fig6, fig7, fig8, fig9, table2, validate, custom };

std::string to_string(Experiment e);
std::optional<Experiment> parse_experiment(const std::string& s);

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line = 0);
    int line() const { return line_; }

private:
    int line_;
};

struct ExperimentConfig {
    Experiment experiment = Experiment::validate;
    ScenarioConfig scenario;
    std::size_t mc_samples = 100000;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    double p_out_target = 1e-3;
    double rail_length_m = 100000.0;
    bool im_dd_half = false;
    bool w0_hat_explicit = false; // otherwise the waist follows Psi

    // Throws ConfigError naming the violated invariant.
    void validate() const;
};

struct ConfigKey {
    std::string name;
    std::string unit; // accepted as an optional suffix after the number
    std::string help;
};

// Every accepted key in the order params.csv lists them.
const std::vector<ConfigKey>& config_keys();

// Apply one override; throws ConfigError for unknown keys or bad values.
void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value, int line = 0);

// Parse a document: '#' starts a comment, blank lines are ignored, every
// other line is key = value. Later duplicates are an error.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// (key, value, unit) for every key, values formatted with 9 significant digits.
std::vector<std::vector<std::string>> effective_params(const ExperimentConfig& cfg);

} // namespace risfso
