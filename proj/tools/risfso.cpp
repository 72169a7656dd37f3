// SPDX-License-Identifier: Apache-2.0
// risfso: run a figure, table or validation experiment from a config file.
#include "risfso/config.hpp"
#include "risfso/csv.hpp"
#include "risfso/experiments.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct RunArgs {
    std::string config_path;
    std::string experiment;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::string out;
};

void add_common(CLI::App* cmd, RunArgs& a)
{
    cmd->add_option("--seed", a.seed, "64-bit RNG seed");
    cmd->add_option("--samples", a.samples, "Monte-Carlo sample count");
    cmd->add_option("--out", a.out, "Output directory");
}

int execute(const RunArgs& a, std::optional<risfso::Experiment> forced)
{
    risfso::ExperimentConfig cfg;
    try {
        if (!a.config_path.empty()) {
            cfg = risfso::load_config(a.config_path);
        }
        if (forced) {
            cfg.experiment = *forced;
        } else if (!a.experiment.empty()) {
            const auto e = risfso::parse_experiment(a.experiment);
            if (!e) {
                throw risfso::ConfigError("unknown experiment '" + a.experiment + "'");
            }
            cfg.experiment = *e;
        }
        if (a.seed) {
            cfg.seed = *a.seed;
        }
        if (a.samples) {
            cfg.mc_samples = *a.samples;
        }
        if (!a.out.empty()) {
            cfg.output_dir = a.out;
        }
        cfg.validate();
    } catch (const risfso::ConfigError& e) {
        std::cerr << "risfso: config error: " << e.what() << '\n';
        return risfso::exit_code::config_error;
    }

    const risfso::RunOutcome r = risfso::run_experiment(cfg, std::cerr);
    for (const std::string& f : r.files) {
        std::cout << cfg.output_dir << '/' << f << '\n';
    }
    if (r.exit_code != risfso::exit_code::ok) {
        std::cerr << "risfso: " << r.message << '\n';
    }
    return r.exit_code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Outage, coverage and design runs for RIS-assisted FSO train links"};
    app.set_version_flag("--version", risfso::library_version());
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "Run the experiment named in a config file");
    run->add_option("--config", run_args.config_path, "Flat key = value config file")->required()->check(CLI::ExistingFile);
    run->add_option("--experiment", run_args.experiment,
                    "fig4|fig5|fig6|fig7|fig8|fig9|table2|validate|custom");
    add_common(run, run_args);

    RunArgs val_args;
    CLI::App* validate = app.add_subcommand("validate", "Closed-form versus oracle report");
    validate->add_option("--config", val_args.config_path, "Optional config file")->check(CLI::ExistingFile);
    add_common(validate, val_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : risfso::exit_code::config_error;
    }

    if (*run) {
        return execute(run_args, std::nullopt);
    }
    return execute(val_args, risfso::Experiment::validate);
}
