// SPDX-License-Identifier: Apache-2.0
#include "risfso/config.hpp"
#include "risfso/csv.hpp"
#include "risfso/experiments.hpp"
#include "risfso/montecarlo.hpp"
#include "risfso/stats.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unistd.h>

using namespace risfso;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("risfso_test_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

ExperimentConfig config_for(const std::string& text, const fs::path& out)
{
    ExperimentConfig c = parse_config(text);
    c.output_dir = out.string();
    return c;
}

} // namespace

TEST_CASE("empty config yields the default system parameters")
{
    const ExperimentConfig c = parse_config("");
    CHECK(c.scenario.atm.lambda == doctest::Approx(850e-9).epsilon(1e-15));
    CHECK(c.scenario.power_P == doctest::Approx(0.04).epsilon(1e-15));
    CHECK(c.scenario.ris.rho == 0.95);
    CHECK(c.scenario.track.V_HST == doctest::Approx(300.0 / 3.6));
    CHECK(c.experiment == Experiment::validate);
    const ExperimentConfig blank = parse_config("# only a comment\n\n   \n");
    CHECK(blank.scenario.power_P == c.scenario.power_P);
}

TEST_CASE("overrides and units")
{
    const ExperimentConfig c = parse_config("V_HST = 500 km/h\nP = 80 mW\nPsi = 2 deg\nexperiment = fig4\n");
    CHECK(c.scenario.track.V_HST == doctest::Approx(500.0 / 3.6));
    CHECK(c.scenario.power_P == doctest::Approx(0.08));
    CHECK(c.scenario.track.Psi == doctest::Approx(2.0 * std::numbers::pi / 180.0));
    CHECK(c.scenario.atm.w0_hat == doctest::Approx(c.scenario.atm.lambda / (2.0 * std::numbers::pi * c.scenario.track.Psi)));
    CHECK(c.experiment == Experiment::fig4);
    // Dwell time per cell follows the new speed.
    const double t_m = cell_dwell_time(c.scenario.track, c.scenario.ris);
    CHECK(t_m == doctest::Approx(c.scenario.track.L_m / (c.scenario.ris.N_m * (500.0 / 3.6))).epsilon(1e-14));
    CHECK(t_m == doctest::Approx(0.0288).epsilon(1e-12));
}

TEST_CASE("invalid configurations are rejected")
{
    CHECK_THROWS_AS(parse_config("rho = 1.01\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("not_a_key = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("P = 40\nP = 50\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("experiment = fig99\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("N_m = 2.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("mc_samples = 0\n"), ConfigError);
    try {
        parse_config("# header\nP = 40 mW\nthis line has no equals sign\n");
        FAIL("expected a parse error");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(load_config("/nonexistent/risfso.conf"), ConfigError);
}

TEST_CASE("effective parameters list every key")
{
    const ExperimentConfig c = parse_config("");
    const auto rows = effective_params(c);
    CHECK(rows.size() == config_keys().size());
    for (const auto& r : rows) {
        CHECK(r.size() == 3);
    }
}

TEST_CASE("number formatting")
{
    CHECK(fmt_num(0.1) == "0.1");
    CHECK(fmt_num(1.0 / 3.0) == "0.333333333");
    CHECK(fmt_num(std::nan("")) == "nan");
    CHECK(fmt_num(-HUGE_VAL) == "-inf");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("plain") == "plain");
}

TEST_CASE("custom run writes headed CSVs and a manifest")
{
    const fs::path out = scratch("custom");
    const ExperimentConfig c = config_for("experiment = custom\nstrategy = Relay\nregime = LN\nseed = 9\n", out);
    std::ostringstream log;
    const RunOutcome r = run_experiment(c, log);
    REQUIRE(r.exit_code == exit_code::ok);
    CHECK(fs::exists(out / "custom.csv"));
    CHECK(fs::exists(out / "params.csv"));
    const std::string csv = slurp(out / "custom.csv");
    CHECK(csv.rfind("# risfso " + library_version() + " seed=9\n", 0) == 0);
    CHECK(csv.find("scenario,regime,") != std::string::npos);
    CHECK(csv.find("\nRelay,LN,") != std::string::npos);
    const std::string manifest = slurp(out / "MANIFEST");
    CHECK(manifest.find("status=ok") != std::string::npos);
    CHECK(manifest.find("file=custom.csv rows=1") != std::string::npos);
}

TEST_CASE("identical config and seed give byte-identical outputs")
{
    const std::string text = "experiment = custom\nstrategy = FOR\nregime = GG\nseed = 4\n";
    const fs::path dir = scratch("det");
    std::ostringstream log;
    REQUIRE(run_experiment(config_for(text, dir), log).exit_code == exit_code::ok);
    std::vector<std::string> first;
    for (const char* f : {"custom.csv", "params.csv", "MANIFEST"}) {
        first.push_back(slurp(dir / f));
    }
    fs::remove_all(dir);
    REQUIRE(run_experiment(config_for(text, dir), log).exit_code == exit_code::ok);
    std::size_t i = 0;
    for (const char* f : {"custom.csv", "params.csv", "MANIFEST"}) {
        CHECK(slurp(dir / f) == first[i++]);
    }
}

TEST_CASE("exit codes")
{
    std::ostringstream log;
    // A configuration that only fails validation at run time.
    ExperimentConfig bad = parse_config("");
    bad.scenario.ris.rho = 2.0;
    bad.output_dir = scratch("bad").string();
    CHECK(run_experiment(bad, log).exit_code == exit_code::config_error);

    // Output directory below a regular file.
    const fs::path blocker = scratch("blocker");
    fs::create_directories(blocker.parent_path());
    std::ofstream(blocker) << "x";
    ExperimentConfig blocked = parse_config("experiment = custom\n");
    blocked.output_dir = (blocker / "sub").string();
    CHECK(run_experiment(blocked, log).exit_code == exit_code::config_error);

    // Threshold so high that no SNR on the grid meets the target.
    const fs::path out = scratch("numeric");
    const RunOutcome r = run_experiment(config_for("experiment = custom\ngamma_th = 250 dB\n", out), log);
    CHECK(r.exit_code == exit_code::numerical_error);
    const std::string manifest = slurp(out / "MANIFEST");
    CHECK(manifest.find("status=error") != std::string::npos);
    CHECK(manifest.find("failed_at=") != std::string::npos);
}

TEST_CASE("validate run passes at default parameters")
{
    const fs::path out = scratch("validate");
    std::ostringstream log;
    const RunOutcome r = run_experiment(config_for("experiment = validate\n", out), log);
    INFO(log.str());
    CHECK(r.exit_code == exit_code::ok);
    const std::string csv = slurp(out / "validation.csv");
    CHECK(csv.find("printed_ris_pdf_weak") != std::string::npos);
    CHECK(slurp(out / "MANIFEST").find("status=ok") != std::string::npos);
}

TEST_CASE("single-point outage: closed form against sampling for the direct weak link")
{
    ScenarioConfig s;
    s.strategy = Strategy::Direct;
    s.regime = Regime::WeakLN;
    const double t = reference_time(s);
    std::vector<Branch> b = active_branches(s, t);
    // Scale to the average SNR at which the closed-form outage is 0.2.
    double lo = -20.0;
    double hi = 60.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        std::vector<Branch> x = b;
        x[0].gamma_bar = from_db(mid);
        (outage_closed_form(x, s.gamma_th(), s.strategy, s.regime).p_out > 0.2 ? lo : hi) = mid;
    }
    const double k = from_db(hi) / b[0].gamma_bar;
    b[0].gamma_bar *= k;
    const double closed = outage_closed_form(b, s.gamma_th(), s.strategy, s.regime).p_out;
    const double th = s.gamma_th() / k;
    const EmpiricalSummary mc = simulate_snr(s, t, 10000, RngStream{1, 0}, {th});
    const OutageEstimate& e = mc.outage_at.at(th);
    INFO("closed=", closed, " mc=", e.probability, " se=", e.stderr_);
    CHECK(std::fabs(closed - e.probability) <= 3.0 * e.stderr_);
}
