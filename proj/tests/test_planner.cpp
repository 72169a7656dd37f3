// SPDX-License-Identifier: Apache-2.0
#include "risfso/planner.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace risfso;
using risfso::test::rel_gap;

namespace {

ScenarioConfig make(Strategy s, Regime r)
{
    ScenarioConfig cfg;
    cfg.strategy = s;
    cfg.regime = r;
    return cfg;
}

// Outage with every branch coefficient scaled so the reference one equals db.
double outage_at_db(const ScenarioConfig& cfg, double db)
{
    std::vector<Branch> b = active_branches(cfg, reference_time(cfg));
    const double scale = from_db(db) / cfg.reference_gamma_bar();
    for (Branch& x : b) {
        x.gamma_bar *= scale;
    }
    return outage_closed_form(b, cfg.gamma_th(), cfg.strategy, cfg.regime).p_out;
}

} // namespace

TEST_CASE("required SNR brackets the target on the 0.1 dB grid")
{
    const double target = 1e-3;
    for (const auto& [s, r] : {std::pair{Strategy::FOR, Regime::WeakLN}, std::pair{Strategy::Relay, Regime::ModerateStrongGG},
                               std::pair{Strategy::Direct, Regime::WeakLN}, std::pair{Strategy::DOR, Regime::WeakLN}}) {
        const ScenarioConfig cfg = make(s, r);
        const double db = required_snr(cfg, target);
        INFO(to_string(s), "/", to_string(r), " required=", db);
        CHECK(outage_at_db(cfg, db - kSnrStepDb) > target);
        CHECK(outage_at_db(cfg, db) <= target);
        // On the grid.
        CHECK(std::fabs((db - kSnrGridLoDb) / kSnrStepDb - std::round((db - kSnrGridLoDb) / kSnrStepDb)) < 1e-6);
    }
}

TEST_CASE("a looser outage target needs less SNR")
{
    for (Strategy s : {Strategy::Direct, Strategy::FOR, Strategy::DOR, Strategy::Relay}) {
        const ScenarioConfig cfg = make(s, Regime::WeakLN);
        CHECK(required_snr(cfg, 0.5) < required_snr(cfg, 1e-3));
    }
    const ScenarioConfig gg = make(Strategy::FOR, Regime::ModerateStrongGG);
    CHECK(required_snr(gg, 0.5) < required_snr(gg, 1e-3));
}

TEST_CASE("FOR weak-turbulence required SNR matches the design table")
{
    CHECK(required_snr(make(Strategy::FOR, Regime::WeakLN), 1e-3) == doctest::Approx(25.0).epsilon(2.0 / 25.0));
}

TEST_CASE("required SNR errors")
{
    ScenarioConfig cfg = make(Strategy::FOR, Regime::WeakLN);
    CHECK_THROWS_AS(required_snr(cfg, 0.0), DomainError);
    CHECK_THROWS_AS(required_snr(cfg, 1.0), DomainError);
    cfg.gamma_th_db = 200.0;
    CHECK_THROWS_AS(required_snr(cfg, 1e-3), NonBracketingError);
    cfg.gamma_th_db = -200.0;
    CHECK_THROWS_AS(required_snr(cfg, 1e-3), NonBracketingError);
}

TEST_CASE("BS counts")
{
    CHECK(bs_count(100000.0, 1000.0) == 100);
    CHECK(bs_count(100000.0, 1130.0) == 89);
    CHECK(bs_count(100000.0, 325.0) == 308);
    CHECK(bs_count(100000.0, 100000.0) == 1);
    CHECK_THROWS_AS(bs_count(100000.0, 0.0), DomainError);
}

TEST_CASE("diameter layout")
{
    const ScenarioConfig c = with_diameter(ScenarioConfig{}, 500.0);
    CHECK(c.track.L_b + c.track.L_m == doctest::Approx(500.0));
    CHECK(c.track.bs_spacing == 500.0);
    CHECK_THROWS_AS(with_diameter(ScenarioConfig{}, -1.0), DomainError);
}

TEST_CASE("coverage shrinks as the required SNR grows and composes with the edge SNR")
{
    for (Strategy s : {Strategy::Direct, Strategy::FOR, Strategy::DOR, Strategy::Relay}) {
        const ScenarioConfig cfg = make(s, Regime::ModerateStrongGG);
        const double lo_req = 30.0;
        const double hi_req = to_db(edge_average_snr(with_diameter(cfg, 50.0)));
        const CoverageResult a = coverage_diameter(cfg, lo_req);
        const CoverageResult b = coverage_diameter(cfg, hi_req);
        INFO(to_string(s), " D(30 dB)=", a.diameter_m, " D(", hi_req, " dB)=", b.diameter_m);
        CHECK(b.diameter_m <= a.diameter_m);
        for (const auto& [req, res] : {std::pair{lo_req, a}, std::pair{hi_req, b}}) {
            CHECK(to_db(edge_average_snr(with_diameter(cfg, res.diameter_m))) >= req);
            if (!res.saturated) {
                CHECK(to_db(edge_average_snr(with_diameter(cfg, res.diameter_m + kDiameterStep))) < req);
            }
        }
        CHECK_THROWS_AS(coverage_diameter(cfg, 400.0), UnreachableSnrError);
    }
}

TEST_CASE("design row invariants")
{
    const DesignRow row = design_row(make(Strategy::Relay, Regime::ModerateStrongGG), 1e-3, 100000.0);
    CHECK(row.bs_count == bs_count(100000.0, row.coverage_diameter_m));
    CHECK(row.required_snr_db == required_snr(make(Strategy::Relay, Regime::ModerateStrongGG), 1e-3));
    CHECK(row.scenario == Strategy::Relay);
}

TEST_CASE("L0 sweep")
{
    const ScenarioConfig cfg;
    const auto one = sweep_l0(cfg, {8.0});
    REQUIRE(one.size() == 1);
    CHECK(one[0].first == 8.0);
    CHECK(std::isfinite(one[0].second));

    const std::vector<double> grid{1.0, 4.0, 8.0, 16.0, 50.0, 100.0};
    const auto base = sweep_l0(cfg, grid);
    ScenarioConfig doubled = cfg;
    doubled.power_P *= 2.0;
    const auto twice = sweep_l0(doubled, grid);
    REQUIRE(base.size() == twice.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(twice[i].second - base[i].second == doctest::Approx(10.0 * std::log10(2.0)).epsilon(1e-9));
    }
    auto arg = [](const auto& v) {
        return std::max_element(v.begin(), v.end(), [](auto& x, auto& y) { return x.second < y.second; })->first;
    };
    CHECK(arg(base) == arg(twice));
    CHECK_THROWS_AS(sweep_l0(cfg, {}), DomainError);
    CHECK_THROWS_AS(sweep_l0(cfg, {4.0, 2.0}), DomainError);
}

TEST_CASE("covering divergence angle")
{
    ScenarioConfig cfg = make(Strategy::DOR, Regime::WeakLN);
    const double small = covering_psi(cfg);
    cfg.ris.N_k = 40;
    cfg.ris.N_l = 40;
    const double big = covering_psi(cfg);
    CHECK(big > small);
    ScenarioConfig c = cfg;
    c.set_psi(big);
    const RisLayout ris = c.effective_ris();
    const double d_in = norm(ris.position - bs_position(c.track));
    // 5 x 5 cells of 40 x 40 elements of diameter 2 a_r.
    const double half = 0.5 * 5 * 40 * 2.0 * ris.a_r;
    CHECK(beam_width(c.atm, d_in) >= std::hypot(half, half) * (1.0 - 1e-9));
}

TEST_CASE("RIS size sweep")
{
    const ScenarioConfig cfg = make(Strategy::DOR, Regime::WeakLN);
    const std::vector<std::array<int, 3>> sizes{{10, 10, 1}, {52, 52, 1}, {70, 70, 1}, {90, 90, 1}, {112, 112, 1}};
    const RisSizeSweep sw = sweep_ris_size(cfg, sizes, {100.0});
    REQUIRE(sw.rows.size() == sizes.size());
    for (std::size_t i = 1; i < sw.rows.size(); ++i) {
        CHECK(sw.rows[i].total_elements > sw.rows[i - 1].total_elements);
        CHECK(sw.rows[i].avg_snr_db > sw.rows[i - 1].avg_snr_db);
    }
    REQUIRE(sw.saturation_slope.size() == 1);

    const RisSizeSweep single = sweep_ris_size(cfg, {{10, 10, 1}}, {100.0});
    CHECK(single.rows.size() == 1);
    CHECK(single.saturation_slope.empty());
    CHECK_THROWS_AS(sweep_ris_size(cfg, {}, {100.0}), DomainError);
}

TEST_CASE("DOR gain from one cell to 25 cells is close to the element-count ratio")
{
    const ScenarioConfig cfg = make(Strategy::DOR, Regime::WeakLN);
    const RisSizeSweep sw = sweep_ris_size(cfg, {{10, 10, 1}, {10, 10, 25}}, {1000.0});
    REQUIRE(sw.rows.size() == 2);
    const double gain = sw.rows[1].avg_snr_db - sw.rows[0].avg_snr_db;
    INFO("gain=", gain);
    CHECK(std::fabs(gain - 10.0 * std::log10(25.0)) <= 1.0);
}
