// SPDX-License-Identifier: Apache-2.0
#include "risfso/montecarlo.hpp"
#include "risfso/stats.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace risfso;
using risfso::test::Gen;
using risfso::test::rel_gap;

namespace {

ClosedFormConstants ris_c(double C_a, double sigma2, double varpi)
{
    return ris_constants(0.6, C_a / 0.6, sigma2, varpi, 100.0);
}

ClosedFormConstants direct_c(double C_d, double sigma2, double xi)
{
    return direct_constants(0.5, C_d / 0.5, sigma2, xi);
}

// E[h^2] by quadrature of the link density in log h.
double moment_by_quadrature(const LinkStats& link, double lo, double hi)
{
    return test::integrate_log_panels([&](double h) { return h * h * link.pdf(h); }, std::log(lo), std::log(hi));
}

double mc_second_moment(const LinkStats& link, std::size_t n, double& se)
{
    const std::vector<double> h = sample_link_gains(link, n, RngStream{31, 0});
    long double s1 = 0.0L;
    long double s2 = 0.0L;
    for (double v : h) {
        const long double x = static_cast<long double>(v) * v;
        s1 += x;
        s2 += x * x;
    }
    const double mean = static_cast<double>(s1 / n);
    se = std::sqrt((static_cast<double>(s2 / n) - mean * mean) / n);
    return mean;
}

ScenarioConfig single_element(Strategy s, Regime r)
{
    ScenarioConfig cfg;
    cfg.strategy = s;
    cfg.regime = r;
    cfg.ris.N_k = 1;
    cfg.ris.N_l = 1;
    cfg.ris.N_m = 1;
    return cfg;
}

} // namespace

TEST_CASE("mean SNR coefficients")
{
    const ScenarioConfig cfg;
    const MeanSnrCoefficients m = MeanSnrCoefficients::from(cfg);
    const double e2p = cfg.eta * cfg.eta * cfg.power_P;
    CHECK(rel_gap(m.gamma_bar_b, e2p / (cfg.sigma_w * cfg.sigma_w)) < 1e-14);
    CHECK(rel_gap(m.gamma_bar_kl, e2p * cfg.ris.rho * cfg.ris.rho / (cfg.sigma_w1 * cfg.sigma_w1)) < 1e-14);
    CHECK(rel_gap(m.gamma_bar_kl_prime, e2p * cfg.ris.rho * cfg.ris.rho / (cfg.sigma_w2 * cfg.sigma_w2)) < 1e-14);
    MeanSnrCoefficients bad = m;
    bad.gamma_bar_kl = 0.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("second moments against frozen high-precision values")
{
    // mpmath, 40 digits
    const ShapeParams gg{4.0, 2.5};
    CHECK(rel_gap(second_moment_strong_ris(ris_c(0.3, 0.1, 3.0), gg, 3.0), 0.12213157894736842) < 1e-13);
    CHECK(rel_gap(second_moment_strong_direct(direct_c(0.05, 0.1, 2.35), gg, 2.35), 0.003211822864739116) < 1e-13);
    CHECK(rel_gap(second_moment_weak_ris(ris_c(0.3, 0.01, 3.0), 0.01, 3.0), 0.072558770310006623) < 1e-13);
}

TEST_CASE("property: Meijer G moment route equals the Beta moment route")
{
    // The Meijer route integrates up to h = 1, so amplitudes stay small
    // enough that the turbulence tail beyond 1 / C carries no weight.
    Gen g(41);
    for (int i = 0; i < 40; ++i) {
        const ShapeParams gg = gg_shape_params(g.log_uniform(0.05, 3.0));
        const double varpi = g.log_uniform(0.5, 200.0);
        const double xi = g.uniform(0.8, 6.0);
        const ClosedFormConstants rc = ris_c(g.log_uniform(1e-5, 1e-3), 0.2, varpi);
        const ClosedFormConstants dc = direct_c(g.log_uniform(1e-5, 1e-3), 0.2, xi);
        CHECK(rel_gap(second_moment_strong_ris_meijer(rc, gg, varpi), second_moment_strong_ris(rc, gg, varpi)) < 1e-8);
        CHECK(rel_gap(second_moment_strong_direct_meijer(dc, gg, xi), second_moment_strong_direct(dc, gg, xi)) < 1e-8);
    }
}

TEST_CASE("direct second moments against quadrature of the density")
{
    const ScenarioConfig cfg;
    const LinkStats weak = direct_link(100.0, cfg.atm, cfg.pointing, Regime::WeakLN);
    const double hw = weak.constants.C_d;
    CHECK(rel_gap(second_moment_weak(weak).Gamma2_b, moment_by_quadrature(weak, 1e-12 * hw, 10.0 * hw)) < 5e-2);
    const LinkStats strong = direct_link(200.0, cfg.atm, cfg.pointing, Regime::ModerateStrongGG);
    const double hs = strong.constants.C_d;
    CHECK(rel_gap(second_moment_strong(strong).Gamma2_b, moment_by_quadrature(strong, 1e-14 * hs, 60.0 * hs)) < 1e-2);
    CHECK(std::isnan(second_moment_strong(strong).Gamma2_kl));
    CHECK_THROWS_AS(second_moment_weak(strong), DomainError);
}

TEST_CASE("RIS second moments against sampling")
{
    const ScenarioConfig cfg;
    const RisLayout ris = cfg.effective_ris();
    const double x = cfg.track.L_0 + cfg.track.L_b + 0.5 * cfg.track.L_m;
    const ElementGeometry geom = element_geometry(cfg.track, ris, 13, 5, 5, detector_position(cfg.track, x));
    for (Regime r : {Regime::WeakLN, Regime::ModerateStrongGG}) {
        const LinkStats link = ris_link(geom, cfg.atm, cfg.sway, ris.a_p, r);
        double se = 0.0;
        const double mc = mc_second_moment(link, 1000000, se);
        const double closed = link.second_moment();
        const double tol = r == Regime::WeakLN ? 5e-2 : 3e-2;
        INFO(to_string(r), " closed=", closed, " mc=", mc, " se=", se);
        CHECK(std::fabs(closed - mc) <= std::max(3.0 * se, tol * closed));
    }
}

TEST_CASE("strong direct moment approaches the turbulence moment as the pointing spread vanishes")
{
    const ShapeParams gg{4.0, 2.5};
    const double t2 = (1.0 + 1.0 / gg.alpha) * (1.0 + 1.0 / gg.beta);
    const ClosedFormConstants c = direct_c(0.05, 0.1, 1e3);
    CHECK(rel_gap(second_moment_strong_direct(c, gg, 1e3), 0.05 * 0.05 * t2) < 3e-6);
    CHECK(rel_gap(second_moment_strong_direct_meijer(c, gg, 50.0), 0.05 * 0.05 * t2) < 1e-3);
}

TEST_CASE("property: second moments scale with the square of the amplitude constant")
{
    Gen g(42);
    for (int i = 0; i < test::kPropertyCases; ++i) {
        const double C = g.uniform(0.01, 0.4);
        const double s2 = g.uniform(0.001, 0.5);
        const double varpi = g.log_uniform(0.5, 1e4);
        const double xi = g.uniform(0.5, 10.0);
        const ShapeParams gg = gg_shape_params(s2);
        CHECK(rel_gap(second_moment_weak_ris(ris_c(2 * C, s2, varpi), s2, varpi),
                      4.0 * second_moment_weak_ris(ris_c(C, s2, varpi), s2, varpi)) < 1e-13);
        CHECK(rel_gap(second_moment_weak_direct(direct_c(2 * C, s2, xi), s2, xi),
                      4.0 * second_moment_weak_direct(direct_c(C, s2, xi), s2, xi)) < 1e-13);
        CHECK(rel_gap(second_moment_strong_ris(ris_c(2 * C, s2, varpi), gg, varpi),
                      4.0 * second_moment_strong_ris(ris_c(C, s2, varpi), gg, varpi)) < 1e-13);
        CHECK(rel_gap(second_moment_strong_direct(direct_c(2 * C, s2, xi), gg, xi),
                      4.0 * second_moment_strong_direct(direct_c(C, s2, xi), gg, xi)) < 1e-13);
    }
}

TEST_CASE("single-element FOR and DOR average SNR coincide")
{
    for (Regime r : {Regime::WeakLN, Regime::ModerateStrongGG}) {
        ScenarioConfig f = single_element(Strategy::FOR, r);
        f.sigma_w2 = f.sigma_w1;
        ScenarioConfig d = f;
        d.strategy = Strategy::DOR;
        const double t = ris_segment_time(f, 30.0);
        CHECK(rel_gap(average_snr(f, t), average_snr(d, t)) < 1e-14);
        const std::vector<Branch> b = active_branches(f, t);
        REQUIRE(b.size() == 1);
        CHECK(rel_gap(average_snr(f, t), f.gamma_bar_kl() * b[0].link.second_moment()) < 1e-14);
    }
}

TEST_CASE("average SNR rejects a time outside the strategy's segment")
{
    ScenarioConfig cfg;
    cfg.strategy = Strategy::DOR;
    CHECK_THROWS_AS(average_snr(cfg, direct_segment_time(cfg, 10.0)), DomainError);
}

TEST_CASE("outage limits at vanishing and huge thresholds")
{
    for (Strategy s : {Strategy::Direct, Strategy::FOR, Strategy::DOR, Strategy::Relay}) {
        for (Regime r : {Regime::WeakLN, Regime::ModerateStrongGG}) {
            ScenarioConfig cfg;
            cfg.strategy = s;
            cfg.regime = r;
            const double t = reference_time(cfg);
            const double mean = average_snr(cfg, t);
            INFO(to_string(s), "/", to_string(r));
            CHECK(outage_closed_form(cfg, 1e-8 * mean, t).p_out < 1e-6);
            CHECK(outage_closed_form(cfg, 1e8 * mean, t).p_out > 1.0 - 1e-6);
            CHECK_THROWS_AS(outage_closed_form(cfg, 0.0, t), DomainError);
        }
    }
}

TEST_CASE("single-element outage against the empirical CDF")
{
    for (Regime r : {Regime::WeakLN, Regime::ModerateStrongGG}) {
        const ScenarioConfig cfg = single_element(Strategy::FOR, r);
        const double t = ris_segment_time(cfg, 30.0);
        const double mean = average_snr(cfg, t);
        const std::vector<double> th{0.2 * mean, 0.5 * mean, mean};
        const EmpiricalSummary e = simulate_snr(cfg, t, 1000000, RngStream{51, 0}, th);
        for (double g : th) {
            INFO(to_string(r), " threshold/mean=", g / mean);
            CHECK(std::fabs(outage_closed_form(cfg, g, t).p_out - e.outage_at.at(g).probability) <= 0.01);
        }
    }
}

TEST_CASE("property: outage is non-decreasing in the threshold")
{
    for (Strategy s : {Strategy::Direct, Strategy::FOR, Strategy::DOR, Strategy::Relay}) {
        for (Regime r : {Regime::WeakLN, Regime::ModerateStrongGG}) {
            ScenarioConfig cfg;
            cfg.strategy = s;
            cfg.regime = r;
            const double t = reference_time(cfg);
            const std::vector<Branch> b = active_branches(cfg, t);
            const double mean = average_snr(b);
            double prev = 0.0;
            for (int i = 0; i < 50; ++i) {
                const double g = mean * std::pow(10.0, -6.0 + 8.0 * i / 49.0);
                const double p = outage_closed_form(b, g, s, r).p_out;
                CHECK(p >= prev);
                prev = p;
            }
        }
    }
}

TEST_CASE("product form equals the product of per-element factors")
{
    for (Strategy s : {Strategy::FOR, Strategy::DOR}) {
        for (Regime r : {Regime::WeakLN, Regime::ModerateStrongGG}) {
            ScenarioConfig cfg;
            cfg.strategy = s;
            cfg.regime = r;
            const double t = reference_time(cfg);
            const std::vector<Branch> b = active_branches(cfg, t);
            const double g = 0.3 * average_snr(b) / static_cast<double>(b.size());
            double log_prod = 0.0;
            for (const Branch& br : b) {
                log_prod += br.link.tail(std::sqrt(g / br.gamma_bar)).log_cdf;
            }
            const OutageResult o = outage_closed_form(b, g, s, r);
            REQUIRE(o.per_element_cdf.has_value());
            CHECK(o.per_element_cdf.value() == doctest::Approx(b[0].link.tail(std::sqrt(g / b[0].gamma_bar)).cdf()));
            CHECK(rel_gap(o.log_p_out, log_prod) < 1e-12);
        }
    }
}

TEST_CASE("direct weak outage differentiates back to the SNR density")
{
    ScenarioConfig cfg;
    cfg.strategy = Strategy::Direct;
    const double t = reference_time(cfg);
    const std::vector<Branch> b = active_branches(cfg, t);
    REQUIRE(b.size() == 1);
    const double gb = b[0].gamma_bar;
    const double mean = average_snr(b);
    for (double q : {0.05, 0.3, 0.8, 1.5}) {
        const double g = q * mean;
        const double step = 1e-4 * g;
        const double num = (outage_closed_form(b, g + step, Strategy::Direct, Regime::WeakLN).raw -
                            outage_closed_form(b, g - step, Strategy::Direct, Regime::WeakLN).raw) /
                           (2.0 * step);
        const double h = std::sqrt(g / gb);
        const double pdf = b[0].link.pdf(h) / (2.0 * std::sqrt(g * gb));
        CHECK(rel_gap(num, pdf) < 1e-3);
    }
}

TEST_CASE("spectral efficiency")
{
    CHECK(spectral_efficiency(0.0) == 0.0);
    CHECK(spectral_efficiency(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    // mpmath log2(1001)
    CHECK(rel_gap(spectral_efficiency(1e3), 9.9672262588359935) < 1e-14);
    CHECK(spectral_efficiency(1e3, true) == doctest::Approx(0.5 * 9.9672262588359935));
    CHECK_THROWS_AS(spectral_efficiency(-1.0), DomainError);
    CHECK(to_db(from_db(17.5)) == doctest::Approx(17.5).epsilon(1e-14));
}
