// SPDX-License-Identifier: Apache-2.0
#include "risfso/channel.hpp"
#include "risfso/scenario.hpp"
#include "risfso/specfun.hpp"
#include "risfso/validation.hpp"
#include "support.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace risfso;
using risfso::test::Gen;
using risfso::test::rel_gap;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

AtmosphereParams table1_atm()
{
    return AtmosphereParams::table1(3.5 * kDeg);
}

// Mass of a link density over (0, inf) by log-spaced Gauss-Kronrod panels,
// over a range wide enough for every default-parameter link.
double link_mass(const LinkStats& l)
{
    const double top = std::log(l.direct ? l.h_p * l.pointing.h0_b : l.h_p * l.gml.h0);
    return test::integrate_log_panels([&](double h) { return l.pdf(h); }, top - 40.0, top + 4.0);
}

} // namespace

TEST_CASE("path loss")
{
    const AtmosphereParams a = table1_atm();
    CHECK(path_loss(a, 0.0) == 1.0);
    CHECK(rel_gap(path_loss(a, 1000.0), std::pow(10.0, -0.044)) < 1e-14);
    CHECK(path_loss(a, 1000.0) == doctest::Approx(0.9036494737).epsilon(1e-9));
    CHECK(path_loss(a, 100.0) == doctest::Approx(0.98992).epsilon(1e-5));
    CHECK_THROWS_AS(path_loss(a, -1.0), DomainError);
}

TEST_CASE("Rytov variance")
{
    const AtmosphereParams a = table1_atm();
    // mpmath
    CHECK(rel_gap(rytov_sigma2(a, 100.0), 0.00014701426440212278) < 1e-13);
    CHECK(rel_gap(rytov_sigma2(a, 200.0), std::pow(2.0, 11.0 / 6.0) * rytov_sigma2(a, 100.0)) < 1e-13);
    CHECK(rel_gap(rytov_sigma2(a, 1000.0), std::pow(10.0, 11.0 / 6.0) * rytov_sigma2(a, 100.0)) < 1e-13);
}

TEST_CASE("Gamma-Gamma shape parameters")
{
    const ShapeParams s = gg_shape_params(1e-6);
    CHECK(rel_gap(s.alpha, 1.0 / 1.96e-6) < 1e-5);
    CHECK(rel_gap(s.beta, 1.0 / 2.04e-6) < 1e-5);
    // mpmath
    const ShapeParams h = gg_shape_params(0.5);
    CHECK(rel_gap(h.alpha, 1.6199166922217162) < 1e-13);
    CHECK(rel_gap(h.beta, 0.95133273451157137) < 1e-13);
    CHECK(gg_shape_params(0.1).alpha > gg_shape_params(1.0).alpha);
}

TEST_CASE("turbulence densities")
{
    SUBCASE("log-normal mode")
    {
        const TurbulenceRegime r = TurbulenceRegime::make(Regime::WeakLN, 0.04);
        double best = 0.0;
        double arg = 0.0;
        for (int i = 1; i < 200000; ++i) {
            const double h = 0.5 + 1e-5 * i;
            const double f = turbulence_pdf(r, h);
            if (f > best) {
                best = f;
                arg = h;
            }
        }
        CHECK(std::fabs(arg - std::exp(2.0 * r.mu - 4.0 * r.sigma2)) < 2e-5);
    }
    SUBCASE("Gamma-Gamma symmetry in alpha and beta")
    {
        TurbulenceRegime a = TurbulenceRegime::make(Regime::ModerateStrongGG, 0.3);
        TurbulenceRegime b = a;
        std::swap(b.alpha, b.beta);
        for (double h : {0.1, 0.7, 1.0, 2.5}) {
            CHECK(rel_gap(turbulence_pdf(a, h), turbulence_pdf(b, h)) < 1e-12);
        }
    }
    SUBCASE("Gamma-Gamma normalization")
    {
        const TurbulenceRegime r = TurbulenceRegime::make(Regime::ModerateStrongGG, 0.3);
        const double m = test::integrate_log_panels([&](double h) { return turbulence_pdf(r, h); }, -30.0, 6.0);
        CHECK(std::fabs(m - 1.0) < 1e-8);
    }
    SUBCASE("unit mean")
    {
        for (Regime k : {Regime::WeakLN, Regime::ModerateStrongGG}) {
            const TurbulenceRegime r = TurbulenceRegime::make(k, 0.2);
            const double m = test::integrate_log_panels([&](double h) { return h * turbulence_pdf(r, h); }, -30.0, 6.0);
            CHECK(std::fabs(m - 1.0) < 1e-8);
        }
    }
}

TEST_CASE("beam width")
{
    const AtmosphereParams a = table1_atm();
    CHECK(beam_width(a, 0.0) == doctest::Approx(a.w0_hat).epsilon(1e-15));
    // mpmath
    CHECK(rel_gap(beam_width(a, 100.0), 12.217304763960508) < 1e-13);
    // Far-field slope is twice the half divergence.
    CHECK(rel_gap(beam_width(a, 1e6) / 1e6, 2.0 * 3.5 * kDeg) < 1e-6);
}

TEST_CASE("geometric loss parameters")
{
    const AtmosphereParams a = table1_atm();
    const SwayParams sway;
    SUBCASE("normal incidence")
    {
        // The RIS sway term carries sin^2(theta_in + theta_out) and vanishes.
        const GmlParams p = gml_params(ElementGeometry{50.0, 50.0, 0.0, 0.0, 100.0}, a, sway, 0.1);
        CHECK(rel_gap(p.delta_m2, 2.0 * 0.05 * 0.05) < 1e-14);
    }
    SUBCASE("h0 rises toward one with the aperture")
    {
        double prev = 0.0;
        for (double a_p : {0.5, 1.0, 2.0, 3.0}) {
            const GmlParams p = gml_params(ElementGeometry{5.0, 5.0, 0.0, 0.0, 10.0}, a, sway, a_p);
            CHECK(p.h0 > prev);
            prev = p.h0;
        }
        CHECK(prev > 1.0 - 1e-6);
    }
    SUBCASE("oblique geometry against recomputation")
    {
        // mpmath at theta_in = theta_out = 20 deg, d_e = 100 m, a_p = 0.1 m
        const GmlParams p = gml_params(ElementGeometry{50.0, 50.0, 20.0 * kDeg, 20.0 * kDeg, 100.0}, a, sway, 0.1);
        CHECK(rel_gap(p.delta_m2, 0.0069871149714769134) < 1e-13);
        CHECK(rel_gap(p.h0, 0.012273356182563058) < 1e-12);
        CHECK(rel_gap(p.varpi, 6048.6096541294517) < 1e-11);
    }
    SUBCASE("grazing geometry rejected")
    {
        CHECK_THROWS_AS(gml_params(ElementGeometry{5.0, 5.0, 0.0, kPi / 2, 10.0}, a, sway, 0.1), DomainError);
    }
}

TEST_CASE("geometric loss density")
{
    GmlParams p;
    p.h0 = 0.9;
    p.varpi = 1.5;
    // Within 1e-6 of h0 the density cannot be resolved in double precision
    // (it depends on ln(h0/h)); that sliver is taken from the CDF.
    const double cut = p.h0 * (1.0 - 1e-6);
    const double m = test::integrate_finite([&](double h) { return gml_pdf(p, h); }, 0.0, cut);
    CHECK(std::fabs(m + (1.0 - gml_cdf(p, cut)) - 1.0) < 1e-10);
    // u = ln(h0/h) is Gamma(1/2, rate varpi).
    for (double u : {0.01, 0.2, 1.0, 3.0}) {
        const double F = gml_cdf(p, p.h0 * std::exp(-u));
        CHECK(std::fabs(F - boost::math::gamma_q(0.5, p.varpi * u)) < 1e-12);
    }
    p.varpi = 1e4;
    CHECK(1.0 - gml_cdf(p, 0.99 * p.h0) > 1.0 - 1e-12);
    CHECK_THROWS_AS(gml_pdf(p, p.h0), DomainError);
    CHECK(gml_pdf(p, 1.1 * p.h0) == 0.0);
}

TEST_CASE("direct pointing law")
{
    DirectPointingParams p;
    p.xi = 1.0;
    for (double h : {0.01, 0.03, 0.07}) {
        CHECK(direct_pointing_pdf(p, h) == doctest::Approx(1.0 / p.h0_b));
    }
    p.xi = 2.35;
    const double x2 = p.xi * p.xi;
    CHECK(direct_pointing_cdf(p, p.h0_b * std::pow(2.0, -1.0 / x2)) == doctest::Approx(0.5).epsilon(1e-14));
    const double m = test::integrate_finite([&](double h) { return direct_pointing_pdf(p, h); }, 0.0, p.h0_b);
    CHECK(std::fabs(m - 1.0) < 1e-12);
}

TEST_CASE("composite densities integrate to one")
{
    const ScenarioConfig cfg;
    SUBCASE("RIS weak at 100 m")
    {
        const LinkStats l = reference_link(cfg, LinkKind::RisWeak, 100.0);
        CHECK(std::fabs(link_mass(l) - 1.0) < 1e-8);
        CHECK(l.pdf(1e-12 * l.h_p) < 1e-100);
    }
    SUBCASE("RIS strong at 150 m")
    {
        const LinkStats l = reference_link(cfg, LinkKind::RisStrong, 150.0);
        CHECK(std::fabs(link_mass(l) - 1.0) < 1e-8);
    }
    SUBCASE("direct weak at 50 m")
    {
        const LinkStats l = direct_link(50.0, cfg.atm, cfg.pointing, Regime::WeakLN);
        CHECK(std::fabs(link_mass(l) - 1.0) < 1e-8);
    }
    SUBCASE("direct strong at 200 m")
    {
        const LinkStats l = direct_link(200.0, cfg.atm, cfg.pointing, Regime::ModerateStrongGG);
        CHECK(std::fabs(link_mass(l) - 1.0) < 1e-6);
    }
}

TEST_CASE("RIS strong density does not depend on the zeta knob beyond its approximation")
{
    ScenarioConfig cfg;
    const LinkStats a = reference_link(cfg, LinkKind::RisStrong, 150.0);
    cfg.atm.zeta = 1000.0;
    const LinkStats b = reference_link(cfg, LinkKind::RisStrong, 150.0);
    const double da = std::fabs(link_mass(a) - 1.0);
    const double db = std::fabs(link_mass(b) - 1.0);
    CHECK(db <= std::max(da, 1e-9));
}

TEST_CASE("direct weak law tends to the scaled pointing law as turbulence vanishes")
{
    const DirectPointingParams p;
    const double h_p = 0.95;
    const ClosedFormConstants c = direct_constants(p.h0_b, h_p, 1e-8, p.xi);
    for (double f : {0.2, 0.5, 0.9}) {
        const double h = f * h_p * p.h0_b;
        CHECK(std::fabs(direct_tail_weak(c, 1e-8, p, h).cdf() - direct_pointing_cdf(p, h / h_p)) < 1e-3);
    }
}

TEST_CASE("direct strong law tends to the scaled turbulence law as pointing error vanishes")
{
    DirectPointingParams p;
    p.xi = 30.0;
    const double h_p = 0.95;
    const TurbulenceRegime t = TurbulenceRegime::make(Regime::ModerateStrongGG, 0.3);
    const ShapeParams g{t.alpha, t.beta};
    const ClosedFormConstants c = direct_constants(p.h0_b, h_p, 0.3, p.xi);
    for (double f : {0.3, 1.0, 2.0}) {
        const double h = f * h_p * p.h0_b;
        CHECK(std::fabs(direct_tail_strong(c, g, p, h).cdf() - turbulence_cdf(t, f)) < 2e-3);
    }
}

TEST_CASE("direct strong CDF equals the pointing mixture of the turbulence CDF")
{
    // h = h_p h0_b U^(1/xi^2) T with U uniform, so
    // F(h) = int_0^1 F_T(h / (h_p h0_b u^(1/xi^2))) du.
    const DirectPointingParams p;
    const double h_p = 0.95;
    const TurbulenceRegime t = TurbulenceRegime::make(Regime::ModerateStrongGG, 0.3);
    const ClosedFormConstants c = direct_constants(p.h0_b, h_p, 0.3, p.xi);
    const double x2 = p.xi * p.xi;
    for (double f : {0.1, 0.6, 1.5}) {
        const double h = f * h_p * p.h0_b;
        const double mix = test::integrate_finite(
            [&](double u) { return turbulence_cdf(t, f / std::pow(u, 1.0 / x2)); }, 0.0, 1.0, 1e-9);
        CHECK(std::fabs(direct_tail_strong(c, {t.alpha, t.beta}, p, h).cdf() - mix) < 1e-7);
    }
}

TEST_CASE("property: link CDF is the integral of the link density")
{
    const ScenarioConfig cfg;
    Gen gen(31);
    for (LinkKind k : {LinkKind::RisWeak, LinkKind::RisStrong, LinkKind::DirectWeak, LinkKind::DirectStrong}) {
        for (int i = 0; i < 6; ++i) {
            const double d = gen.uniform(30.0, 600.0);
            const LinkStats l = reference_link(cfg, k, d);
            const double top = l.direct ? l.h_p * l.pointing.h0_b : l.h_p * l.gml.h0;
            const double h = top * gen.uniform(0.05, 0.95);
            const double m = test::integrate_log_panels([&](double x) { return l.pdf(x); }, std::log(top) - 40.0,
                                                        std::log(h));
            const Tail tl = l.tail(h);
            CHECK(std::fabs(m - tl.cdf()) < 1e-7);
            CHECK(std::fabs(tl.cdf() + tl.sf() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("property: link CDF is non-decreasing")
{
    const ScenarioConfig cfg;
    Gen gen(32);
    for (LinkKind k : {LinkKind::RisWeak, LinkKind::RisStrong, LinkKind::DirectWeak, LinkKind::DirectStrong}) {
        const LinkStats l = reference_link(cfg, k, gen.uniform(30.0, 600.0));
        const double top = l.direct ? l.h_p * l.pointing.h0_b : l.h_p * l.gml.h0;
        double prev = -1.0;
        for (int i = 0; i < 40; ++i) {
            const double h = top * std::exp(-12.0 + 12.0 * i / 39.0);
            const double c = l.tail(h).cdf();
            CHECK(c >= prev - 1e-15);
            prev = c;
        }
    }
}
