// SPDX-License-Identifier: Apache-2.0
#include "risfso/stats.hpp"

#include "risfso/meijer_g.hpp"

#include <algorithm>
#include <cmath>

namespace risfso {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double lgam(double x)
{
    int s = 1;
    return lgamma_signed(x, &s);
}

void require_positive(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be positive and finite");
    }
}

double gg_t2(ShapeParams gg)
{
    require_positive(gg.alpha, "alpha");
    require_positive(gg.beta, "beta");
    return (1.0 + 1.0 / gg.alpha) * (1.0 + 1.0 / gg.beta);
}

double strong_a(double varpi)
{
    return varpi + 0.25;
}

// K * G^{3,1}_{2,4}(z | -1, top; b0, alpha, beta, -2) for z = alpha beta / C.
double meijer_moment(double log_k, double top, double b0, ShapeParams gg, double C)
{
    const MeijerGSpec s{3, 1, 2, 4, {-1.0, top}, {b0, gg.alpha, gg.beta, -2.0}};
    const MeijerGResult r = meijer_g_eval(s, gg.alpha * gg.beta / C);
    if (r.sign <= 0) {
        throw DomainError("second moment Meijer G evaluation is not positive");
    }
    return std::exp(log_k + r.log_abs);
}

} // namespace

MeanSnrCoefficients MeanSnrCoefficients::from(const ScenarioConfig& cfg)
{
    MeanSnrCoefficients m{cfg.gamma_bar_b(), cfg.gamma_bar_kl(), cfg.gamma_bar_kl_prime()};
    m.validate();
    return m;
}

void MeanSnrCoefficients::validate() const
{
    require_positive(gamma_bar_b, "gamma_bar_b");
    require_positive(gamma_bar_kl, "gamma_bar_kl");
    require_positive(gamma_bar_kl_prime, "gamma_bar_kl_prime");
}

double second_moment_weak_ris(const ClosedFormConstants& c, double sigma2, double varpi)
{
    check_ris_constants(c, sigma2, varpi);
    return c.C_a * c.C_a * std::exp(4.0 * sigma2) * std::sqrt(varpi / (varpi + 2.0));
}

double second_moment_weak_direct(const ClosedFormConstants& c, double sigma_b2, double xi)
{
    check_direct_constants(c, sigma_b2, xi);
    const double x2 = xi * xi;
    return c.C_d * c.C_d * std::exp(4.0 * sigma_b2) * x2 / (x2 + 2.0);
}

double second_moment_strong_ris(const ClosedFormConstants& c, ShapeParams gg, double varpi)
{
    require_positive(c.C_a, "C_a");
    require_positive(varpi, "varpi");
    const double a = strong_a(varpi);
    return c.C_a * c.C_a * gg_t2(gg) * a * (a + 1.0) / ((a + 0.5) * (a + 1.5));
}

double second_moment_strong_direct(const ClosedFormConstants& c, ShapeParams gg, double xi)
{
    require_positive(c.C_d, "C_d");
    require_positive(xi, "xi");
    const double x2 = xi * xi;
    return c.C_d * c.C_d * gg_t2(gg) * x2 / (x2 + 2.0);
}

double second_moment_strong_ris_meijer(const ClosedFormConstants& c, ShapeParams gg, double varpi)
{
    require_positive(c.C_a, "C_a");
    require_positive(varpi, "varpi");
    gg_t2(gg);
    const double a = strong_a(varpi);
    const double log_k = lgam(a + 0.5) - lgam(a) - lgam(gg.alpha) - lgam(gg.beta);
    return meijer_moment(log_k, a + 0.5, a, gg, c.C_a);
}

double second_moment_strong_direct_meijer(const ClosedFormConstants& c, ShapeParams gg, double xi)
{
    require_positive(c.C_d, "C_d");
    require_positive(xi, "xi");
    gg_t2(gg);
    const double x2 = xi * xi;
    const double log_k = std::log(x2) - lgam(gg.alpha) - lgam(gg.beta);
    return meijer_moment(log_k, 1.0 + x2, x2, gg, c.C_d);
}

SecondMoments second_moment_weak(const LinkStats& link)
{
    if (link.regime != Regime::WeakLN) {
        throw DomainError("second_moment_weak needs a weak-turbulence link");
    }
    SecondMoments m;
    if (link.direct) {
        m.Gamma2_b = second_moment_weak_direct(link.constants, link.turbulence.sigma2, link.pointing.xi);
    } else {
        m.Gamma2_kl = second_moment_weak_ris(link.constants, link.turbulence.sigma2, link.gml.varpi);
    }
    return m;
}

SecondMoments second_moment_strong(const LinkStats& link)
{
    if (link.regime != Regime::ModerateStrongGG) {
        throw DomainError("second_moment_strong needs a Gamma-Gamma link");
    }
    const ShapeParams gg{link.turbulence.alpha, link.turbulence.beta};
    SecondMoments m;
    if (link.direct) {
        m.Gamma2_b = second_moment_strong_direct(link.constants, gg, link.pointing.xi);
    } else {
        m.Gamma2_kl = second_moment_strong_ris(link.constants, gg, link.gml.varpi);
    }
    return m;
}

double average_snr(const std::vector<Branch>& branches)
{
    double s = 0.0;
    for (const Branch& b : branches) {
        s += b.gamma_bar * b.link.second_moment();
    }
    return s;
}

double average_snr(const ScenarioConfig& cfg, double t)
{
    return average_snr(active_branches(cfg, t));
}

double log_branch_cdf(const Branch& b, double gamma_th)
{
    if (!(gamma_th > 0.0)) {
        return kNegInf;
    }
    if (!std::isfinite(gamma_th)) {
        return 0.0;
    }
    return b.link.tail(std::sqrt(gamma_th / b.gamma_bar)).log_cdf;
}

OutageResult outage_closed_form(const std::vector<Branch>& branches, double gamma_th, Strategy scenario,
                                Regime regime)
{
    if (!(gamma_th > 0.0)) {
        throw DomainError("gamma_th must be positive");
    }
    if (branches.empty()) {
        throw DomainError("no active branches");
    }
    OutageResult r;
    r.gamma_th = gamma_th;
    r.scenario = scenario;
    r.regime = regime;
    double log_p = 0.0;
    for (std::size_t i = 0; i < branches.size(); ++i) {
        const double lc = log_branch_cdf(branches[i], gamma_th);
        if (i == 0 && branches.size() > 1) {
            r.per_element_cdf = std::exp(lc);
        }
        log_p += lc;
        if (log_p == kNegInf) {
            break;
        }
    }
    r.log_p_out = log_p;
    r.raw = std::exp(log_p);
    r.p_out = std::clamp(r.raw, 0.0, 1.0);
    return r;
}

OutageResult outage_closed_form(const ScenarioConfig& cfg, double gamma_th, double t)
{
    return outage_closed_form(active_branches(cfg, t), gamma_th, cfg.strategy, cfg.regime);
}

double spectral_efficiency(double snr, bool im_dd_half)
{
    if (!(snr >= 0.0)) {
        throw DomainError("spectral_efficiency: snr must be non-negative");
    }
    const double r = std::log2(1.0 + snr);
    return im_dd_half ? 0.5 * r : r;
}

double to_db(double x)
{
    return 10.0 * std::log10(x);
}

double from_db(double db)
{
    return std::pow(10.0, db / 10.0);
}

} // namespace risfso
