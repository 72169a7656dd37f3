// SPDX-License-Identifier: Apache-2.0
#include "risfso/channel.hpp"

#include "quad.hpp"
#include "risfso/meijer_g.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace risfso {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

bool close_rel(double a, double b)
{
    return std::fabs(a - b) <= 1e-12 * std::max(std::fabs(a), std::fabs(b)) + 1e-300;
}

void require_finite(double v, const char* what)
{
    if (!std::isfinite(v)) {
        throw DomainError(std::string(what) + ": missing or non-finite constant");
    }
}

double lgam(double x)
{
    int s = 1;
    return lgamma_signed(x, &s);
}

// log Phi(x) for the standard normal.
double log_phi_cdf(double x)
{
    return std::log(0.5) + log_erfc(-x / std::numbers::sqrt2);
}

double checked_exp(double log_value, const char* what)
{
    if (std::isnan(log_value) || log_value == std::numeric_limits<double>::infinity()) {
        throw DomainError(std::string(what) + ": exponent outside the representable range");
    }
    return std::exp(log_value);
}

// log J(z) with J(z) = int_0^inf v^{-1/2} exp(-v^2/2 - z v) dv.
double log_j(double z)
{
    if (z == 0.0) {
        return -0.75 * std::log(2.0) + lgam(0.25);
    }
    const double x = 0.25 * z * z;
    if (z > 0.0) {
        return 0.5 * std::log(0.5 * z) + std::log(scaled_bessel_k(0.25, x));
    }
    const double w = -z;
    const double s = scaled_bessel_i(-0.25, x) + scaled_bessel_i(0.25, x);
    return std::log(0.5 * kPi * std::sqrt(w)) + 2.0 * x + std::log(s);
}

// Density of Y = ln(h/C_a) = X - U with X ~ N(-2 sigma2, 4 sigma2) and
// U ~ Gamma(1/2, rate varpi).
double log_fy_weak(double y, double sigma2, double varpi)
{
    const double tau = 2.0 * std::sqrt(sigma2);
    const double m = y + 2.0 * sigma2;
    const double z = m / tau + varpi * tau;
    return 0.5 * std::log(varpi) - std::log(kPi * std::sqrt(2.0 * tau)) - m * m / (2.0 * tau * tau) + log_j(z);
}

// P(Y <= y) or P(Y > y) by mixing the Gaussian over U = Z^2/(2 varpi).
double log_tail_weak(double y, double sigma2, double varpi, bool lower)
{
    const double tau = 2.0 * std::sqrt(sigma2);
    const double m = y + 2.0 * sigma2;
    const double log_half_normal = 0.5 * std::log(2.0 / kPi);
    auto logf = [&](double z) {
        const double arg = (m + z * z / (2.0 * varpi)) / tau;
        const double lp = lower ? log_phi_cdf(arg) : log_phi_cdf(-arg);
        return log_half_normal - 0.5 * z * z + lp;
    };
    double zmax = 40.0;
    if (lower && m < 0.0) {
        zmax += std::sqrt(-2.0 * varpi * m);
    }
    return detail::log_integrate(logf, 0.0, zmax);
}

Tail tail_from_pair(double log_cdf_first, const std::function<double()>& log_sf)
{
    if (log_cdf_first <= std::log(0.5)) {
        return Tail::from_cdf(log_cdf_first);
    }
    return Tail::from_sf(log_sf());
}

MeijerGSpec spec(int m, int n, int p, int q, std::vector<double> a, std::vector<double> b)
{
    return MeijerGSpec{m, n, p, q, std::move(a), std::move(b)};
}

// log of K * G for a positive Meijer G value.
double log_kg(double log_k, const MeijerGSpec& s, double z)
{
    const MeijerGResult r = meijer_g_eval(s, z);
    if (r.sign < 0) {
        // Rounding can leave a vanishing tail slightly negative.
        return kNegInf;
    }
    if (r.sign == 0) {
        return kNegInf;
    }
    return log_k + r.log_abs;
}

double strong_a(double varpi)
{
    return varpi + 0.25;
}

double strong_log_k(ShapeParams gg, double varpi)
{
    const double a = strong_a(varpi);
    return lgam(a + 0.5) - lgam(a) - lgam(gg.alpha) - lgam(gg.beta);
}

void check_shape(ShapeParams gg)
{
    if (!(gg.alpha > 0.0) || !(gg.beta > 0.0)) {
        throw DomainError("Gamma-Gamma shape parameters must be positive");
    }
}

} // namespace

double AtmosphereParams::k() const
{
    return 2.0 * kPi / lambda;
}

void AtmosphereParams::validate() const
{
    if (!(gamma_db_per_km > 0.0) || !(Cn2 > 0.0) || !(lambda > 0.0) || !(w0_hat > 0.0) || !(zeta > 0.0)) {
        throw DomainError("atmosphere parameters must be strictly positive");
    }
}

AtmosphereParams AtmosphereParams::table1(double Psi)
{
    AtmosphereParams a;
    a.w0_hat = a.lambda / (2.0 * kPi * Psi);
    return a;
}

std::string to_string(Regime r)
{
    return r == Regime::WeakLN ? "LN" : "GG";
}

std::optional<Regime> parse_regime(const std::string& s)
{
    if (s == "LN" || s == "ln" || s == "weak") {
        return Regime::WeakLN;
    }
    if (s == "GG" || s == "gg" || s == "strong") {
        return Regime::ModerateStrongGG;
    }
    return std::nullopt;
}

TurbulenceRegime TurbulenceRegime::make(Regime kind, double sigma2)
{
    if (!(sigma2 > 0.0)) {
        throw DomainError("turbulence variance must be positive");
    }
    TurbulenceRegime r;
    r.kind = kind;
    r.sigma2 = sigma2;
    if (kind == Regime::WeakLN) {
        r.mu = -sigma2;
    } else {
        const ShapeParams s = gg_shape_params(sigma2);
        r.alpha = s.alpha;
        r.beta = s.beta;
    }
    return r;
}

void TurbulenceRegime::validate() const
{
    if (!(sigma2 > 0.0)) {
        throw DomainError("turbulence variance must be positive");
    }
    if (kind == Regime::WeakLN) {
        if (!close_rel(mu, -sigma2)) {
            throw DomainError("log-normal mean must equal -sigma2");
        }
    } else {
        const ShapeParams s = gg_shape_params(sigma2);
        if (!close_rel(alpha, s.alpha) || !close_rel(beta, s.beta)) {
            throw DomainError("Gamma-Gamma shapes inconsistent with sigma2");
        }
    }
}

void DirectPointingParams::validate() const
{
    if (!(h0_b > 0.0 && h0_b <= 1.0) || !(xi > 0.0)) {
        throw DomainError("pointing parameters require 0 < h0_b <= 1 and xi > 0");
    }
}

ClosedFormConstants::ClosedFormConstants()
    : C_a(kNaN), C_b(kNaN), C_c(kNaN), C_d(kNaN), C_e(kNaN), C_f(kNaN), C_g(kNaN), C_h(kNaN), hat_C_g(kNaN),
      hat_C_h(kNaN), doublehat_C_g(kNaN)
{
}

ClosedFormConstants ris_constants(double h0, double h_p, double sigma2, double varpi, double zeta)
{
    if (!(h0 > 0.0) || !(h_p > 0.0) || !(sigma2 > 0.0) || !(varpi > 0.0) || !(zeta > 0.0)) {
        throw DomainError("RIS constants need positive h0, h_p, sigma2, varpi, zeta");
    }
    ClosedFormConstants c;
    c.C_a = h0 * h_p;
    c.C_b = 2.0 * sigma2 * (1.0 + 2.0 * varpi);
    c.C_c = 1.0 / (2.0 * zeta) + varpi - 1.0;
    c.C_g = c.C_b / (c.C_a * std::sqrt(8.0 * sigma2));
    return c;
}

ClosedFormConstants direct_constants(double h0_b, double h_pb, double sigma_b2, double xi)
{
    if (!(h0_b > 0.0) || !(h_pb > 0.0) || !(sigma_b2 > 0.0) || !(xi > 0.0)) {
        throw DomainError("direct constants need positive h0_b, h_pb, sigma_b2, xi");
    }
    ClosedFormConstants c;
    const double x2 = xi * xi;
    c.C_d = h0_b * h_pb;
    c.C_e = 2.0 * sigma_b2 * (1.0 + 2.0 * x2);
    c.C_f = 2.0 * sigma_b2 * x2 * (1.0 + x2);
    c.C_h = c.C_e / (c.C_d * std::sqrt(8.0 * sigma_b2));
    return c;
}

ClosedFormConstants merge_constants(const ClosedFormConstants& ris, const ClosedFormConstants& direct,
                                    double gamma_bar_b, double gamma_bar_kl, double gamma_bar_kl_prime)
{
    ClosedFormConstants c = ris;
    c.C_d = direct.C_d;
    c.C_e = direct.C_e;
    c.C_f = direct.C_f;
    c.C_h = direct.C_h;
    if (gamma_bar_b > 0.0) {
        c.hat_C_h = c.C_h / std::sqrt(gamma_bar_b);
    }
    if (gamma_bar_kl > 0.0) {
        c.hat_C_g = c.C_g / std::sqrt(gamma_bar_kl);
    }
    if (gamma_bar_kl_prime > 0.0) {
        c.doublehat_C_g = c.C_g / std::sqrt(gamma_bar_kl_prime);
    }
    return c;
}

void check_ris_constants(const ClosedFormConstants& c, double sigma2, double varpi)
{
    require_finite(c.C_a, "C_a");
    require_finite(c.C_b, "C_b");
    if (!(c.C_a > 0.0) || !(sigma2 > 0.0) || !(varpi > 0.0)) {
        throw DomainError("RIS constants need positive C_a, sigma2, varpi");
    }
    if (!close_rel(c.C_b, 2.0 * sigma2 * (1.0 + 2.0 * varpi))) {
        throw DomainError("C_b inconsistent with sigma2 and varpi");
    }
}

void check_direct_constants(const ClosedFormConstants& c, double sigma_b2, double xi)
{
    require_finite(c.C_d, "C_d");
    require_finite(c.C_e, "C_e");
    require_finite(c.C_f, "C_f");
    if (!(c.C_d > 0.0) || !(sigma_b2 > 0.0) || !(xi > 0.0)) {
        throw DomainError("direct constants need positive C_d, sigma_b2, xi");
    }
    const double x2 = xi * xi;
    if (!close_rel(c.C_e, 2.0 * sigma_b2 * (1.0 + 2.0 * x2)) ||
        !close_rel(c.C_f, 2.0 * sigma_b2 * x2 * (1.0 + x2))) {
        throw DomainError("C_e/C_f inconsistent with sigma_b2 and xi");
    }
}

double Tail::cdf() const
{
    return std::exp(log_cdf);
}

double Tail::sf() const
{
    return std::exp(log_sf);
}

Tail Tail::from_cdf(double lc)
{
    lc = std::min(lc, 0.0);
    return Tail{lc, std::log1p(-std::exp(lc))};
}

Tail Tail::from_sf(double ls)
{
    ls = std::min(ls, 0.0);
    return Tail{std::log1p(-std::exp(ls)), ls};
}

double path_loss(const AtmosphereParams& atm, double d_e)
{
    if (!(d_e >= 0.0)) {
        throw DomainError("path_loss: distance must be non-negative");
    }
    return std::pow(10.0, -atm.gamma_db_per_km * (d_e / 1000.0) / 10.0);
}

double rytov_sigma2(const AtmosphereParams& atm, double d_e)
{
    if (!(d_e > 0.0)) {
        throw DomainError("rytov_sigma2: distance must be positive");
    }
    return 0.307 * atm.Cn2 * std::pow(atm.k(), 7.0 / 6.0) * std::pow(d_e, 11.0 / 6.0);
}

ShapeParams gg_shape_params(double sigma2)
{
    if (!(sigma2 > 0.0)) {
        throw DomainError("gg_shape_params: sigma2 must be positive");
    }
    const double s12_5 = std::pow(sigma2, 12.0 / 5.0);
    const double xa = 1.96 * sigma2 / std::pow(1.0 + 4.44 * s12_5, 7.0 / 6.0);
    const double xb = 2.04 * sigma2 / std::pow(1.0 + 2.76 * s12_5, 5.0 / 6.0);
    return ShapeParams{1.0 / std::expm1(xa), 1.0 / std::expm1(xb)};
}

double turbulence_pdf(const TurbulenceRegime& r, double h_t)
{
    if (!(h_t > 0.0)) {
        throw DomainError("turbulence_pdf: h_t must be positive");
    }
    if (r.kind == Regime::WeakLN) {
        const double d = std::log(h_t) - 2.0 * r.mu;
        return std::exp(-d * d / (8.0 * r.sigma2)) / (h_t * std::sqrt(8.0 * kPi * r.sigma2));
    }
    const double ab = r.alpha * r.beta;
    const double lf = std::log(2.0) + 0.5 * (r.alpha + r.beta) * std::log(ab * h_t) - lgam(r.alpha) -
                      lgam(r.beta) - std::log(h_t) + log_bessel_k(r.alpha - r.beta, 2.0 * std::sqrt(ab * h_t));
    return checked_exp(lf, "turbulence_pdf");
}

double turbulence_cdf(const TurbulenceRegime& r, double h_t)
{
    if (!(h_t > 0.0)) {
        return 0.0;
    }
    if (r.kind == Regime::WeakLN) {
        return 0.5 * std::erfc(-(std::log(h_t) - 2.0 * r.mu) / std::sqrt(8.0 * r.sigma2));
    }
    // h_t = X Y with unit-mean Gamma(alpha) X and Gamma(beta) Y, so
    // F(h) = E_Y[P(alpha, alpha h / Y)], integrated over ln Y between
    // far quantiles of Y. The smaller of F and 1 - F is integrated.
    const double a = r.alpha;
    const double b = r.beta;
    const double y_lo = boost::math::gamma_p_inv(b, 1e-18) / b;
    const double y_hi = boost::math::gamma_q_inv(b, 1e-18) / b;
    const bool lower = h_t <= 1.0;
    auto f = [&](double s) {
        const double y = std::exp(s);
        const double w = std::exp(b * std::log(b * y) - b * y - lgam(b));
        const double x = a * h_t / y;
        return w * (lower ? boost::math::gamma_p(a, x) : boost::math::gamma_q(a, x));
    };
    const double v = detail::integrate(f, std::log(y_lo), std::log(y_hi), 1e-12);
    return lower ? v : 1.0 - v;
}

double beam_width(const AtmosphereParams& atm, double d_e)
{
    if (!(d_e >= 0.0)) {
        throw DomainError("beam_width: distance must be non-negative");
    }
    const double r = atm.lambda * d_e / (kPi * atm.w0_hat * atm.w0_hat);
    return atm.w0_hat * std::sqrt(1.0 + r * r);
}

GmlParams gml_params(const ElementGeometry& g, const AtmosphereParams& atm, const SwayParams& sway, double a_p)
{
    const double co = std::cos(g.theta_out);
    const double ci = std::cos(g.theta_in);
    if (!(co > 1e-12) || !(ci > 1e-12)) {
        throw DomainError("gml_params: grazing incidence or reflection angle");
    }
    if (!(a_p > 0.0)) {
        throw DomainError("gml_params: detector radius must be positive");
    }
    const double ss = sway.delta_s * sway.delta_s;
    const double sr = sway.delta_r * sway.delta_r;
    const double sl = sway.delta_l * sway.delta_l;
    if (ss < 0.0 || sr < 0.0 || sl < 0.0 || !(ss + sr + sl > 0.0)) {
        throw DomainError("gml_params: at least one sway variance must be positive");
    }
    const double sn = std::sin(g.theta_in + g.theta_out);
    GmlParams p;
    p.delta_m2 = (co * co / (ci * ci) * ss + sn * sn / (ci * ci) * sr + sl) / (co * co);
    p.w_d = beam_width(atm, g.d_e);
    p.v = std::numbers::sqrt2 * co * a_p / p.w_d;
    p.h0 = std::erf(p.v);
    p.varpi = std::sqrt(kPi) / 8.0 * p.h0 * p.w_d * p.w_d /
              (p.v * std::exp(-p.v * p.v) * co * co * p.delta_m2);
    if (!(p.h0 > 0.0 && p.h0 < 1.0) || !(p.varpi > 0.0)) {
        throw DomainError("gml_params: degenerate geometric loss parameters");
    }
    return p;
}

double gml_pdf(const GmlParams& p, double h_g)
{
    if (!(h_g > 0.0) || h_g > p.h0) {
        return 0.0;
    }
    if (h_g == p.h0) {
        throw DomainError("gml_pdf: density is singular at h0");
    }
    const double u = std::log(p.h0 / h_g);
    const double lf = 0.5 * std::log(p.varpi / kPi) - std::log(p.h0) - 0.5 * std::log(u) + (p.varpi - 1.0) * (-u);
    return std::exp(lf);
}

double gml_cdf(const GmlParams& p, double h_g)
{
    if (!(h_g > 0.0)) {
        return 0.0;
    }
    if (h_g >= p.h0) {
        return 1.0;
    }
    return std::erfc(std::sqrt(p.varpi * std::log(p.h0 / h_g)));
}

double direct_pointing_pdf(const DirectPointingParams& p, double h_g)
{
    if (h_g < 0.0 || h_g > p.h0_b) {
        return 0.0;
    }
    const double x2 = p.xi * p.xi;
    return x2 / std::pow(p.h0_b, x2) * std::pow(h_g, x2 - 1.0);
}

double direct_pointing_cdf(const DirectPointingParams& p, double h_g)
{
    if (h_g <= 0.0) {
        return 0.0;
    }
    if (h_g >= p.h0_b) {
        return 1.0;
    }
    return std::pow(h_g / p.h0_b, p.xi * p.xi);
}

double composite_pdf_weak(const ClosedFormConstants& c, double sigma2, double varpi, double h)
{
    check_ris_constants(c, sigma2, varpi);
    if (!(h > 0.0)) {
        throw DomainError("composite_pdf_weak: h must be positive");
    }
    const double y = std::log(h / c.C_a);
    return checked_exp(log_fy_weak(y, sigma2, varpi) - std::log(h), "composite_pdf_weak");
}

Tail composite_tail_weak(const ClosedFormConstants& c, double sigma2, double varpi, double h)
{
    check_ris_constants(c, sigma2, varpi);
    if (!(h > 0.0)) {
        return Tail{kNegInf, 0.0};
    }
    const double y = std::log(h / c.C_a);
    return tail_from_pair(log_tail_weak(y, sigma2, varpi, true),
                          [&] { return log_tail_weak(y, sigma2, varpi, false); });
}

double composite_pdf_strong(const ClosedFormConstants& c, ShapeParams gg, double varpi, double zeta, double h)
{
    require_finite(c.C_a, "C_a");
    require_finite(c.C_c, "C_c");
    check_shape(gg);
    if (!close_rel(c.C_c, 1.0 / (2.0 * zeta) + varpi - 1.0)) {
        throw DomainError("C_c inconsistent with varpi and zeta");
    }
    if (!(h > 0.0)) {
        throw DomainError("composite_pdf_strong: h must be positive");
    }
    const double a = strong_a(varpi);
    const double z = gg.alpha * gg.beta * h / c.C_a;
    const double lf = log_kg(strong_log_k(gg, varpi), spec(3, 0, 1, 3, {a + 0.5}, {a, gg.alpha, gg.beta}), z);
    return std::exp(lf - std::log(h));
}

Tail composite_tail_strong(const ClosedFormConstants& c, ShapeParams gg, double varpi, double zeta, double h)
{
    require_finite(c.C_a, "C_a");
    check_shape(gg);
    if (!close_rel(c.C_c, 1.0 / (2.0 * zeta) + varpi - 1.0)) {
        throw DomainError("C_c inconsistent with varpi and zeta");
    }
    if (!(h > 0.0)) {
        return Tail{kNegInf, 0.0};
    }
    const double a = strong_a(varpi);
    const double z = gg.alpha * gg.beta * h / c.C_a;
    const double lk = strong_log_k(gg, varpi);
    const double lc = log_kg(lk, spec(3, 1, 2, 4, {1.0, a + 0.5}, {a, gg.alpha, gg.beta, 0.0}), z);
    return tail_from_pair(lc, [&] {
        return log_kg(lk, spec(4, 0, 2, 4, {1.0, a + 0.5}, {0.0, a, gg.alpha, gg.beta}), z);
    });
}

double direct_pdf_weak(const ClosedFormConstants& c, double sigma_b2, const DirectPointingParams& p, double h)
{
    check_direct_constants(c, sigma_b2, p.xi);
    if (!(h > 0.0)) {
        throw DomainError("direct_pdf_weak: h must be positive");
    }
    const double x2 = p.xi * p.xi;
    const double arg = (std::log(h / c.C_d) + c.C_e) / std::sqrt(8.0 * sigma_b2);
    const double lf = std::log(x2) + (x2 - 1.0) * std::log(h) - std::log(2.0) - x2 * std::log(c.C_d) +
                      log_erfc(arg) + c.C_f;
    return checked_exp(lf, "direct_pdf_weak");
}

Tail direct_tail_weak(const ClosedFormConstants& c, double sigma_b2, const DirectPointingParams& p, double h)
{
    check_direct_constants(c, sigma_b2, p.xi);
    if (!(h > 0.0)) {
        return Tail{kNegInf, 0.0};
    }
    const double x2 = p.xi * p.xi;
    const double a = std::log(h / c.C_d);
    const double s = std::sqrt(8.0 * sigma_b2);
    const double sigma2x2 = 2.0 * sigma_b2;
    // F = P(T <= r) + r^{xi^2} e^{C_f} P-tail term; S = P(T > r) - same term.
    const double l_t_low = std::log(0.5) + log_erfc(-(a + sigma2x2) / s);
    const double l_t_high = std::log(0.5) + log_erfc((a + sigma2x2) / s);
    const double l_term = std::log(0.5) + x2 * a + c.C_f + log_erfc((a + c.C_e) / s);
    const double lc = detail::log_add(l_t_low, l_term);
    return tail_from_pair(lc, [&] { return detail::log_sub(l_t_high, l_term); });
}

double direct_pdf_strong(const ClosedFormConstants& c, ShapeParams gg, const DirectPointingParams& p, double h)
{
    require_finite(c.C_d, "C_d");
    check_shape(gg);
    if (!(h > 0.0)) {
        throw DomainError("direct_pdf_strong: h must be positive");
    }
    const double x2 = p.xi * p.xi;
    const double z = gg.alpha * gg.beta * h / c.C_d;
    const double lk = std::log(x2) - lgam(gg.alpha) - lgam(gg.beta);
    const double lf = log_kg(lk, spec(3, 0, 1, 3, {1.0 + x2}, {x2, gg.alpha, gg.beta}), z);
    return std::exp(lf - std::log(h));
}

Tail direct_tail_strong(const ClosedFormConstants& c, ShapeParams gg, const DirectPointingParams& p, double h)
{
    require_finite(c.C_d, "C_d");
    check_shape(gg);
    if (!(h > 0.0)) {
        return Tail{kNegInf, 0.0};
    }
    const double x2 = p.xi * p.xi;
    const double z = gg.alpha * gg.beta * h / c.C_d;
    const double lk = std::log(x2) - lgam(gg.alpha) - lgam(gg.beta);
    const double lc = log_kg(lk, spec(3, 1, 2, 4, {1.0, 1.0 + x2}, {x2, gg.alpha, gg.beta, 0.0}), z);
    return tail_from_pair(lc, [&] {
        return log_kg(lk, spec(4, 0, 2, 4, {1.0, 1.0 + x2}, {0.0, x2, gg.alpha, gg.beta}), z);
    });
}

double LinkStats::pdf(double h) const
{
    const ShapeParams gg{turbulence.alpha, turbulence.beta};
    if (direct) {
        return regime == Regime::WeakLN ? direct_pdf_weak(constants, turbulence.sigma2, pointing, h)
                                        : direct_pdf_strong(constants, gg, pointing, h);
    }
    return regime == Regime::WeakLN ? composite_pdf_weak(constants, turbulence.sigma2, gml.varpi, h)
                                    : composite_pdf_strong(constants, gg, gml.varpi, zeta, h);
}

Tail LinkStats::tail(double h) const
{
    const ShapeParams gg{turbulence.alpha, turbulence.beta};
    if (direct) {
        return regime == Regime::WeakLN ? direct_tail_weak(constants, turbulence.sigma2, pointing, h)
                                        : direct_tail_strong(constants, gg, pointing, h);
    }
    return regime == Regime::WeakLN ? composite_tail_weak(constants, turbulence.sigma2, gml.varpi, h)
                                    : composite_tail_strong(constants, gg, gml.varpi, zeta, h);
}

double LinkStats::second_moment() const
{
    const double t2 = regime == Regime::WeakLN
                          ? std::exp(4.0 * turbulence.sigma2)
                          : (1.0 + 1.0 / turbulence.alpha) * (1.0 + 1.0 / turbulence.beta);
    if (direct) {
        const double x2 = pointing.xi * pointing.xi;
        return constants.C_d * constants.C_d * t2 * x2 / (x2 + 2.0);
    }
    double w2 = 0.0;
    if (regime == Regime::WeakLN) {
        w2 = std::sqrt(gml.varpi / (gml.varpi + 2.0));
    } else {
        const double a = strong_a(gml.varpi);
        w2 = a * (a + 1.0) / ((a + 0.5) * (a + 1.5));
    }
    return constants.C_a * constants.C_a * t2 * w2;
}

LinkStats ris_link(const ElementGeometry& geom, const AtmosphereParams& atm, const SwayParams& sway, double a_p,
                   Regime regime)
{
    LinkStats s;
    s.direct = false;
    s.regime = regime;
    s.d = geom.d_e;
    s.h_p = path_loss(atm, geom.d_e);
    s.turbulence = TurbulenceRegime::make(regime, rytov_sigma2(atm, geom.d_e));
    s.gml = gml_params(geom, atm, sway, a_p);
    s.zeta = atm.zeta;
    s.constants = ris_constants(s.gml.h0, s.h_p, s.turbulence.sigma2, s.gml.varpi, atm.zeta);
    return s;
}

LinkStats direct_link(double d_b, const AtmosphereParams& atm, const DirectPointingParams& pointing, Regime regime)
{
    pointing.validate();
    LinkStats s;
    s.direct = true;
    s.regime = regime;
    s.d = d_b;
    s.h_p = path_loss(atm, d_b);
    s.turbulence = TurbulenceRegime::make(regime, rytov_sigma2(atm, d_b));
    s.pointing = pointing;
    s.zeta = atm.zeta;
    s.constants = direct_constants(pointing.h0_b, s.h_p, s.turbulence.sigma2, pointing.xi);
    return s;
}

} // namespace risfso
