// SPDX-License-Identifier: Apache-2.0
#include "risfso/printed.hpp"

#include "quad.hpp"
#include "risfso/meijer_g.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace risfso {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

struct SLog {
    double l = kNegInf;
    int s = 0;
};

SLog slog(double v)
{
    if (v == 0.0) {
        return SLog{};
    }
    return SLog{std::log(std::fabs(v)), v > 0.0 ? 1 : -1};
}

SLog from_log(double l, int s = 1)
{
    return SLog{l, l == kNegInf ? 0 : s};
}

SLog mul(SLog a, SLog b)
{
    if (a.s == 0 || b.s == 0) {
        return SLog{};
    }
    return SLog{a.l + b.l, a.s * b.s};
}

SLog add(SLog a, SLog b)
{
    if (a.s == 0) {
        return b;
    }
    if (b.s == 0) {
        return a;
    }
    if (a.s == b.s) {
        return SLog{detail::log_add(a.l, b.l), a.s};
    }
    if (a.l == b.l) {
        return SLog{};
    }
    return a.l > b.l ? SLog{detail::log_sub(a.l, b.l), a.s} : SLog{detail::log_sub(b.l, a.l), b.s};
}

SLog neg(SLog a)
{
    a.s = -a.s;
    return a;
}

PrintedValue finish(SLog v)
{
    PrintedValue r;
    if (std::isnan(v.l)) {
        r.defined = false;
        r.note = "not a number";
        return r;
    }
    r.log_abs = v.l;
    r.sign = v.s;
    return r;
}

PrintedValue undefined(const std::string& why)
{
    PrintedValue r;
    r.defined = false;
    r.note = why;
    return r;
}

double lgam(double x)
{
    int s = 1;
    return lgamma_signed(x, &s);
}

// log|G| with its sign, or an undefined marker carrying the error text.
bool meijer(const MeijerGSpec& spec, double z, SLog& out, std::string& why)
{
    try {
        const MeijerGResult r = meijer_g_eval(spec, z);
        out = from_log(r.log_abs, r.sign);
        return true;
    } catch (const DomainError& e) {
        why = e.what();
        return false;
    }
}

} // namespace

double PrintedValue::value() const
{
    if (!defined) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return sign == 0 ? 0.0 : sign * std::exp(log_abs);
}

PrintedValue printed_gml_pdf(const GmlParams& p, double h_g)
{
    if (!(h_g > 0.0) || !(h_g < p.h0)) {
        return finish(SLog{});
    }
    const double u = std::log(p.h0 / h_g);
    return finish(from_log(0.5 * std::log(p.varpi) - std::log(2.0 * std::sqrt(kPi) * p.h0) - 0.5 * std::log(u) -
                           (p.varpi - 1.0) * u));
}

PrintedValue printed_ris_pdf_weak(const ClosedFormConstants& c, double sigma2, double varpi, double h)
{
    const double lh = std::log(h);
    const double s8 = std::sqrt(8.0 * sigma2);
    const double pre = 0.5 * std::log(varpi) - std::log(8.0 * std::sqrt(kPi)) + varpi * std::log(h / c.C_a) +
                       log_erfc((std::log(h / c.C_a) + c.C_b) / s8);
    const SLog a1 = mul(slog(5.0 - std::log(c.C_a)), from_log(-varpi * lh));
    const SLog a = add(a1, slog(s8 / std::sqrt(kPi)));
    const double q = ((lh + c.C_b) * (lh + c.C_b) - (lh + 2.0 * sigma2) * (lh + 2.0 * sigma2)) / (8.0 * sigma2);
    const SLog b = mul(slog(lh + c.C_b), from_log(2.0 * sigma2 * varpi * (1.0 + varpi)));
    const SLog inner = add(mul(a, from_log(q)), b);
    return finish(mul(from_log(pre), inner));
}

PrintedValue printed_ris_pdf_strong(const ClosedFormConstants& c, ShapeParams gg, double varpi, double zeta,
                                    double h)
{
    const double z = gg.alpha * gg.beta * h / c.C_a;
    SLog g;
    std::string why;
    if (!meijer(MeijerGSpec{3, 0, 1, 3, {1.0 + varpi}, {1.0 + c.C_c, gg.alpha, gg.beta}}, z, g, why)) {
        return undefined(why);
    }
    const double pre = 0.5 * std::log(varpi * zeta) - std::log(2.0 * std::sqrt(kPi)) - lgam(gg.alpha) -
                       lgam(gg.beta) - std::log(h) + c.C_c * std::log(z);
    return finish(mul(from_log(pre), g));
}

PrintedValue printed_direct_pdf_weak(const ClosedFormConstants& c, double sigma_b2, double xi, double h)
{
    const double x2 = xi * xi;
    const double arg = (std::log(h / c.C_d) + c.C_e) / std::sqrt(8.0 * sigma_b2);
    return finish(from_log(std::log(x2) + (x2 - 1.0) * std::log(h) - std::log(2.0) - x2 * std::log(c.C_d) +
                           log_erfc(arg) + std::log(c.C_f)));
}

PrintedValue printed_direct_pdf_strong(const ClosedFormConstants& c, ShapeParams gg, double xi, double h)
{
    const double x2 = xi * xi;
    const double z = gg.alpha * gg.beta * h / c.C_d;
    SLog g;
    std::string why;
    if (!meijer(MeijerGSpec{3, 0, 1, 3, {1.0 + x2}, {x2, gg.alpha, gg.beta}}, z, g, why)) {
        return undefined(why);
    }
    const double pre = std::log(x2) - lgam(gg.alpha) - lgam(gg.beta) - std::log(h) + x2 * std::log(z);
    return finish(mul(from_log(pre), g));
}

PrintedValue printed_ris_moment_weak(const ClosedFormConstants& c, double sigma2, double varpi)
{
    const double cg = c.C_g;
    const double cg2 = cg * cg;
    const double pre = 0.5 * std::log(varpi) + 3.0 * std::log(c.C_b) - std::log(8.0 * std::sqrt(kPi)) -
                       varpi * std::log(c.C_a);
    const SLog erfc_cg = from_log(log_erfc(cg));
    const SLog t1a = from_log(-cg2 + std::log(cg2 + 1.0) - std::log(std::sqrt(kPi) * cg * cg2));
    const SLog t1 = mul(slog((5.0 - std::log(c.C_a)) / 3.0), add(t1a, neg(erfc_cg)));
    const SLog t2a = from_log(log_upper_incomplete_gamma(0.5 * (varpi + 4.0), cg2) - 0.5 * std::log(kPi) -
                              (varpi + 3.0) * std::log(cg));
    const SLog t2pre = from_log(0.5 * std::log(8.0 * sigma2) + varpi * std::log(c.C_b) - 0.5 * std::log(kPi) -
                                std::log(varpi + 3.0));
    const SLog t2 = mul(t2pre, add(t2a, neg(erfc_cg)));
    return finish(mul(from_log(pre), add(t1, t2)));
}

PrintedValue printed_direct_moment_weak(const ClosedFormConstants& c, double sigma_b2, double xi)
{
    (void)sigma_b2;
    const double x2 = xi * xi;
    const double ch = c.C_h;
    const double pre = std::log(x2) + (x2 + 2.0) * std::log(c.C_e / ch) + std::log(c.C_f) -
                       std::log(2.0 * (x2 + 2.0)) - x2 * std::log(c.C_d);
    const SLog a = from_log(log_upper_incomplete_gamma(0.5 * (x2 + 3.0), ch * ch) - 0.5 * std::log(kPi));
    const SLog b = from_log((x2 + 2.0) * std::log(ch) + log_erfc(ch));
    return finish(mul(from_log(pre), add(a, neg(b))));
}

PrintedValue printed_ris_moment_strong(const ClosedFormConstants& c, ShapeParams gg, double varpi, double zeta)
{
    const double z = gg.alpha * gg.beta / c.C_a;
    SLog g;
    std::string why;
    const MeijerGSpec spec{4, 1, 2, 4, {-1.0 - c.C_c, 1.0 + varpi}, {-2.0 - c.C_c, 1.0 + c.C_c, gg.alpha, gg.beta}};
    if (!meijer(spec, z, g, why)) {
        return undefined(why);
    }
    const double pre = 0.5 * std::log(varpi * zeta) - std::log(2.0 * std::sqrt(kPi)) - lgam(gg.alpha) -
                       lgam(gg.beta) + c.C_c * std::log(z);
    return finish(mul(from_log(pre), g));
}

PrintedValue printed_direct_moment_strong(const ClosedFormConstants& c, ShapeParams gg, double xi)
{
    const double x2 = xi * xi;
    const double z = gg.alpha * gg.beta / c.C_d;
    SLog g;
    std::string why;
    const MeijerGSpec spec{4, 1, 2, 4, {-1.0 - x2, 1.0 + x2}, {-2.0 - x2, x2, gg.alpha, gg.beta}};
    if (!meijer(spec, z, g, why)) {
        return undefined(why);
    }
    const double pre = std::log(x2) - lgam(gg.alpha) - lgam(gg.beta) + x2 * std::log(z);
    return finish(mul(from_log(pre), g));
}

PrintedValue printed_direct_cdf_weak(const ClosedFormConstants& c, double xi, double gamma_bar, double gamma)
{
    const double x2 = xi * xi;
    const double hat = c.C_h / std::sqrt(gamma_bar);
    const double u = 1.0 + gamma / c.C_e;
    const double pre = 0.5 * x2 * std::log(c.C_e / c.C_h) + std::log(c.C_f) - std::log(4.0) - x2 * std::log(c.C_d);
    const SLog a = from_log(0.5 * x2 * std::log(hat * u) + log_erfc(hat * u));
    const SLog b = from_log(log_upper_incomplete_gamma(0.25 * (x2 + 2.0), hat * hat * u * u) - 0.5 * std::log(kPi));
    return finish(mul(from_log(pre), add(a, neg(b))));
}

PrintedValue printed_ris_cdf_weak(const ClosedFormConstants& c, double sigma2, double varpi, double gamma_bar,
                                  double gamma)
{
    const double hat = c.C_g / std::sqrt(gamma_bar);
    const double u = 1.0 + gamma / c.C_b;
    const double pre = 0.5 * std::log(8.0 * sigma2) + 0.5 * varpi * std::log(c.C_b / c.C_g) -
                       std::log(8.0 * kPi * std::sqrt(varpi)) - varpi * std::log(c.C_a);
    const SLog a = from_log(0.5 * varpi * std::log(hat * u) + log_erfc(hat * u));
    const SLog b =
        from_log(log_upper_incomplete_gamma(0.25 * (varpi + 2.0), hat * hat * u * u) - 0.5 * std::log(kPi));
    return finish(mul(from_log(pre), add(a, neg(b))));
}

PrintedValue printed_direct_cdf_strong(const ClosedFormConstants& c, ShapeParams gg, double xi, double gamma_bar,
                                       double gamma)
{
    const double x2 = xi * xi;
    const double z = gg.alpha * gg.beta * std::sqrt(gamma / gamma_bar) / c.C_d;
    SLog g;
    std::string why;
    if (!meijer(MeijerGSpec{4, 1, 2, 4, {1.0 - x2, 1.0 + x2}, {-x2, x2, gg.alpha, gg.beta}}, z, g, why)) {
        return undefined(why);
    }
    const double pre = std::log(x2) - 0.5 * x2 * std::log(gamma_bar) - lgam(gg.alpha) - lgam(gg.beta) +
                       x2 * std::log(gg.alpha * gg.beta / c.C_d);
    return finish(mul(from_log(pre), g));
}

PrintedValue printed_ris_cdf_strong(const ClosedFormConstants& c, ShapeParams gg, double varpi, double zeta,
                                    double gamma_bar, double gamma)
{
    const double z = gg.alpha * gg.beta * std::sqrt(gamma / gamma_bar) / c.C_a;
    SLog g;
    std::string why;
    const MeijerGSpec spec{4, 1, 2, 4, {1.0 - c.C_c, 1.0 + varpi}, {-c.C_c, 1.0 + c.C_c, gg.alpha, gg.beta}};
    if (!meijer(spec, z, g, why)) {
        return undefined(why);
    }
    const double pre = 0.5 * std::log(varpi * zeta) - 0.5 * std::log(kPi) - 0.5 * c.C_c * std::log(gamma_bar) -
                       lgam(gg.alpha) - lgam(gg.beta) + c.C_c * std::log(gg.alpha * gg.beta / c.C_a);
    return finish(mul(from_log(pre), g));
}

} // namespace risfso
