// SPDX-License-Identifier: Apache-2.0
#include "risfso/specfun.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace risfso {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

template <class F>
double gk_integrate(F f, double a, double b)
{
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14, &err);
}

// log K_nu(x) from K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt, with the
// peak factored out so that neither the integrand nor the result overflows.
double log_bessel_k_integral(double nu, double x)
{
    nu = std::fabs(nu);
    const double tstar = std::asinh(nu / x);
    const double gstar = -x * std::cosh(tstar) + nu * tstar;
    const double right = 14.0 / std::sqrt(x * std::cosh(tstar));
    const double left = 14.0 / std::sqrt(x);
    const double a = std::max(0.0, tstar - left);
    const double b = tstar + right;
    auto f = [&](double t) {
        const double g = -x * std::cosh(t) + nu * t - gstar;
        return std::exp(g) * 0.5 * (1.0 + std::exp(-2.0 * nu * t));
    };
    double val = gk_integrate(f, a, std::max(a, tstar));
    val += gk_integrate(f, std::max(a, tstar), b);
    return gstar + std::log(val);
}

bool usable(double v)
{
    return std::isfinite(v) && v > 1e-290 && v < 1e290;
}

cplx log_sin_pi(cplx z)
{
    const double y = z.imag();
    if (std::fabs(y) < 20.0) {
        return std::log(std::sin(kPi * z));
    }
    const cplx i(0.0, 1.0);
    if (y > 0.0) {
        return -i * kPi * z + cplx(std::log(0.5), kPi / 2) + std::log(1.0 - std::exp(2.0 * i * kPi * z));
    }
    return i * kPi * z + cplx(std::log(0.5), -kPi / 2) + std::log(1.0 - std::exp(-2.0 * i * kPi * z));
}

} // namespace

double erfc(double x)
{
    return std::erfc(x);
}

double log_erfc(double x)
{
    if (x < 25.0) {
        return std::log(std::erfc(x));
    }
    // erfc(x) = exp(-x^2)/(x sqrt(pi)) * sum_n (-1)^n (2n-1)!! / (2x^2)^n
    const double inv = 1.0 / (2.0 * x * x);
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < 30; ++n) {
        term *= -(2.0 * n - 1.0) * inv;
        sum += term;
        if (std::fabs(term) < 1e-17) {
            break;
        }
    }
    return -x * x - std::log(x * std::sqrt(kPi)) + std::log(sum);
}

double upper_incomplete_gamma(double s, double x)
{
    if (!(s > 0.0)) {
        throw DomainError("upper_incomplete_gamma: s must be positive");
    }
    if (!(x >= 0.0)) {
        throw DomainError("upper_incomplete_gamma: x must be non-negative");
    }
    if (x == 0.0) {
        return std::tgamma(s);
    }
    return boost::math::tgamma(s, x);
}

double log_upper_incomplete_gamma(double s, double x)
{
    if (!(s > 0.0)) {
        throw DomainError("upper_incomplete_gamma: s must be positive");
    }
    if (!(x >= 0.0)) {
        throw DomainError("upper_incomplete_gamma: x must be non-negative");
    }
    if (x == 0.0) {
        return boost::math::lgamma(s);
    }
    if (x < s + 1.0) {
        const double q = boost::math::gamma_q(s, x);
        if (q > 1e-290) {
            return boost::math::lgamma(s) + std::log(q);
        }
    }
    // Modified Lentz evaluation of the continued fraction for
    // Gamma(s,x) e^x x^-s.
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) {
            d = tiny;
        }
        c = b + an / c;
        if (std::fabs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) {
            break;
        }
    }
    return -x + s * std::log(x) + std::log(h);
}

double log_bessel_k(double nu, double x)
{
    if (!(x > 0.0)) {
        throw DomainError("bessel_k: x must be positive");
    }
    nu = std::fabs(nu);
    if (x < 700.0 && nu < 150.0) {
        try {
            const double v = boost::math::cyl_bessel_k(nu, x);
            if (usable(v)) {
                return std::log(v);
            }
        } catch (const std::overflow_error&) {
        }
    }
    return log_bessel_k_integral(nu, x);
}

double bessel_k(double nu, double x)
{
    if (!(x > 0.0)) {
        throw DomainError("bessel_k: x must be positive");
    }
    nu = std::fabs(nu);
    try {
        const double v = boost::math::cyl_bessel_k(nu, x);
        if (std::isfinite(v) && (v > 1e-290 || v == 0.0)) {
            return v;
        }
    } catch (const std::overflow_error&) {
        return std::numeric_limits<double>::infinity();
    }
    return std::exp(log_bessel_k(nu, x));
}

namespace {

// Hankel expansion sum_k (+-1)^k a_k(nu) / x^k for large x; valid when
// x is well above nu^2.
bool hankel_usable(double nu, double x)
{
    return x >= 40.0 && x >= 2.0 * nu * nu;
}

double hankel_sum(double nu, double x, double sign)
{
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double next = term * sign * (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
        if (std::fabs(next) >= std::fabs(term)) {
            break;
        }
        term = next;
        sum += term;
        if (std::fabs(term) < 1e-17 * std::fabs(sum)) {
            break;
        }
    }
    return sum;
}

} // namespace

double scaled_bessel_k(double nu, double x)
{
    if (!(x > 0.0)) {
        throw DomainError("scaled_bessel_k: x must be positive");
    }
    if (hankel_usable(nu, x)) {
        return std::sqrt(kPi / (2.0 * x)) * hankel_sum(nu, x, 1.0);
    }
    if (x < 600.0) {
        const double v = boost::math::cyl_bessel_k(std::fabs(nu), x);
        if (usable(v)) {
            return std::exp(x) * v;
        }
    }
    return std::exp(log_bessel_k(nu, x) + x);
}

double scaled_bessel_i(double nu, double x)
{
    if (!(x >= 0.0)) {
        throw DomainError("scaled_bessel_i: x must be non-negative");
    }
    if (hankel_usable(nu, x)) {
        // The exponentially small exp(-2x) companion term is dropped.
        return hankel_sum(nu, x, -1.0) / std::sqrt(2.0 * kPi * x);
    }
    if (x < 600.0) {
        return boost::math::cyl_bessel_i(nu, x) * std::exp(-x);
    }
    // I_nu(x) = (1/pi) int_0^pi exp(x cos th) cos(nu th) dth
    //           - sin(nu pi)/pi int_0^inf exp(-x cosh t - nu t) dt;
    // the second part is O(exp(-2x)) after scaling and is dropped here.
    const double upper = std::min(kPi, 14.0 / std::sqrt(x));
    auto f = [&](double th) { return std::exp(x * (std::cos(th) - 1.0)) * std::cos(nu * th); };
    return gk_integrate(f, 0.0, upper) / kPi;
}

std::complex<double> lgamma_complex(std::complex<double> z)
{
    if (z.real() < 0.5) {
        if (z.imag() == 0.0 && z.real() == std::floor(z.real())) {
            throw DomainError("lgamma_complex: pole");
        }
        return std::log(kPi) - log_sin_pi(z) - lgamma_complex(1.0 - z);
    }
    cplx shift(0.0, 0.0);
    while (z.real() < 15.0) {
        shift += std::log(z);
        z += 1.0;
    }
    static constexpr double c[] = {1.0 / 12.0,      -1.0 / 360.0,         1.0 / 1260.0, -1.0 / 1680.0,
                                   1.0 / 1188.0,    -691.0 / 360360.0,    1.0 / 156.0,  -3617.0 / 122400.0};
    const cplx inv = 1.0 / z;
    const cplx inv2 = inv * inv;
    cplx series(0.0, 0.0);
    cplx pw = inv;
    for (double ck : c) {
        series += ck * pw;
        pw *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift;
}

double lgamma_signed(double x, int* sign)
{
    if (x <= 0.0 && x == std::floor(x)) {
        throw DomainError("lgamma_signed: pole of Gamma");
    }
    int s = 1;
    const double v = boost::math::lgamma(x, &s);
    if (sign != nullptr) {
        *sign = s;
    }
    return v;
}

} // namespace risfso
