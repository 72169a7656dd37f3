// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>

namespace risfso {

// Raised when an argument lies outside the domain of a special function or
// a channel formula.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

double erfc(double x);

// log(erfc(x)); stays finite far into the tail where erfc underflows.
double log_erfc(double x);

// Upper incomplete gamma function, unregularized.
double upper_incomplete_gamma(double s, double x);

// log Gamma(s, x), finite where Gamma(s, x) itself under- or overflows.
double log_upper_incomplete_gamma(double s, double x);

// Modified Bessel function of the second kind, real order.
double bessel_k(double nu, double x);

// log K_nu(x), usable when K_nu(x) over- or underflows a double.
double log_bessel_k(double nu, double x);

// exp(x) * K_nu(x).
double scaled_bessel_k(double nu, double x);

// exp(-x) * I_nu(x).
double scaled_bessel_i(double nu, double x);

// Principal-branch-free log-gamma for complex arguments: exp() of the result
// equals Gamma(z), the imaginary part is not reduced modulo 2*pi.
std::complex<double> lgamma_complex(std::complex<double> z);

// log|Gamma(x)| and the sign of Gamma(x) for real x that is not a pole.
double lgamma_signed(double x, int* sign);

} // namespace risfso
