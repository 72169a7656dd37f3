// SPDX-License-Identifier: Apache-2.0
// Internal quadrature helpers shared by the channel and stats code.
#pragma once

#include <functional>

namespace risfso::detail {

// Adaptive Gauss-Kronrod on a finite interval.
double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-12);

// log of int_a^b exp(logf(x)) dx for a unimodal-ish log-integrand whose
// values may be far outside double range. Returns -inf when the integral
// vanishes numerically.
double log_integrate(const std::function<double(double)>& logf, double a, double b, double rel_tol = 1e-12);

// log(exp(a) + exp(b)) and log(exp(a) - exp(b)) for a >= b.
double log_add(double a, double b);
double log_sub(double a, double b);

} // namespace risfso::detail
