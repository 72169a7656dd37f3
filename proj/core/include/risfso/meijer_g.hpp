// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "risfso/specfun.hpp"

#include <string>
#include <vector>

namespace risfso {

// G^{m,n}_{p,q}(z | a_1..a_p ; b_1..b_q) with real parameters. The first n
// entries of a_params and the first m entries of b_params form the
// numerator groups.
struct MeijerGSpec {
    int m = 0;
    int n = 0;
    int p = 0;
    int q = 0;
    std::vector<double> a_params;
    std::vector<double> b_params;
};

class UnsupportedClassError : public DomainError {
public:
    using DomainError::DomainError;
};

class PoleCoincidenceError : public DomainError {
public:
    using DomainError::DomainError;
};

enum class MeijerMethod { Auto, Residue, Contour };

struct MeijerGResult {
    double log_abs = 0.0;   // log|G|; -inf when G == 0
    int sign = 0;           // -1, 0 or +1
    MeijerMethod method = MeijerMethod::Auto;
    bool perturbed = false; // b parameters were nudged apart
    double error_estimate = 0.0; // relative rounding bound, residue path only
    std::vector<double> b_used;

    double value() const;
};

bool is_supported_class(int m, int n, int p, int q);

// Throws UnsupportedClassError / PoleCoincidenceError / DomainError.
void check_spec(const MeijerGSpec& spec);

// Auto tries the residue series first and falls back to the vertical
// Mellin-Barnes contour when the series cancels or fails to converge.
// Forcing Residue returns the series even when cancellation is heavy; the
// rounding bound is then reported in error_estimate.
MeijerGResult meijer_g_eval(const MeijerGSpec& spec, double z, MeijerMethod method = MeijerMethod::Auto);

double meijer_g(const MeijerGSpec& spec, double z);

std::string to_string(MeijerMethod method);

} // namespace risfso
