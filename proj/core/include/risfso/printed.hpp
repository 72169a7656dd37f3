// SPDX-License-Identifier: Apache-2.0
// Literal evaluations of the published closed forms, kept separate from the
// corrected forms in channel.hpp and stats.hpp. They feed the validation
// report, which records how far each published form is from its oracle.
#pragma once

#include "risfso/channel.hpp"

#include <string>

namespace risfso {

struct PrintedValue {
    bool defined = true; // false when the expression cannot be evaluated
    double log_abs = 0.0;
    int sign = 1;
    std::string note;

    double value() const;
};

// Densities.
PrintedValue printed_gml_pdf(const GmlParams& p, double h_g);
PrintedValue printed_ris_pdf_weak(const ClosedFormConstants& c, double sigma2, double varpi, double h);
PrintedValue printed_ris_pdf_strong(const ClosedFormConstants& c, ShapeParams gg, double varpi, double zeta,
                                    double h);
PrintedValue printed_direct_pdf_weak(const ClosedFormConstants& c, double sigma_b2, double xi, double h);
PrintedValue printed_direct_pdf_strong(const ClosedFormConstants& c, ShapeParams gg, double xi, double h);

// Second moments E[h^2].
PrintedValue printed_ris_moment_weak(const ClosedFormConstants& c, double sigma2, double varpi);
PrintedValue printed_direct_moment_weak(const ClosedFormConstants& c, double sigma_b2, double xi);
PrintedValue printed_ris_moment_strong(const ClosedFormConstants& c, ShapeParams gg, double varpi, double zeta);
PrintedValue printed_direct_moment_strong(const ClosedFormConstants& c, ShapeParams gg, double xi);

// Per-link SNR distribution functions at threshold gamma for mean SNR
// coefficient gamma_bar. The hatted constants are formed internally.
PrintedValue printed_direct_cdf_weak(const ClosedFormConstants& c, double xi, double gamma_bar, double gamma);
PrintedValue printed_ris_cdf_weak(const ClosedFormConstants& c, double sigma2, double varpi, double gamma_bar,
                                  double gamma);
PrintedValue printed_direct_cdf_strong(const ClosedFormConstants& c, ShapeParams gg, double xi, double gamma_bar,
                                       double gamma);
PrintedValue printed_ris_cdf_strong(const ClosedFormConstants& c, ShapeParams gg, double varpi, double zeta,
                                    double gamma_bar, double gamma);

} // namespace risfso
