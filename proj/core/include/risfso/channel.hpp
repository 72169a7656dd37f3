// SPDX-License-Identifier: Apache-2.0
// Channel statistics: path loss, turbulence, geometric/misalignment loss and
// the composite densities and distribution functions of the end-to-end gains.
#pragma once

#include "risfso/geometry.hpp"
#include "risfso/specfun.hpp"

#include <optional>
#include <string>

namespace risfso {

struct AtmosphereParams {
    double gamma_db_per_km = 0.44;
    double Cn2 = 1e-15;    // [m^-2/3]
    double lambda = 850e-9; // [m]
    double w0_hat = 0.0;    // source beam waist [m]; 0 means lambda/(2 pi Psi)
    double zeta = 100.0;

    double k() const;
    void validate() const;
    // Table-1 atmosphere with the beam waist tied to the half divergence angle.
    static AtmosphereParams table1(double Psi);
};

enum class Regime { WeakLN, ModerateStrongGG };

std::string to_string(Regime r);
std::optional<Regime> parse_regime(const std::string& s);

struct TurbulenceRegime {
    Regime kind = Regime::WeakLN;
    double sigma2 = 0.0;
    double mu = 0.0;    // LN only
    double alpha = 0.0; // GG only
    double beta = 0.0;  // GG only

    static TurbulenceRegime make(Regime kind, double sigma2);
    void validate() const;
};

struct GmlParams {
    double h0 = 0.0;
    double v = 0.0;
    double varpi = 0.0;
    double delta_m2 = 0.0;
    double w_d = 0.0;
};

struct DirectPointingParams {
    double h0_b = 0.0764;
    double xi = 2.35;

    void validate() const;
};

// Building-sway standard deviations at the BS, RIS and detector [m].
struct SwayParams {
    double delta_s = 0.05;
    double delta_r = 0.05;
    double delta_l = 0.05;
};

// Constants shared by the density and moment formulas. Fields that a builder
// does not fill stay NaN.
struct ClosedFormConstants {
    double C_a, C_b, C_c, C_d, C_e, C_f, C_g, C_h;
    double hat_C_g, hat_C_h, doublehat_C_g;

    ClosedFormConstants();
};

// RIS-element side: C_a, C_b, C_c, C_g.
ClosedFormConstants ris_constants(double h0, double h_p, double sigma2, double varpi, double zeta);
// Direct side: C_d, C_e, C_f, C_h.
ClosedFormConstants direct_constants(double h0_b, double h_pb, double sigma_b2, double xi);
// Both sides plus the hatted variants; non-positive SNR coefficients leave the
// corresponding hatted constants NaN.
ClosedFormConstants merge_constants(const ClosedFormConstants& ris, const ClosedFormConstants& direct,
                                    double gamma_bar_b, double gamma_bar_kl, double gamma_bar_kl_prime);

// Throw DomainError when constants do not match their defining formulas.
void check_ris_constants(const ClosedFormConstants& c, double sigma2, double varpi);
void check_direct_constants(const ClosedFormConstants& c, double sigma_b2, double xi);

// CDF and survival function carried in the log domain so that both deep tails
// keep full relative precision.
struct Tail {
    double log_cdf = 0.0;
    double log_sf = 0.0;

    double cdf() const;
    double sf() const;
    static Tail from_cdf(double log_cdf);
    static Tail from_sf(double log_sf);
};

double path_loss(const AtmosphereParams& atm, double d_e);
double rytov_sigma2(const AtmosphereParams& atm, double d_e);

struct ShapeParams {
    double alpha = 0.0;
    double beta = 0.0;
};

ShapeParams gg_shape_params(double sigma2);

double turbulence_pdf(const TurbulenceRegime& regime, double h_t);
double turbulence_cdf(const TurbulenceRegime& regime, double h_t);

double beam_width(const AtmosphereParams& atm, double d_e);

GmlParams gml_params(const ElementGeometry& geom, const AtmosphereParams& atm, const SwayParams& sway, double a_p);

double gml_pdf(const GmlParams& p, double h_g);
double gml_cdf(const GmlParams& p, double h_g);

double direct_pointing_pdf(const DirectPointingParams& p, double h_g);
double direct_pointing_cdf(const DirectPointingParams& p, double h_g);

// End-to-end RIS element gain h = h_p h_t h_g.
double composite_pdf_weak(const ClosedFormConstants& c, double sigma2, double varpi, double h);
Tail composite_tail_weak(const ClosedFormConstants& c, double sigma2, double varpi, double h);

// The GML factor enters through W = h_g/h0 ~ Beta(varpi + 1/4, 1/2); zeta is
// only checked against C_c.
double composite_pdf_strong(const ClosedFormConstants& c, ShapeParams gg, double varpi, double zeta, double h);
Tail composite_tail_strong(const ClosedFormConstants& c, ShapeParams gg, double varpi, double zeta, double h);

// Direct link gain h_b = h_pb h_t h_g.
double direct_pdf_weak(const ClosedFormConstants& c, double sigma_b2, const DirectPointingParams& p, double h);
Tail direct_tail_weak(const ClosedFormConstants& c, double sigma_b2, const DirectPointingParams& p, double h);

double direct_pdf_strong(const ClosedFormConstants& c, ShapeParams gg, const DirectPointingParams& p, double h);
Tail direct_tail_strong(const ClosedFormConstants& c, ShapeParams gg, const DirectPointingParams& p, double h);

// Everything needed to evaluate one link (a RIS element or the direct path).
struct LinkStats {
    bool direct = false;
    Regime regime = Regime::WeakLN;
    double d = 0.0;     // end-to-end distance [m]
    double h_p = 0.0;
    TurbulenceRegime turbulence;
    GmlParams gml;                 // RIS only
    DirectPointingParams pointing; // direct only
    double zeta = 100.0;
    ClosedFormConstants constants;

    double pdf(double h) const;
    Tail tail(double h) const;
    // E[h^2] from the Mellin transform of the component laws.
    double second_moment() const;
};

LinkStats ris_link(const ElementGeometry& geom, const AtmosphereParams& atm, const SwayParams& sway, double a_p,
                   Regime regime);
LinkStats direct_link(double d_b, const AtmosphereParams& atm, const DirectPointingParams& pointing, Regime regime);

} // namespace risfso
