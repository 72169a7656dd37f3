// SPDX-License-Identifier: Apache-2.0
// Closed form against oracle checks shared by the validate experiment and the
// acceptance suite.
#pragma once

#include "risfso/channel.hpp"
#include "risfso/meijer_g.hpp"
#include "risfso/montecarlo.hpp"
#include "risfso/scenario.hpp"

#include <string>
#include <vector>

namespace risfso {

struct ValidationRow {
    std::string check;    // e.g. ks_ris_weak
    std::string instance; // e.g. d=150
    double value = 0.0;
    double tolerance = 0.0;
    bool gate = true; // false for diagnostics that never fail a run
    bool pass = true;
    std::string note;
};

struct ValidationOptions {
    std::size_t mc_samples = 100000;
    std::uint64_t seed = 1;
    std::vector<double> distances{50.0, 150.0, 500.0};
    std::size_t ks_grid = 400;
};

enum class LinkKind { RisWeak, RisStrong, DirectWeak, DirectStrong };

std::string to_string(LinkKind k);

// Link with end-to-end distance d at fixed incidence and reflection angles
// (RIS) or at distance d (direct), using the scenario's atmosphere.
LinkStats reference_link(const ScenarioConfig& cfg, LinkKind kind, double d);

// Integral of the density over (0, inf), bracketed by the tails.
double density_mass(const LinkStats& link);

struct SampleCheck {
    GridKs ks;
    double empirical_m2 = 0.0;
    double m2_stderr = 0.0;
    double closed_m2 = 0.0;
};

// Component-product samples of the link against its CDF (on a grid of sample
// quantiles) and its second moment.
SampleCheck sample_check(const LinkStats& link, std::size_t n, RngStream stream, std::size_t grid_points);

// Meijer G specifications and arguments on which the residue and contour
// paths are compared.
struct MeijerGridPoint {
    MeijerGSpec spec;
    double z = 0.0;
};
std::vector<MeijerGridPoint> meijer_acceptance_grid();

double meijer_two_path_gap(const MeijerGridPoint& p);
// |G^{2,0}_{0,2}(z | b1, b2) - 2 z^{(b1+b2)/2} K_{b1-b2}(2 sqrt z)| relative.
double meijer_bessel_gap(double b1, double b2, double z);
// |Gamma(s, x) + gamma(s, x) - Gamma(s)| / Gamma(s).
double incomplete_gamma_gap(double s, double x);

// Every check of the validate report.
std::vector<ValidationRow> run_validation(const ScenarioConfig& cfg, const ValidationOptions& opt);

} // namespace risfso
