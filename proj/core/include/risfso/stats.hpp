// SPDX-License-Identifier: Apache-2.0
// Mean-SNR coefficients, second moments, outage and rate of the scenario SNR.
#pragma once

#include "risfso/channel.hpp"
#include "risfso/scenario.hpp"

#include <limits>
#include <optional>
#include <vector>

namespace risfso {

struct MeanSnrCoefficients {
    double gamma_bar_b = 0.0;
    double gamma_bar_kl = 0.0;
    double gamma_bar_kl_prime = 0.0;

    static MeanSnrCoefficients from(const ScenarioConfig& cfg);
    void validate() const;
};

struct SecondMoments {
    double Gamma2_b = std::numeric_limits<double>::quiet_NaN();
    double Gamma2_kl = std::numeric_limits<double>::quiet_NaN();
};

// E[h^2] from the Mellin transforms of the component laws.
double second_moment_weak_ris(const ClosedFormConstants& c, double sigma2, double varpi);
double second_moment_weak_direct(const ClosedFormConstants& c, double sigma_b2, double xi);
double second_moment_strong_ris(const ClosedFormConstants& c, ShapeParams gg, double varpi);
double second_moment_strong_direct(const ClosedFormConstants& c, ShapeParams gg, double xi);

// The same strong-regime moments as a Meijer G integral of h^2 against the
// density over 0 < h <= 1. Both routes agree while P(h > 1) is negligible,
// which holds whenever the amplitude constant is far below 1.
double second_moment_strong_ris_meijer(const ClosedFormConstants& c, ShapeParams gg, double varpi);
double second_moment_strong_direct_meijer(const ClosedFormConstants& c, ShapeParams gg, double xi);

// One side per call; the other field stays NaN.
SecondMoments second_moment_weak(const LinkStats& link);
SecondMoments second_moment_strong(const LinkStats& link);

// Sum of gamma_bar * E[h^2] over the active branches at time t.
double average_snr(const ScenarioConfig& cfg, double t);
double average_snr(const std::vector<Branch>& branches);

struct OutageResult {
    double p_out = 0.0;        // clamped to [0, 1]
    double raw = 0.0;          // before clamping
    double log_p_out = 0.0;
    std::optional<double> per_element_cdf; // single factor, multi-branch forms only
    double gamma_th = 0.0;
    Strategy scenario = Strategy::FOR;
    Regime regime = Regime::WeakLN;
};

// Product over the active branches of P(gamma_bar h^2 <= gamma_th).
OutageResult outage_closed_form(const ScenarioConfig& cfg, double gamma_th, double t);
OutageResult outage_closed_form(const std::vector<Branch>& branches, double gamma_th, Strategy scenario,
                                Regime regime);

// log P(gamma_bar h^2 <= gamma_th) for one branch.
double log_branch_cdf(const Branch& b, double gamma_th);

// log2(1 + snr), optionally with the IM/DD factor 1/2 in front.
double spectral_efficiency(double snr, bool im_dd_half = false);

double to_db(double x);
double from_db(double db);

} // namespace risfso
