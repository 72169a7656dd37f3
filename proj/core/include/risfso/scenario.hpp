// SPDX-License-Identifier: Apache-2.0
// A serving scenario and the set of links that carry the signal at time t.
#pragma once

#include "risfso/channel.hpp"
#include "risfso/geometry.hpp"

#include <vector>

namespace risfso {

struct ScenarioConfig {
    Strategy strategy = Strategy::FOR;
    Regime regime = Regime::WeakLN;
    TrackLayout track;
    RisLayout ris;
    AtmosphereParams atm = AtmosphereParams::table1(TrackLayout{}.Psi);
    SwayParams sway;
    DirectPointingParams pointing;
    double ris_setback = 10.0; // RIS distance beyond the end of the RIS region [m]
    bool ris_auto_position = true;
    double power_P = 0.04;     // [W]
    double eta = 0.5;
    double sigma_w = 1e-7;     // direct branch noise
    double sigma_w1 = 1e-7;    // FOR branch noise
    double sigma_w2 = 1e-7;    // DOR branch noise
    double gamma_th_db = -31.3; // outage threshold on the instantaneous SNR [dB]

    void validate() const;
    // RIS layout with the position filled in when it follows the track.
    RisLayout effective_ris() const;
    double gamma_bar_b() const;
    double gamma_bar_kl() const;
    double gamma_bar_kl_prime() const;
    // Scale the transmit power so that gamma_bar_b equals the given value.
    ScenarioConfig with_gamma_bar_b(double gamma_bar) const;
    // Mean-SNR coefficient of the branches the strategy sums: gamma_bar_b
    // for Direct, gamma_bar_kl for FOR and Relay, gamma_bar_kl_prime for DOR.
    double reference_gamma_bar() const;
    ScenarioConfig with_reference_gamma_bar(double gamma_bar) const;
    double gamma_th() const;
    // Set the half divergence angle and the source waist tied to it.
    void set_psi(double psi);
};

struct Branch {
    LinkStats link;
    double gamma_bar = 0.0;
};

// The links summed in the SNR at time t. Direct needs a C1 time; the RIS
// strategies need a time after t_bm. Throws DomainError on a mismatch.
std::vector<Branch> active_branches(const ScenarioConfig& cfg, double t);

// Start of the RIS-served part of the first BS period, shifted by offset [m].
double ris_segment_time(const ScenarioConfig& cfg, double offset);
// Time at which the detector is offset [m] into the direct segment.
double direct_segment_time(const ScenarioConfig& cfg, double offset);
// Representative detector time for outage figures: the middle of the RIS
// segment, or of the direct segment for the Direct strategy.
double reference_time(const ScenarioConfig& cfg);

} // namespace risfso
