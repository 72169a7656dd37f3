// SPDX-License-Identifier: Apache-2.0
// Deployment planning: required SNR, coverage diameter, BS counts and sweeps.
#pragma once

#include "risfso/scenario.hpp"
#include "risfso/stats.hpp"

#include <array>
#include <utility>
#include <vector>

namespace risfso {

class NonBracketingError : public DomainError {
public:
    using DomainError::DomainError;
};

class UnreachableSnrError : public DomainError {
public:
    using DomainError::DomainError;
};

class GeometryInfeasibleError : public DomainError {
public:
    using DomainError::DomainError;
};

inline constexpr double kSnrGridLoDb = -20.0;
inline constexpr double kSnrGridHiDb = 100.0;
inline constexpr double kSnrStepDb = 0.1;

// Smallest reference mean-SNR coefficient on the 0.1 dB grid over
// [-20, 100] dB at which the outage at reference_time(cfg) is <= target.
// cfg.regime and cfg.gamma_th_db select the outage model.
double required_snr(const ScenarioConfig& cfg, double p_out_target);

// Layout with coverage diameter D: L_b = 0.9 D, L_m = 0.1 D, spacing D.
ScenarioConfig with_diameter(const ScenarioConfig& cfg, double diameter);

// Lowest average SNR over the positions where the served detector is
// farthest from its transmitter: the end of C1 for Direct, every FOR cell
// entry for FOR and Relay, both ends of C3 for DOR.
double edge_average_snr(const ScenarioConfig& cfg);

struct CoverageResult {
    double diameter_m = 0.0;
    double edge_snr_db = 0.0;
    bool saturated = false; // the largest searched diameter still qualifies
};

inline constexpr double kDiameterLo = 10.0;
inline constexpr double kDiameterHi = 100000.0;
inline constexpr double kDiameterStep = 0.5;

// Largest diameter D on the 0.5 m grid over [10 m, 100 km] such that the
// edge average SNR is at least required_snr_db for every grid diameter up to
// D. Throws UnreachableSnrError when 10 m already fails.
CoverageResult coverage_diameter(const ScenarioConfig& cfg, double required_snr_db);

long bs_count(double rail_length, double coverage);

struct DesignRow {
    Strategy scenario = Strategy::FOR;
    Regime regime = Regime::WeakLN;
    double p_out_target = 1e-3;
    double required_snr_db = 0.0;
    double coverage_diameter_m = 0.0;
    long bs_count = 0;
    double rail_length_m = 100000.0;
    bool saturated = false;
};

DesignRow design_row(const ScenarioConfig& cfg, double p_out_target, double rail_length_m);

// Average SNR in dB over one BS period: the direct link in C1 and the
// strategy's links elsewhere, trapezoid rule with a 1 m step.
std::vector<std::pair<double, double>> sweep_l0(const ScenarioConfig& cfg, const std::vector<double>& l0_grid);

// Half divergence angle whose beam footprint radius at the RIS covers the
// RIS half extent times margin: the smallest such angle above the one that
// minimises the footprint.
double covering_psi(const ScenarioConfig& cfg, double margin = 1.0);

struct RisSizeRow {
    std::array<int, 3> size{}; // N_k, N_l, N_m
    int total_elements = 0;
    double psi = 0.0;
    double diameter_m = 0.0;
    double avg_snr_db = 0.0;
};

struct RisSizeSweep {
    std::vector<RisSizeRow> rows;
    // Per diameter, SNR slope between the last two sizes [dB per element].
    std::vector<std::pair<double, double>> saturation_slope;
};

// Edge average SNR on each diameter for each RIS size; Psi is re-chosen per
// size with covering_psi.
RisSizeSweep sweep_ris_size(const ScenarioConfig& cfg, const std::vector<std::array<int, 3>>& sizes,
                            const std::vector<double>& diameters);

} // namespace risfso
