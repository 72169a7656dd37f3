// SPDX-License-Identifier: Apache-2.0
// Sampling oracle for the channel gains and scenario SNRs.
#pragma once

#include "risfso/channel.hpp"
#include "risfso/scenario.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace risfso {

struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

// Counter-based generator: the k-th output of draw i depends only on
// (seed, stream_id, i, k), so any partition of draws reproduces a serial run.
class DrawRng {
public:
    DrawRng(RngStream stream, std::uint64_t draw_index);

    std::uint64_t next_u64();
    double uniform();   // open interval (0, 1)
    double normal();
    double gamma(double shape); // unit scale

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

RngStream derive_stream(std::uint64_t seed, std::uint64_t worker);

double sample_turbulence(const TurbulenceRegime& regime, DrawRng& rng);
double sample_gml(const GmlParams& p, DrawRng& rng);
double sample_direct_pointing(const DirectPointingParams& p, DrawRng& rng);
// One end-to-end gain h = h_p h_t h_g for a link.
double sample_link(const LinkStats& link, DrawRng& rng);

// n gains of one link; draw i uses DrawRng(stream, first + i).
std::vector<double> sample_link_gains(const LinkStats& link, std::size_t n, RngStream stream,
                                      std::uint64_t first = 0);

struct OutageEstimate {
    double probability = 0.0;
    double stderr_ = 0.0;
};

struct EmpiricalSummary {
    std::size_t n_samples = 0;
    double mean = 0.0;
    double second_moment = 0.0;
    double stderr_mean = 0.0;
    std::vector<std::pair<double, double>> cdf_grid;
    std::map<double, OutageEstimate> outage_at;
};

// Empirical SNR statistics at time t. thresholds fill both cdf_grid and
// outage_at.
EmpiricalSummary simulate_snr(const ScenarioConfig& cfg, double t, std::size_t n, RngStream stream,
                              const std::vector<double>& thresholds = {});

// Kolmogorov-Smirnov distance between sorted samples and a CDF evaluated at
// every sample.
double ks_distance(const std::vector<double>& sorted, const std::function<double(double)>& cdf);

struct GridKs {
    double on_grid = 0.0; // sup |F_n - F| over the grid points
    double slack = 0.0;   // largest CDF increment between adjacent grid points
    double bound() const { return on_grid + slack; }
};

// KS distance bounded from a CDF known only on an increasing grid; the true
// distance is at most on_grid + slack.
GridKs ks_distance_grid(const std::vector<double>& sorted, const std::vector<double>& grid,
                        const std::vector<double>& cdf_on_grid);

} // namespace risfso
