// SPDX-License-Identifier: Apache-2.0
#include "risfso/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace risfso {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

DrawRng::DrawRng(RngStream stream, std::uint64_t draw_index)
    : key_(mix64(mix64(mix64(stream.seed + kGolden) ^ (stream.stream_id * kGolden + 1)) ^ draw_index))
{
}

std::uint64_t DrawRng::next_u64()
{
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
}

double DrawRng::uniform()
{
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double DrawRng::normal()
{
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double DrawRng::gamma(double shape)
{
    if (shape < 1.0) {
        const double g = gamma(shape + 1.0);
        return g * std::pow(uniform(), 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = 0.0;
        double v = 0.0;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) {
            return d * v;
        }
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
            return d * v;
        }
    }
}

RngStream derive_stream(std::uint64_t seed, std::uint64_t worker)
{
    return RngStream{seed, mix64(worker + kGolden)};
}

double sample_turbulence(const TurbulenceRegime& regime, DrawRng& rng)
{
    if (regime.kind == Regime::WeakLN) {
        return std::exp(2.0 * regime.mu + 2.0 * std::sqrt(regime.sigma2) * rng.normal());
    }
    return rng.gamma(regime.alpha) / regime.alpha * (rng.gamma(regime.beta) / regime.beta);
}

double sample_gml(const GmlParams& p, DrawRng& rng)
{
    const double z = rng.normal();
    return p.h0 * std::exp(-z * z / (2.0 * p.varpi));
}

double sample_direct_pointing(const DirectPointingParams& p, DrawRng& rng)
{
    return p.h0_b * std::pow(rng.uniform(), 1.0 / (p.xi * p.xi));
}

double sample_link(const LinkStats& link, DrawRng& rng)
{
    const double t = sample_turbulence(link.turbulence, rng);
    const double g = link.direct ? sample_direct_pointing(link.pointing, rng) : sample_gml(link.gml, rng);
    return link.h_p * t * g;
}

std::vector<double> sample_link_gains(const LinkStats& link, std::size_t n, RngStream stream, std::uint64_t first)
{
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        DrawRng rng(stream, first + i);
        out[i] = sample_link(link, rng);
    }
    return out;
}

EmpiricalSummary simulate_snr(const ScenarioConfig& cfg, double t, std::size_t n, RngStream stream,
                              const std::vector<double>& thresholds)
{
    const std::vector<Branch> branches = active_branches(cfg, t);
    std::vector<double> th = thresholds;
    std::sort(th.begin(), th.end());
    std::vector<std::size_t> bucket(th.size() + 1, 0);
    long double s1 = 0.0L;
    long double s2 = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        DrawRng rng(stream, i);
        double snr = 0.0;
        for (const Branch& b : branches) {
            const double h = sample_link(b.link, rng);
            snr += b.gamma_bar * h * h;
        }
        s1 += snr;
        s2 += static_cast<long double>(snr) * snr;
        // Index of the first threshold >= snr, matching P(snr <= th).
        bucket[std::lower_bound(th.begin(), th.end(), snr) - th.begin()]++;
    }
    EmpiricalSummary out;
    out.n_samples = n;
    const double nn = static_cast<double>(n);
    out.mean = static_cast<double>(s1 / nn);
    out.second_moment = static_cast<double>(s2 / nn);
    const double var = std::max(0.0, out.second_moment - out.mean * out.mean);
    out.stderr_mean = std::sqrt(var * nn / std::max(1.0, nn - 1.0) / nn);
    std::size_t cum = 0;
    for (std::size_t j = 0; j < th.size(); ++j) {
        cum += bucket[j];
        const double p = static_cast<double>(cum) / nn;
        out.cdf_grid.emplace_back(th[j], p);
        out.outage_at[th[j]] = OutageEstimate{p, std::sqrt(p * (1.0 - p) / nn)};
    }
    return out;
}

double ks_distance(const std::vector<double>& sorted, const std::function<double(double)>& cdf)
{
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

GridKs ks_distance_grid(const std::vector<double>& sorted, const std::vector<double>& grid,
                        const std::vector<double>& cdf_on_grid)
{
    GridKs r;
    const double n = static_cast<double>(sorted.size());
    if (grid.empty()) {
        r.slack = 1.0;
        return r;
    }
    r.slack = std::max(cdf_on_grid.front(), 1.0 - cdf_on_grid.back());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const auto lo = std::lower_bound(sorted.begin(), sorted.end(), grid[j]);
        const auto hi = std::upper_bound(sorted.begin(), sorted.end(), grid[j]);
        const double left = static_cast<double>(lo - sorted.begin()) / n;
        const double right = static_cast<double>(hi - sorted.begin()) / n;
        r.on_grid = std::max({r.on_grid, std::fabs(right - cdf_on_grid[j]), std::fabs(left - cdf_on_grid[j])});
        if (j > 0) {
            r.slack = std::max(r.slack, cdf_on_grid[j] - cdf_on_grid[j - 1]);
        }
    }
    return r;
}

} // namespace risfso
