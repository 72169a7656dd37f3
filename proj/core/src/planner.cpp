// SPDX-License-Identifier: Apache-2.0
#include "risfso/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace risfso {

namespace {

std::string fmt_db(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

// Outage at the reference time for a reference coefficient of db, reusing
// the branch geometry and rescaling every coefficient by the same factor.
class OutageCurve {
public:
    explicit OutageCurve(const ScenarioConfig& cfg)
        : cfg_(cfg), branches_(active_branches(cfg, reference_time(cfg))), ref_(cfg.reference_gamma_bar())
    {
    }

    double p_out(double db) const
    {
        const double scale = from_db(db) / ref_;
        std::vector<Branch> b = branches_;
        for (Branch& x : b) {
            x.gamma_bar *= scale;
        }
        return outage_closed_form(b, cfg_.gamma_th(), cfg_.strategy, cfg_.regime).p_out;
    }

private:
    ScenarioConfig cfg_;
    std::vector<Branch> branches_;
    double ref_;
};

double grid_db(long k)
{
    return kSnrGridLoDb + kSnrStepDb * static_cast<double>(k);
}

double diameter_at(long k)
{
    return kDiameterLo + kDiameterStep * static_cast<double>(k);
}

// Average SNR at the along-track offset s [m] from the start of C1.
double snr_at_offset(const ScenarioConfig& cfg, const ScenarioConfig& direct_cfg, double s)
{
    const double t = s / cfg.track.V_HST;
    if (s < cfg.track.L_b) {
        return average_snr(direct_cfg, t);
    }
    return average_snr(cfg, t);
}

} // namespace

double required_snr(const ScenarioConfig& cfg, double p_out_target)
{
    if (!(p_out_target > 0.0 && p_out_target < 1.0)) {
        throw DomainError("required_snr: target must lie in (0, 1)");
    }
    cfg.validate();
    const OutageCurve curve(cfg);
    const long n = std::lround((kSnrGridHiDb - kSnrGridLoDb) / kSnrStepDb);
    if (curve.p_out(grid_db(n)) > p_out_target) {
        throw NonBracketingError("required_snr: outage target not reached at " + fmt_db(kSnrGridHiDb) + " dB");
    }
    if (curve.p_out(grid_db(0)) <= p_out_target) {
        throw NonBracketingError("required_snr: outage target already met at " + fmt_db(kSnrGridLoDb) + " dB");
    }
    long lo = 0; // fails
    long hi = n; // meets
    while (hi - lo > 1) {
        const long mid = (lo + hi) / 2;
        if (curve.p_out(grid_db(mid)) <= p_out_target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return grid_db(hi);
}

ScenarioConfig with_diameter(const ScenarioConfig& cfg, double diameter)
{
    if (!(diameter > 0.0)) {
        throw DomainError("with_diameter: diameter must be positive");
    }
    ScenarioConfig c = cfg;
    c.track.L_b = 0.9 * diameter;
    c.track.L_m = 0.1 * diameter;
    c.track.bs_spacing = diameter;
    return c;
}

double edge_average_snr(const ScenarioConfig& cfg)
{
    const TrackLayout& tr = cfg.track;
    const double V = tr.V_HST;
    const double lm = tr.bs_spacing - tr.L_b;
    // Keep probe points strictly inside their segment.
    const double eps = 1e-9 * tr.bs_spacing;
    switch (cfg.strategy) {
    case Strategy::Direct:
        return average_snr(cfg, (tr.L_b - eps) / V);
    case Strategy::DOR:
        return std::min(average_snr(cfg, tr.L_b / V), average_snr(cfg, (tr.bs_spacing - eps) / V));
    case Strategy::FOR:
    case Strategy::Relay:
        break;
    }
    const int cells = cfg.ris.N_m;
    const double grid = tr.L_m / cells;
    double worst = std::numeric_limits<double>::infinity();
    for (int c = 1; c <= cells; ++c) {
        const double u = (c - 1) * grid + 1e-6 * grid;
        if (u >= lm) {
            break;
        }
        worst = std::min(worst, average_snr(cfg, (tr.L_b + u) / V));
    }
    return worst;
}

CoverageResult coverage_diameter(const ScenarioConfig& cfg, double required_snr_db)
{
    cfg.validate();
    auto snr_db = [&](long k) { return to_db(edge_average_snr(with_diameter(cfg, diameter_at(k)))); };
    const long n = std::lround((kDiameterHi - kDiameterLo) / kDiameterStep);
    const double first = snr_db(0);
    if (!(first >= required_snr_db)) {
        throw UnreachableSnrError("coverage_diameter: " + fmt_db(required_snr_db) + " dB not reached even at " +
                                  fmt_db(kDiameterLo) + " m");
    }
    // The edge SNR need not be monotone over the whole range (the lognormal
    // second moment grows again once sigma^2 >> 1), so coverage is the
    // contiguous run from the smallest diameter: scan on a geometric grid
    // for the first failure, then bisect on the 0.5 m grid.
    long lo = 0; // meets
    double lo_snr = first;
    long hi = -1; // first failing index found
    for (long k = 1; hi < 0;) {
        const long next = std::min(n, std::max(k + 1, static_cast<long>(std::ceil(static_cast<double>(k) * 1.05))));
        const double s = snr_db(next);
        if (s >= required_snr_db) {
            lo = next;
            lo_snr = s;
            if (next == n) {
                break;
            }
        } else {
            hi = next;
        }
        k = next;
    }
    CoverageResult r;
    if (hi < 0) {
        r.diameter_m = diameter_at(n);
        r.edge_snr_db = lo_snr;
        r.saturated = true;
        return r;
    }
    while (hi - lo > 1) {
        const long mid = (lo + hi) / 2;
        const double s = snr_db(mid);
        if (s >= required_snr_db) {
            lo = mid;
            lo_snr = s;
        } else {
            hi = mid;
        }
    }
    r.diameter_m = diameter_at(lo);
    r.edge_snr_db = lo_snr;
    return r;
}

long bs_count(double rail_length, double coverage)
{
    if (!(rail_length > 0.0) || !(coverage > 0.0)) {
        throw DomainError("bs_count: lengths must be positive");
    }
    return static_cast<long>(std::ceil(rail_length / coverage));
}

DesignRow design_row(const ScenarioConfig& cfg, double p_out_target, double rail_length_m)
{
    DesignRow row;
    row.scenario = cfg.strategy;
    row.regime = cfg.regime;
    row.p_out_target = p_out_target;
    row.rail_length_m = rail_length_m;
    row.required_snr_db = required_snr(cfg, p_out_target);
    const CoverageResult cov = coverage_diameter(cfg, row.required_snr_db);
    row.coverage_diameter_m = cov.diameter_m;
    row.saturated = cov.saturated;
    row.bs_count = bs_count(rail_length_m, cov.diameter_m);
    return row;
}

std::vector<std::pair<double, double>> sweep_l0(const ScenarioConfig& cfg, const std::vector<double>& l0_grid)
{
    if (l0_grid.empty()) {
        throw DomainError("sweep_l0: empty grid");
    }
    for (std::size_t i = 1; i < l0_grid.size(); ++i) {
        if (!(l0_grid[i] > l0_grid[i - 1])) {
            throw DomainError("sweep_l0: grid must be increasing");
        }
    }
    std::vector<std::pair<double, double>> out;
    for (double l0 : l0_grid) {
        ScenarioConfig c = cfg;
        c.track.L_0 = l0;
        c.validate();
        ScenarioConfig d = c;
        d.strategy = Strategy::Direct;
        const double span = c.track.bs_spacing;
        const long steps = std::max(1L, std::lround(std::ceil(span)));
        const double h = span / static_cast<double>(steps);
        // The period end belongs to the next period; probe just before it.
        const double eps = 1e-9 * span;
        double sum = 0.0;
        for (long i = 0; i <= steps; ++i) {
            const double s = std::min(i * h, span - eps);
            const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
            sum += w * snr_at_offset(c, d, s);
        }
        out.emplace_back(l0, to_db(sum * h / span));
    }
    return out;
}

double covering_psi(const ScenarioConfig& cfg, double margin)
{
    if (!(margin > 0.0)) {
        throw DomainError("covering_psi: margin must be positive");
    }
    const RisLayout ris = cfg.effective_ris();
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(ris.N_m))));
    const int rows = (ris.N_m + cols - 1) / cols;
    const double half_w = 0.5 * cols * ris.N_l * 2.0 * ris.a_r;
    const double half_h = 0.5 * rows * ris.N_k * 2.0 * ris.a_r;
    const double need = margin * std::hypot(half_w, half_h);
    const double d_in = norm(ris.position - bs_position(cfg.track));
    auto with_psi = [&](double psi) {
        ScenarioConfig c = cfg;
        c.set_psi(psi);
        return beam_width(c.atm, d_in);
    };
    // With the waist tied to Psi the footprint is smallest at
    // Psi^2 = lambda / (4 pi d_in); search the divergent side above it.
    double lo = std::sqrt(cfg.atm.lambda / (4.0 * std::numbers::pi * d_in));
    double hi = 1.5;
    if (with_psi(hi) < need) {
        throw GeometryInfeasibleError("covering_psi: no divergence angle covers the RIS");
    }
    if (with_psi(lo) >= need) {
        return lo;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (with_psi(mid) >= need) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

RisSizeSweep sweep_ris_size(const ScenarioConfig& cfg, const std::vector<std::array<int, 3>>& sizes,
                            const std::vector<double>& diameters)
{
    if (sizes.empty() || diameters.empty()) {
        throw DomainError("sweep_ris_size: empty size or diameter list");
    }
    RisSizeSweep out;
    for (double D : diameters) {
        std::vector<double> snr;
        std::vector<int> total;
        for (const auto& sz : sizes) {
            ScenarioConfig c = with_diameter(cfg, D);
            c.ris.N_k = sz[0];
            c.ris.N_l = sz[1];
            c.ris.N_m = sz[2];
            c.validate();
            const double psi = std::max(cfg.track.Psi, covering_psi(c));
            c.set_psi(psi);
            RisSizeRow row;
            row.size = sz;
            row.total_elements = sz[0] * sz[1] * sz[2];
            row.psi = psi;
            row.diameter_m = D;
            row.avg_snr_db = to_db(edge_average_snr(c));
            snr.push_back(row.avg_snr_db);
            total.push_back(row.total_elements);
            out.rows.push_back(row);
        }
        if (snr.size() >= 2) {
            const std::size_t k = snr.size() - 1;
            const double dn = static_cast<double>(total[k] - total[k - 1]);
            out.saturation_slope.emplace_back(D, dn != 0.0 ? (snr[k] - snr[k - 1]) / dn : 0.0);
        }
    }
    return out;
}

} // namespace risfso
