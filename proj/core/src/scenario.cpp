// SPDX-License-Identifier: Apache-2.0
#include "risfso/scenario.hpp"

#include <cmath>
#include <numbers>

namespace risfso {

void ScenarioConfig::validate() const
{
    track.validate();
    ris.validate();
    atm.validate();
    pointing.validate();
    if (!(power_P > 0.0)) {
        throw DomainError("power_P must be positive");
    }
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw DomainError("eta must lie in (0, 1]");
    }
    if (!std::isfinite(gamma_th_db)) {
        throw DomainError("gamma_th_db must be finite");
    }
    if (!(ris_setback >= 0.0)) {
        throw DomainError("ris_setback must be non-negative");
    }
    if (!(sigma_w > 0.0 && sigma_w1 > 0.0 && sigma_w2 > 0.0)) {
        throw DomainError("noise standard deviations must be positive");
    }
    if (strategy == Strategy::Relay && ris.relay_elements() > ris.elements_per_cell()) {
        throw DomainError("relay element count exceeds the elements of one cell");
    }
}

RisLayout ScenarioConfig::effective_ris() const
{
    RisLayout r = ris;
    if (ris_auto_position) {
        r.position = default_ris_position(track, ris_setback);
    }
    return r;
}

double ScenarioConfig::gamma_bar_b() const
{
    return eta * eta * power_P / (sigma_w * sigma_w);
}

double ScenarioConfig::gamma_bar_kl() const
{
    return eta * eta * ris.rho * ris.rho * power_P / (sigma_w1 * sigma_w1);
}

double ScenarioConfig::gamma_bar_kl_prime() const
{
    return eta * eta * ris.rho * ris.rho * power_P / (sigma_w2 * sigma_w2);
}

ScenarioConfig ScenarioConfig::with_gamma_bar_b(double gamma_bar) const
{
    ScenarioConfig c = *this;
    c.power_P = power_P * gamma_bar / gamma_bar_b();
    return c;
}

double ScenarioConfig::reference_gamma_bar() const
{
    switch (strategy) {
    case Strategy::Direct:
        return gamma_bar_b();
    case Strategy::DOR:
        return gamma_bar_kl_prime();
    case Strategy::FOR:
    case Strategy::Relay:
        break;
    }
    return gamma_bar_kl();
}

ScenarioConfig ScenarioConfig::with_reference_gamma_bar(double gamma_bar) const
{
    ScenarioConfig c = *this;
    c.power_P = power_P * gamma_bar / reference_gamma_bar();
    return c;
}

void ScenarioConfig::set_psi(double psi)
{
    if (!(psi > 0.0)) {
        throw DomainError("Psi must be positive");
    }
    track.Psi = psi;
    atm.w0_hat = atm.lambda / (2.0 * std::numbers::pi * psi);
}

double ScenarioConfig::gamma_th() const
{
    return std::pow(10.0, gamma_th_db / 10.0);
}

std::vector<Branch> active_branches(const ScenarioConfig& cfg, double t)
{
    const RisLayout ris = cfg.effective_ris();
    const ServingSegment seg = segment_at(cfg.track, ris, t, cfg.strategy);
    std::vector<Branch> out;
    if (cfg.strategy == Strategy::Direct) {
        if (seg.kind != SegmentKind::C1_direct) {
            throw DomainError("Direct strategy evaluated outside the direct segment");
        }
        const double d = direct_distance(cfg.track, t, seg.t_b);
        out.push_back(Branch{direct_link(d, cfg.atm, cfg.pointing, cfg.regime), cfg.gamma_bar_b()});
        return out;
    }
    if (seg.kind == SegmentKind::C1_direct) {
        throw DomainError(to_string(cfg.strategy) + " strategy evaluated inside the direct segment");
    }
    const Vec3 det = detector_position(cfg.track, detector_x(cfg.track, t));
    const Vec3 bs = bs_position(cfg.track);
    auto add_cell = [&](int cell, int limit, double gamma_bar) {
        int count = 0;
        for (int k = 1; k <= ris.N_k && count < limit; ++k) {
            for (int l = 1; l <= ris.N_l && count < limit; ++l, ++count) {
                const ElementGeometry g = element_geometry_at(bs, element_position(ris, cell, k, l), ris_normal(), det);
                out.push_back(Branch{ris_link(g, cfg.atm, cfg.sway, ris.a_p, cfg.regime), gamma_bar});
            }
        }
    };
    switch (cfg.strategy) {
    case Strategy::FOR:
        add_cell(*seg.active_cell, ris.elements_per_cell(), cfg.gamma_bar_kl());
        break;
    case Strategy::Relay:
        add_cell(*seg.active_cell, ris.relay_elements(), cfg.gamma_bar_kl());
        break;
    case Strategy::DOR:
        for (int cell = 1; cell <= ris.N_m; ++cell) {
            add_cell(cell, ris.elements_per_cell(), cfg.gamma_bar_kl_prime());
        }
        break;
    case Strategy::Direct:
        break;
    }
    return out;
}

double ris_segment_time(const ScenarioConfig& cfg, double offset)
{
    return (cfg.track.L_b + offset) / cfg.track.V_HST;
}

double direct_segment_time(const ScenarioConfig& cfg, double offset)
{
    return offset / cfg.track.V_HST;
}

double reference_time(const ScenarioConfig& cfg)
{
    if (cfg.strategy == Strategy::Direct) {
        return direct_segment_time(cfg, 0.5 * cfg.track.L_b);
    }
    return ris_segment_time(cfg, 0.5 * (cfg.track.bs_spacing - cfg.track.L_b));
}

} // namespace risfso
