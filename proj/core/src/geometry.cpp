// SPDX-License-Identifier: Apache-2.0
#include "risfso/geometry.hpp"

#include "risfso/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace risfso {

Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

std::string to_string(Strategy s)
{
    switch (s) {
    case Strategy::Direct:
        return "Direct";
    case Strategy::FOR:
        return "FOR";
    case Strategy::DOR:
        return "DOR";
    case Strategy::Relay:
        return "Relay";
    }
    return "?";
}

std::optional<Strategy> parse_strategy(const std::string& s)
{
    if (s == "Direct" || s == "direct") {
        return Strategy::Direct;
    }
    if (s == "FOR" || s == "for") {
        return Strategy::FOR;
    }
    if (s == "DOR" || s == "dor") {
        return Strategy::DOR;
    }
    if (s == "Relay" || s == "relay") {
        return Strategy::Relay;
    }
    return std::nullopt;
}

std::string to_string(SegmentKind k)
{
    switch (k) {
    case SegmentKind::C1_direct:
        return "C1_direct";
    case SegmentKind::C2_for_grid:
        return "C2_for_grid";
    case SegmentKind::C3_dor:
        return "C3_dor";
    }
    return "?";
}

void TrackLayout::validate() const
{
    if (!(L_d > 0 && L_0 > 0 && L_b > 0 && L_m > 0 && bs_spacing > 0)) {
        throw DomainError("TrackLayout: lengths must be positive");
    }
    if (!(V_HST > 0)) {
        throw DomainError("TrackLayout: V_HST must be positive");
    }
    if (!(Psi > 0 && Psi < std::numbers::pi / 2)) {
        throw DomainError("TrackLayout: Psi must lie in (0, pi/2)");
    }
    if (L_b + L_m > bs_spacing * (1.0 + 1e-12)) {
        throw DomainError("TrackLayout: L_b + L_m exceeds bs_spacing");
    }
    if (!(pole_height > 0 && roof_height > 0)) {
        throw DomainError("TrackLayout: heights must be positive");
    }
    if (L_d < std::fabs(pole_height - roof_height)) {
        throw DomainError("TrackLayout: L_d smaller than the pole-roof height difference");
    }
}

void RisLayout::validate() const
{
    if (N_k < 1 || N_l < 1 || N_m < 1) {
        throw DomainError("RisLayout: element and cell counts must be positive");
    }
    if (!(a_r > 0 && a_r < a_p)) {
        throw DomainError("RisLayout: need 0 < a_r < a_p");
    }
    if (!(rho > 0 && rho <= 1)) {
        throw DomainError("RisLayout: rho must lie in (0, 1]");
    }
}

int RisLayout::relay_elements() const
{
    const double r = a_p / a_r;
    return static_cast<int>(std::lround(r * r));
}

double bs_lateral_offset(const TrackLayout& layout)
{
    const double dz = layout.pole_height - layout.roof_height;
    return std::sqrt(std::max(0.0, layout.L_d * layout.L_d - dz * dz));
}

Vec3 bs_position(const TrackLayout& layout)
{
    return {0.0, bs_lateral_offset(layout), layout.pole_height};
}

Vec3 default_ris_position(const TrackLayout& layout, double setback)
{
    return {layout.L_0 + layout.L_b + layout.L_m + setback, bs_lateral_offset(layout), layout.pole_height};
}

Vec3 ris_normal()
{
    return {-1.0, 0.0, 0.0};
}

double direct_distance(const TrackLayout& layout, double t, double t_b)
{
    if (t < t_b) {
        throw DomainError("direct_distance: t precedes t_b");
    }
    const double along = layout.L_0 + (t - t_b) * layout.V_HST;
    return std::sqrt(layout.L_d * layout.L_d + along * along);
}

double cell_dwell_time(const TrackLayout& layout, const RisLayout& ris)
{
    return layout.L_m / (ris.N_m * layout.V_HST);
}

double detector_x(const TrackLayout& layout, double t)
{
    const double T = layout.period();
    const double tau = t - std::floor(t / T) * T;
    return layout.L_0 + tau * layout.V_HST;
}

Vec3 detector_position(const TrackLayout& layout, double x)
{
    return {x, 0.0, layout.roof_height};
}

int cell_for_position(const TrackLayout& layout, const RisLayout& ris, double x)
{
    const double u = x - (layout.L_0 + layout.L_b);
    const double grid = layout.L_m / ris.N_m;
    const int cell = static_cast<int>(std::ceil(u / grid));
    return std::clamp(cell, 1, ris.N_m);
}

ServingSegment segment_at(const TrackLayout& layout, const RisLayout& ris, double t, Strategy strategy)
{
    const double T = layout.period();
    const double n = std::floor(t / T);
    ServingSegment seg;
    seg.t_b = n * T;
    seg.t_bm = seg.t_b + layout.L_b / layout.V_HST;
    seg.t_next = seg.t_b + T;
    seg.t_m = cell_dwell_time(layout, ris);
    if (t < seg.t_bm) {
        seg.kind = SegmentKind::C1_direct;
        return seg;
    }
    if (strategy == Strategy::DOR) {
        seg.kind = SegmentKind::C3_dor;
        return seg;
    }
    seg.kind = SegmentKind::C2_for_grid;
    seg.active_cell = cell_for_position(layout, ris, detector_x(layout, t));
    return seg;
}

Vec3 element_position(const RisLayout& ris, int cell, int k, int l)
{
    if (cell < 1 || cell > ris.N_m || k < 1 || k > ris.N_k || l < 1 || l > ris.N_l) {
        throw DomainError("element_position: index out of range");
    }
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(ris.N_m))));
    const int rows = (ris.N_m + cols - 1) / cols;
    const double pitch = 2.0 * ris.a_r;
    const double cell_w = ris.N_l * pitch;
    const double cell_h = ris.N_k * pitch;
    const int cc = (cell - 1) % cols;
    const int cr = (cell - 1) / cols;
    const double y = (cc - 0.5 * (cols - 1)) * cell_w + (l - 0.5 * (ris.N_l + 1)) * pitch;
    const double z = (cr - 0.5 * (rows - 1)) * cell_h + (k - 0.5 * (ris.N_k + 1)) * pitch;
    return ris.position + Vec3{0.0, y, z};
}

ElementGeometry element_geometry_at(Vec3 bs, Vec3 element, Vec3 normal, Vec3 detector)
{
    const Vec3 to_bs = bs - element;
    const Vec3 to_det = detector - element;
    ElementGeometry g;
    g.d_in = norm(to_bs);
    g.d_out = norm(to_det);
    if (!(g.d_in > 0.0 && g.d_out > 0.0)) {
        throw DomainError("element_geometry: coincident points");
    }
    const double nn = norm(normal);
    const double ci = dot(to_bs, normal) / (g.d_in * nn);
    const double co = dot(to_det, normal) / (g.d_out * nn);
    if (!(ci > 0.0 && co > 0.0)) {
        throw DomainError("element_geometry: BS or detector behind the surface");
    }
    g.theta_in = std::acos(std::min(1.0, ci));
    g.theta_out = std::acos(std::min(1.0, co));
    g.d_e = g.d_in + g.d_out;
    return g;
}

ElementGeometry element_geometry(const TrackLayout& layout, const RisLayout& ris, int cell, int k, int l,
                                 Vec3 detector_pos)
{
    return element_geometry_at(bs_position(layout), element_position(ris, cell, k, l), ris_normal(), detector_pos);
}

} // namespace risfso
