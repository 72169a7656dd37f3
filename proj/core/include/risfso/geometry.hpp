// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>

namespace risfso {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

Vec3 operator+(Vec3 a, Vec3 b);
Vec3 operator-(Vec3 a, Vec3 b);
Vec3 operator*(double s, Vec3 a);
double dot(Vec3 a, Vec3 b);
double norm(Vec3 a);

enum class Strategy { Direct, FOR, DOR, Relay };

std::string to_string(Strategy s);
std::optional<Strategy> parse_strategy(const std::string& s);

// Track frame: x along the track, y horizontal across it, z up. The serving
// BS of the current period sits at x = 0; the detector rides at y = 0.
struct TrackLayout {
    double L_d = 2.5;          // BS-to-detector offset across the track [m]
    double L_0 = 8.0;          // along-track BS offset at the start of C1 [m]
    double L_b = 900.0;        // direct coverage length [m]
    double L_m = 100.0;        // RIS coverage length [m]
    double V_HST = 300.0 / 3.6; // [m/s]
    double Psi = 3.5 * 3.14159265358979323846 / 180.0; // half divergence [rad]
    double bs_spacing = 1000.0; // [m]
    double pole_height = 5.0;   // [m]
    double roof_height = 4.0;   // [m]

    void validate() const;
    double period() const { return bs_spacing / V_HST; }
};

struct RisLayout {
    int N_k = 10;
    int N_l = 10;
    int N_m = 25;
    double a_r = 0.0125; // element radius [m]
    double a_p = 0.10;   // detector radius [m]
    double rho = 0.95;
    Vec3 position{};     // RIS centre

    void validate() const;
    int elements_per_cell() const { return N_k * N_l; }
    int relay_elements() const; // round((a_p/a_r)^2)
};

struct ElementGeometry {
    double d_in = 0.0;
    double d_out = 0.0;
    double theta_in = 0.0;
    double theta_out = 0.0;
    double d_e = 0.0;
};

enum class SegmentKind { C1_direct, C2_for_grid, C3_dor };

std::string to_string(SegmentKind k);

struct ServingSegment {
    SegmentKind kind = SegmentKind::C1_direct;
    std::optional<int> active_cell; // 1-based, C2 only
    double t_b = 0.0;
    double t_bm = 0.0;
    double t_next = 0.0;
    double t_m = 0.0;
};

// Lateral BS offset chosen so that the BS-to-detector distance across the
// track equals L_d given the pole and roof heights.
double bs_lateral_offset(const TrackLayout& layout);

Vec3 bs_position(const TrackLayout& layout);

// RIS centre behind the far end of the RIS coverage, mounted at pole height
// on the BS side of the track, facing back along -x.
Vec3 default_ris_position(const TrackLayout& layout, double setback);

Vec3 ris_normal();

double direct_distance(const TrackLayout& layout, double t, double t_b);

double cell_dwell_time(const TrackLayout& layout, const RisLayout& ris);

// Detector along-track position within the current BS period at time t.
double detector_x(const TrackLayout& layout, double t);

Vec3 detector_position(const TrackLayout& layout, double x);

// Strategy FOR, Relay and Direct use the C2 grid after C1; DOR uses C3.
ServingSegment segment_at(const TrackLayout& layout, const RisLayout& ris, double t, Strategy strategy = Strategy::FOR);

// FOR cell (1-based) covering along-track position x; boundary ties go to
// the lower index, positions past L_m clamp to the last cell.
int cell_for_position(const TrackLayout& layout, const RisLayout& ris, double x);

// Centre of element (k, l) of cell `cell`, all 1-based.
Vec3 element_position(const RisLayout& ris, int cell, int k, int l);

// Distances and angles for explicit positions; angles are measured from the
// surface normal.
ElementGeometry element_geometry_at(Vec3 bs, Vec3 element, Vec3 normal, Vec3 detector);

ElementGeometry element_geometry(const TrackLayout& layout, const RisLayout& ris, int cell, int k, int l,
                                 Vec3 detector_pos);

} // namespace risfso
