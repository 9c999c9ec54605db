#pragma once

// Two-body circular-GEO rendezvous mechanics.
//
// Units: km, km/s and s internally. Impulses and delta-v totals are reported
// in m/s.

#include <utility>

#include "geoplan/vec3.hpp"

namespace geoplan::astro {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kDeg = kPi / 180.0;

/// Below this dihedral angle the planes are treated as coincident.
inline constexpr double kCoplanarTolerance = 1e-10;

struct PhysicalConstants {
  double mu = 0.0;    // km^3/s^2
  double r_geo = 0.0; // km
  double t_geo = 0.0; // s

  /// Builds a consistent set with r_geo derived from the period.
  static PhysicalConstants from(double mu_km3s2, double t_geo_s);
  /// mu = 398600.4418 km^3/s^2, t_geo = one sidereal day.
  static PhysicalConstants standard();

  double mean_motion() const { return kTwoPi / t_geo; }
  double circular_speed() const; // km/s

  friend bool operator==(const PhysicalConstants &, const PhysicalConstants &) = default;
};

/// Circular GEO orbit. arg_lat0 is the argument of latitude at scenario epoch.
struct GeoOrbit {
  double inclination = 0.0; // rad, [0, pi)
  double raan = 0.0;        // rad, [0, 2pi)
  double arg_lat0 = 0.0;    // rad, [0, 2pi)

  /// Normalizes the angles into their canonical ranges.
  static GeoOrbit make(double inclination, double raan, double arg_lat0);

  friend bool operator==(const GeoOrbit &, const GeoOrbit &) = default;
};

struct CartesianState {
  Vector3 r;      // km
  Vector3 v;      // km/s
  double t = 0.0; // s since scenario epoch
};

struct RendezvousSolution {
  Vector3 impulse1;          // m/s, plane change + phasing entry, applied at t1
  Vector3 impulse2;          // m/s, phasing exit, applied at t2
  Vector3 plane_change;      // m/s, plane-change component of impulse1
  Vector3 phasing_kick;      // m/s, phasing component of impulse1
  double t1 = 0.0;           // s since epoch
  double t2 = 0.0;           // s since epoch
  double coast_time = 0.0;   // s
  double phase_time = 0.0;   // s
  double total_time = 0.0;   // s
  double total_dv = 0.0;     // m/s
  int revolutions = 1;
  double alpha = 0.0; // rad
  double theta = 0.0; // rad, signed
};

struct PhasingSolution {
  double t_phase = 0.0; // s
  double a_phase = 0.0; // km
  double dv = 0.0;      // m/s, sum of both tangential burns
};

/// Wraps an angle into [0, 2pi).
double wrap_two_pi(double angle);
/// Wraps an angle into (-pi, pi].
double wrap_pi(double angle);

CartesianState orbit_to_state(const GeoOrbit &orbit, double t, const PhysicalConstants &consts);

/// Unit orbit normal, Rz(raan) * Rx(i) * (0, 0, 1).
Vector3 angular_momentum_dir(const GeoOrbit &orbit);

double dihedral_angle(const GeoOrbit &a, const GeoOrbit &b);

/// Node points of two planes given by unit normals, scaled to r_geo.
/// Throws DegeneratePlanes when the planes coincide.
std::pair<Vector3, Vector3> node_intersections(const Vector3 &normal_a, const Vector3 &normal_b,
                                               const PhysicalConstants &consts);
std::pair<Vector3, Vector3> node_intersections(const GeoOrbit &a, const GeoOrbit &b,
                                               const PhysicalConstants &consts);

/// Rotates v_before (km/s) about the node direction by alpha. Returns the
/// impulse in m/s and its magnitude.
std::pair<Vector3, double> plane_change_impulse(const Vector3 &v_before, const Vector3 &node_dir,
                                                double alpha);

/// Prograde coast duration until the state's position lines up with node.
double coast_time_to_node(const CartesianState &state, const Vector3 &node, const Vector3 &orbit_normal,
                          const PhysicalConstants &consts);

/// Signed phase of a relative to b at time t, in (-pi, pi]. Positive when a
/// is ahead of b along the direction of motion.
double phase_angle(const GeoOrbit &a, const GeoOrbit &b, double t, const PhysicalConstants &consts);

/// Phasing ellipse that returns to its start point after k revolutions
/// while a circular GEO object advances by 2 pi k + theta.
/// Throws InvalidRevolutions when k < 1.
PhasingSolution phasing_solution(double theta, int k, const PhysicalConstants &consts);

/// Tangential entry and exit burns (m/s) for a phasing ellipse. v_m is the
/// circular velocity at the maneuver point. A positive theta needs a longer
/// period, so the entry burn is prograde.
std::pair<Vector3, Vector3> phasing_impulses(const Vector3 &v_m, double theta, double dv);

/// Combined plane-change and phasing rendezvous from a circular GEO state to
/// a target orbit using k phasing revolutions.
RendezvousSolution rendezvous_mixed(const CartesianState &servicer, const GeoOrbit &target, int k,
                                    const PhysicalConstants &consts);

/// Two-body Kepler propagation (universal variables). Any conic.
CartesianState propagate(const CartesianState &state, double dt, const PhysicalConstants &consts);

} // namespace geoplan::astro
