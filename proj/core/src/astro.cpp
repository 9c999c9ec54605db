#include "geoplan/astro.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geoplan/errors.hpp"
#include "stumpff.hpp"

namespace geoplan::astro {

namespace {

using detail::stumpff_c;
using detail::stumpff_s;

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

} // namespace

PhysicalConstants PhysicalConstants::from(double mu_km3s2, double t_geo_s) {
  const double n = kTwoPi / t_geo_s;
  return PhysicalConstants{mu_km3s2, std::cbrt(mu_km3s2 / (n * n)), t_geo_s};
}

PhysicalConstants PhysicalConstants::standard() { return from(398600.4418, 86164.0905); }

double PhysicalConstants::circular_speed() const { return std::sqrt(mu / r_geo); }

double wrap_two_pi(double angle) {
  double w = std::fmod(angle, kTwoPi);
  if (w < 0.0) {
    w += kTwoPi;
  }
  return w >= kTwoPi ? 0.0 : w;
}

double wrap_pi(double angle) {
  const double w = wrap_two_pi(angle);
  return w > kPi ? w - kTwoPi : w;
}

GeoOrbit GeoOrbit::make(double inclination, double raan, double arg_lat0) {
  return GeoOrbit{inclination, wrap_two_pi(raan), wrap_two_pi(arg_lat0)};
}

CartesianState orbit_to_state(const GeoOrbit &orbit, double t, const PhysicalConstants &consts) {
  const double u = orbit.arg_lat0 + consts.mean_motion() * t;
  const double cu = std::cos(u), su = std::sin(u);
  const double co = std::cos(orbit.raan), so = std::sin(orbit.raan);
  const double ci = std::cos(orbit.inclination), si = std::sin(orbit.inclination);

  // In-plane unit vectors: P toward the ascending node, Q 90 degrees ahead.
  const Vector3 p{co, so, 0.0};
  const Vector3 q{-so * ci, co * ci, si};
  const double v = consts.circular_speed();
  return CartesianState{(p * cu + q * su) * consts.r_geo, (q * cu - p * su) * v, t};
}

Vector3 angular_momentum_dir(const GeoOrbit &orbit) {
  const double si = std::sin(orbit.inclination);
  return {std::sin(orbit.raan) * si, -std::cos(orbit.raan) * si, std::cos(orbit.inclination)};
}

double dihedral_angle(const GeoOrbit &a, const GeoOrbit &b) {
  const double c = std::sin(a.inclination) * std::sin(b.inclination) * std::cos(a.raan - b.raan) +
                   std::cos(a.inclination) * std::cos(b.inclination);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

std::pair<Vector3, Vector3> node_intersections(const Vector3 &normal_a, const Vector3 &normal_b,
                                               const PhysicalConstants &consts) {
  const Vector3 line = cross(normal_a, normal_b);
  if (angle_between(normal_a, normal_b) < kCoplanarTolerance) {
    throw DegeneratePlanes("orbit planes coincide; node line undefined");
  }
  const Vector3 m1 = normalized(line) * consts.r_geo;
  return {m1, -m1};
}

std::pair<Vector3, Vector3> node_intersections(const GeoOrbit &a, const GeoOrbit &b,
                                               const PhysicalConstants &consts) {
  return node_intersections(angular_momentum_dir(a), angular_momentum_dir(b), consts);
}

std::pair<Vector3, double> plane_change_impulse(const Vector3 &v_before, const Vector3 &node_dir,
                                                double alpha) {
  const Vector3 v_after = rotate_about(v_before, normalized(node_dir), alpha);
  const Vector3 impulse = (v_after - v_before) * 1000.0;
  return {impulse, norm(impulse)};
}

double coast_time_to_node(const CartesianState &state, const Vector3 &node, const Vector3 &orbit_normal,
                          const PhysicalConstants &consts) {
  double sweep =
      wrap_two_pi(std::atan2(dot(orbit_normal, cross(state.r, node)), dot(state.r, node)));
  if (sweep > kTwoPi - 1e-12) {
    sweep = 0.0;
  }
  return sweep / consts.mean_motion();
}

double phase_angle(const GeoOrbit &a, const GeoOrbit &b, double t, const PhysicalConstants &consts) {
  const double drift = consts.mean_motion() * t;
  return wrap_pi((a.raan + a.arg_lat0 + drift) - (b.raan + b.arg_lat0 + drift));
}

PhasingSolution phasing_solution(double theta, int k, const PhysicalConstants &consts) {
  if (k < 1) {
    throw InvalidRevolutions("phasing revolutions must be >= 1, got " + std::to_string(k));
  }
  const double span = kTwoPi * k + theta;
  PhasingSolution out;
  out.t_phase = span / kTwoPi * consts.t_geo;
  out.a_phase = consts.r_geo * std::pow(span / (kTwoPi * k), 2.0 / 3.0);
  out.dv = 2.0 * std::sqrt(consts.mu) *
           std::abs(std::sqrt(2.0 / consts.r_geo - 1.0 / out.a_phase) - std::sqrt(1.0 / consts.r_geo)) *
           1000.0;
  return out;
}

std::pair<Vector3, Vector3> phasing_impulses(const Vector3 &v_m, double theta, double dv) {
  const Vector3 entry = normalized(v_m) * (0.5 * dv * sign_of(theta));
  return {entry, -entry};
}

RendezvousSolution rendezvous_mixed(const CartesianState &servicer, const GeoOrbit &target, int k,
                                    const PhysicalConstants &consts) {
  if (k < 1) {
    throw InvalidRevolutions("phasing revolutions must be >= 1, got " + std::to_string(k));
  }
  const Vector3 h_s = normalized(cross(servicer.r, servicer.v));
  const Vector3 h_t = angular_momentum_dir(target);

  RendezvousSolution sol;
  sol.revolutions = k;
  sol.alpha = angle_between(h_s, h_t);

  Vector3 r_node = servicer.r;
  Vector3 v_node = servicer.v;
  Vector3 v_in_target_plane = servicer.v;
  if (sol.alpha >= kCoplanarTolerance) {
    const auto [m1, m2] = node_intersections(h_s, h_t, consts);
    sol.coast_time = std::min(coast_time_to_node(servicer, m1, h_s, consts),
                              coast_time_to_node(servicer, m2, h_s, consts));
    const double sweep = consts.mean_motion() * sol.coast_time;
    r_node = rotate_about(servicer.r, h_s, sweep);
    v_node = rotate_about(servicer.v, h_s, sweep);
    v_in_target_plane = normalized(cross(h_t, r_node)) * norm(v_node);
    sol.plane_change = (v_in_target_plane - v_node) * 1000.0;
  }

  sol.t1 = servicer.t + sol.coast_time;
  const CartesianState tgt = orbit_to_state(target, sol.t1, consts);
  // The servicer must end up where the target will be after 2 pi k + theta.
  sol.theta = std::atan2(dot(h_t, cross(tgt.r, r_node)), dot(tgt.r, r_node));

  const PhasingSolution phasing = phasing_solution(sol.theta, k, consts);
  const auto [entry, exit] = phasing_impulses(v_in_target_plane, sol.theta, phasing.dv);
  sol.phasing_kick = entry;
  sol.impulse1 = sol.plane_change + entry;
  sol.impulse2 = exit;
  sol.phase_time = phasing.t_phase;
  sol.t2 = sol.t1 + sol.phase_time;
  sol.total_time = sol.coast_time + sol.phase_time;
  sol.total_dv = norm(sol.impulse1) + norm(sol.impulse2);
  return sol;
}

CartesianState propagate(const CartesianState &state, double dt, const PhysicalConstants &consts) {
  const double mu = consts.mu;
  const double sqrt_mu = std::sqrt(mu);
  const double r0 = norm(state.r);
  const double vr0 = dot(state.r, state.v) / r0;
  const double alpha = 2.0 / r0 - dot(state.v, state.v) / mu; // 1/a

  // Universal Kepler equation F(chi) = 0; F is increasing since dF/dchi = r > 0.
  const auto kepler = [&](double chi, double t, double &df) {
    const double z = alpha * chi * chi;
    const double c = stumpff_c(z), s = stumpff_s(z);
    df = r0 * vr0 / sqrt_mu * chi * (1.0 - z * s) + (1.0 - alpha * r0) * chi * chi * c + r0;
    return r0 * vr0 / sqrt_mu * chi * chi * c + (1.0 - alpha * r0) * chi * chi * chi * s + r0 * chi - sqrt_mu * t;
  };

  double t = dt;
  double lo = 0.0, hi = 0.0, chi = 0.0, df = 0.0;
  if (alpha > 1e-12) {
    const double period = kTwoPi / (sqrt_mu * std::pow(alpha, 1.5));
    t = std::fmod(dt, period);
    if (t < 0.0) {
      t += period;
    }
    hi = kTwoPi / std::sqrt(alpha);
    chi = sqrt_mu * alpha * t;
  } else {
    chi = sqrt_mu * t / r0;
    double step = std::max(std::abs(chi), 1.0);
    lo = hi = chi;
    while (kepler(lo, t, df) > 0.0) {
      lo -= step;
      step *= 2.0;
    }
    step = std::max(std::abs(chi), 1.0);
    while (kepler(hi, t, df) < 0.0) {
      hi += step;
      step *= 2.0;
    }
  }
  chi = std::clamp(chi, lo, hi);

  for (int iter = 0; iter < 200; ++iter) {
    const double f = kepler(chi, t, df);
    if (f == 0.0) {
      break;
    }
    (f < 0.0 ? lo : hi) = chi;
    double next = chi - f / df;
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    const double step = std::abs(next - chi);
    chi = next;
    if (step <= 1e-15 * std::max(1.0, std::abs(chi)) || hi - lo <= 1e-15 * std::max(1.0, std::abs(chi))) {
      break;
    }
  }

  const double z = alpha * chi * chi;
  const double c = stumpff_c(z), s = stumpff_s(z);
  const double f = 1.0 - chi * chi / r0 * c;
  const double g = t - chi * chi * chi * s / sqrt_mu;
  const Vector3 r = state.r * f + state.v * g;
  const double rn = norm(r);
  const double fdot = sqrt_mu / (rn * r0) * (alpha * chi * chi * chi * s - chi);
  const double gdot = 1.0 - chi * chi / rn * c;
  return CartesianState{r, state.r * fdot + state.v * gdot, state.t + dt};
}

} // namespace geoplan::astro
