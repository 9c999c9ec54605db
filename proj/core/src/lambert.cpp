#include "geoplan/lambert.hpp"

#include <algorithm>
#include <cmath>

#include "geoplan/errors.hpp"
#include "stumpff.hpp"

namespace geoplan::astro {

namespace {

using detail::stumpff_c;
using detail::stumpff_s;

// Time-of-flight residual for a given universal-variable parameter z.
struct TofFunction {
  double r1, r2, a_const, sqrt_mu, tof;

  double y(double z) const {
    const double c = stumpff_c(z);
    return r1 + r2 + a_const * (z * stumpff_s(z) - 1.0) / std::sqrt(c);
  }

  // Returns false when y(z) < 0 (no real solution at this z).
  bool residual(double z, double &f, double &df) const {
    const double c = stumpff_c(z), s = stumpff_s(z);
    const double yz = r1 + r2 + a_const * (z * s - 1.0) / std::sqrt(c);
    if (yz < 0.0) {
      return false;
    }
    const double ratio = yz / c;
    f = ratio * std::sqrt(ratio) * s + a_const * std::sqrt(yz) - sqrt_mu * tof;
    if (std::abs(z) > 1e-6) {
      df = ratio * std::sqrt(ratio) * ((1.0 / (2.0 * z)) * (c - 1.5 * s / c) + 0.75 * s * s / c) +
           0.125 * a_const * (3.0 * s / c * std::sqrt(yz) + a_const * std::sqrt(c / yz));
    } else {
      df = std::sqrt(2.0) / 40.0 * yz * std::sqrt(yz) +
           0.125 * a_const * (std::sqrt(yz) + a_const * std::sqrt(0.5 / yz));
    }
    return true;
  }
};

} // namespace

LambertSolution lambert_solve(const Vector3 &r1, const Vector3 &r2, double tof, bool prograde,
                              const PhysicalConstants &consts) {
  if (!(tof > 0.0)) {
    throw NoConvergence("Lambert time of flight must be positive");
  }
  const double r1n = norm(r1), r2n = norm(r2);
  const double short_angle = angle_between(r1, r2);
  const bool positive_sweep = cross(r1, r2).z >= 0.0;
  const double sweep = (positive_sweep == prograde) ? short_angle : kTwoPi - short_angle;
  if (std::abs(sweep - kPi) < 1e-6 || sweep < 1e-6 || sweep > kTwoPi - 1e-6) {
    throw CollinearGeometry("Lambert transfer angle is singular");
  }

  const double a_const = std::sin(sweep) * std::sqrt(r1n * r2n / (1.0 - std::cos(sweep)));
  const TofFunction fn{r1n, r2n, a_const, std::sqrt(consts.mu), tof};

  // Zero-revolution branch: tof increases monotonically with z on (-inf, 4 pi^2).
  double hi = 4.0 * kPi * kPi * (1.0 - 1e-12);
  double lo = -4.0 * kPi * kPi;
  double f = 0.0, df = 0.0;
  for (int i = 0; i < 60 && fn.residual(lo, f, df) && f > 0.0; ++i) {
    lo *= 2.0;
  }
  if (fn.residual(lo, f, df) && f > 0.0) {
    throw NoConvergence("Lambert: could not bracket the time of flight");
  }

  double z = 0.5 * (lo + hi);
  bool converged = false;
  for (int iter = 0; iter < 300; ++iter) {
    if (!fn.residual(z, f, df)) {
      lo = z;
      z = 0.5 * (lo + hi);
      continue;
    }
    if (std::abs(f) <= 1e-13 * fn.sqrt_mu * tof) {
      converged = true;
      break;
    }
    if (f < 0.0) {
      lo = z;
    } else {
      hi = z;
    }
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(z))) {
      converged = true;
      break;
    }
    double next = z - f / df;
    if (!(df > 0.0) || !(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    z = next;
  }
  if (!converged) {
    throw NoConvergence("Lambert: root search did not converge");
  }

  const double yz = fn.y(z);
  const double f_lag = 1.0 - yz / r1n;
  const double g_lag = a_const * std::sqrt(yz / consts.mu);
  const double gdot = 1.0 - yz / r2n;
  return LambertSolution{(r2 - r1 * f_lag) / g_lag, (r2 * gdot - r1) / g_lag};
}

double lambert_rendezvous_cost(const CartesianState &servicer, const GeoOrbit &target, double tof,
                               const PhysicalConstants &consts) {
  const CartesianState arrival = orbit_to_state(target, servicer.t + tof, consts);
  const LambertSolution sol = lambert_solve(servicer.r, arrival.r, tof, true, consts);
  return (norm(sol.v1 - servicer.v) + norm(arrival.v - sol.v2)) * 1000.0;
}

} // namespace geoplan::astro
