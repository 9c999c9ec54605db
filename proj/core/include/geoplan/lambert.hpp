#pragma once

#include "geoplan/astro.hpp"

namespace geoplan::astro {

struct LambertSolution {
  Vector3 v1; // km/s at r1
  Vector3 v2; // km/s at r2
};

/// Zero-revolution Lambert problem in universal variables.
///
/// With prograde set, the transfer sweeps in the direction of positive
/// angular momentum about +z, so the transfer angle may exceed pi. Throws
/// CollinearGeometry for transfer angles within 1e-6 rad of pi (or of zero)
/// and NoConvergence when the root search stalls.
LambertSolution lambert_solve(const Vector3 &r1, const Vector3 &r2, double tof, bool prograde,
                              const PhysicalConstants &consts);

/// Two-impulse rendezvous cost (m/s) from the servicer state to the target
/// position tof seconds later.
double lambert_rendezvous_cost(const CartesianState &servicer, const GeoOrbit &target, double tof,
                               const PhysicalConstants &consts);

} // namespace geoplan::astro
