#pragma once

#include <cmath>

namespace geoplan::astro::detail {

// Stumpff functions, with series near zero to avoid cancellation.
inline double stumpff_c(double z) {
  if (z > 1e-2) {
    return (1.0 - std::cos(std::sqrt(z))) / z;
  }
  if (z < -1e-2) {
    return (std::cosh(std::sqrt(-z)) - 1.0) / (-z);
  }
  return 1.0 / 2.0 - z / 24.0 + z * z / 720.0 - z * z * z / 40320.0 + z * z * z * z / 3628800.0;
}

inline double stumpff_s(double z) {
  if (z > 1e-2) {
    const double s = std::sqrt(z);
    return (s - std::sin(s)) / (s * s * s);
  }
  if (z < -1e-2) {
    const double s = std::sqrt(-z);
    return (std::sinh(s) - s) / (s * s * s);
  }
  return 1.0 / 6.0 - z / 120.0 + z * z / 5040.0 - z * z * z / 362880.0 + z * z * z * z / 39916800.0;
}

} // namespace geoplan::astro::detail
