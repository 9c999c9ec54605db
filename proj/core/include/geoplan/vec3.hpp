#pragma once

#include <cmath>

namespace geoplan {

struct Vector3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vector3 &operator+=(const Vector3 &o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vector3 &operator-=(const Vector3 &o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vector3 &operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr Vector3 operator+(Vector3 a, const Vector3 &b) { return a += b; }
  friend constexpr Vector3 operator-(Vector3 a, const Vector3 &b) { return a -= b; }
  friend constexpr Vector3 operator-(const Vector3 &a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vector3 operator*(Vector3 a, double s) { return a *= s; }
  friend constexpr Vector3 operator*(double s, Vector3 a) { return a *= s; }
  friend constexpr Vector3 operator/(const Vector3 &a, double s) { return {a.x / s, a.y / s, a.z / s}; }
  friend constexpr bool operator==(const Vector3 &, const Vector3 &) = default;
};

constexpr double dot(const Vector3 &a, const Vector3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vector3 cross(const Vector3 &a, const Vector3 &b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vector3 &a) { return std::sqrt(dot(a, a)); }

inline Vector3 normalized(const Vector3 &a) { return a / norm(a); }

// Angle between a and b in [0, pi], robust near 0 and pi.
inline double angle_between(const Vector3 &a, const Vector3 &b) {
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

// Rodrigues rotation of v about the unit axis k by angle.
inline Vector3 rotate_about(const Vector3 &v, const Vector3 &k, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return v * c + cross(k, v) * s + k * (dot(k, v) * (1.0 - c));
}

} // namespace geoplan
