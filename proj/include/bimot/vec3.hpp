#pragma once

#include <cmath>
#include <complex>

namespace bimot {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

  constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const { return *this / norm(); }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Complex 3-vector for polarization states (Jones vector in 3D).
struct CVec3 {
  std::complex<double> x{0.0, 0.0}, y{0.0, 0.0}, z{0.0, 0.0};

  std::complex<double> dot_conj(const CVec3& o) const {  // <this|o>
    return std::conj(x) * o.x + std::conj(y) * o.y + std::conj(z) * o.z;
  }
  std::complex<double> dot_conj(const Vec3& o) const {
    return std::conj(x) * o.x + std::conj(y) * o.y + std::conj(z) * o.z;
  }
  double squared_norm() const { return std::norm(x) + std::norm(y) + std::norm(z); }
};

}  // namespace bimot
