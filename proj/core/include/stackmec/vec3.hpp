#ifndef STACKMEC_VEC3_HPP
#define STACKMEC_VEC3_HPP

#include <cmath>

namespace stackmec {

/// 3D Cartesian position in meters.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double distance_m(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace stackmec

#endif  // STACKMEC_VEC3_HPP
