#pragma once

#include <array>
#include <cmath>

namespace ellshell {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3() = default;
  Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& u, const Vec3& v) {
  return u.x * v.x + u.y * v.y + u.z * v.z;
}

inline Vec3 cross(const Vec3& u, const Vec3& v) {
  return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) { return v / norm(v); }

// Row-major 3x3 matrix; just enough linear algebra for metric checks.
struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  double& operator()(int i, int j) { return m[i][j]; }
  double operator()(int i, int j) const { return m[i][j]; }

  static Mat3 identity() {
    Mat3 r;
    r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
    return r;
  }

  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
        r(i, j) = s;
      }
    return r;
  }

  Vec3 operator*(const Vec3& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }

  double det() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }

  Mat3 inverse() const {
    const double d = det();
    Mat3 r;
    r(0, 0) = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / d;
    r(0, 1) = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / d;
    r(0, 2) = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / d;
    r(1, 0) = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / d;
    r(1, 1) = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / d;
    r(1, 2) = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / d;
    r(2, 0) = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / d;
    r(2, 1) = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / d;
    r(2, 2) = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / d;
    return r;
  }

  double max_abs_diff(const Mat3& o) const {
    double r = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r = std::max(r, std::fabs(m[i][j] - o.m[i][j]));
    return r;
  }
};

}  // namespace ellshell
