#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace leafflow {

struct Point3 {
  double x = 0.0, y = 0.0, z = 0.0;

  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double max_abs() const {
    return std::fmax(std::fabs(x), std::fmax(std::fabs(y), std::fabs(z)));
  }
};

// Covectors get their own type so that musical maps stay explicit.
struct Covec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  double pair(const Vec3& v) const { return x * v.x + y * v.y + z * v.z; }
};

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

// 3x3 real matrix, row-major.
struct Mat3 {
  std::array<double, 9> a{};

  double& operator()(int i, int j) { return a[3 * i + j]; }
  double operator()(int i, int j) const { return a[3 * i + j]; }

  static Mat3 zero() { return {}; }
  static Mat3 identity();

  Mat3 operator+(const Mat3& o) const;
  Mat3 operator-(const Mat3& o) const;
  Mat3 operator*(double s) const;
  Mat3 operator*(const Mat3& o) const;
  Mat3 transposed() const;

  Vec3 apply(const Vec3& v) const;
  Vec3 apply(const Covec3& v) const;

  double det() const;
  Mat3 inverse() const;  // undefined for singular input; check det first
  double frobenius() const;
  double max_abs() const;
  bool symmetric(double tol = 0.0) const;
};

// Rank by scaled Gaussian elimination, pivot threshold 1e-10 * max|entry|.
int rank3(const Mat3& m);

struct Vec2 {
  double a = 0.0, b = 0.0;

  double& operator[](int i) { return i == 0 ? a : b; }
  double operator[](int i) const { return i == 0 ? a : b; }
};

struct Mat2 {
  // [[a, b], [c, d]]
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  double operator()(int i, int j) const {
    return i == 0 ? (j == 0 ? a : b) : (j == 0 ? c : d);
  }

  Mat2 operator*(double s) const { return {a * s, b * s, c * s, d * s}; }
  Vec2 apply(const Vec2& v) const {
    return {a * v.a + b * v.b, c * v.a + d * v.b};
  }
  double det() const { return a * d - b * c; }
  double max_abs() const {
    return std::fmax(std::fmax(std::fabs(a), std::fabs(b)),
                     std::fmax(std::fabs(c), std::fabs(d)));
  }
};

// Eigenvalues of a symmetric 2x2 matrix, ascending.
std::array<double, 2> sym2_eigenvalues(const Mat2& m);

}  // namespace leafflow
