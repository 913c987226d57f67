#include "leafflow/linalg.hpp"

#include <algorithm>

namespace leafflow {

Mat3 Mat3::identity() {
  Mat3 m;
  m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
  return m;
}

Mat3 Mat3::operator+(const Mat3& o) const {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.a[i] = a[i] + o.a[i];
  return r;
}

Mat3 Mat3::operator-(const Mat3& o) const {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.a[i] = a[i] - o.a[i];
  return r;
}

Mat3 Mat3::operator*(double s) const {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.a[i] = a[i] * s;
  return r;
}

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
      r(i, j) = s;
    }
  return r;
}

Mat3 Mat3::transposed() const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
  return r;
}

Vec3 Mat3::apply(const Vec3& v) const {
  Vec3 r;
  for (int i = 0; i < 3; ++i)
    r[i] = (*this)(i, 0) * v.x + (*this)(i, 1) * v.y + (*this)(i, 2) * v.z;
  return r;
}

Vec3 Mat3::apply(const Covec3& v) const {
  Vec3 r;
  for (int i = 0; i < 3; ++i)
    r[i] = (*this)(i, 0) * v.x + (*this)(i, 1) * v.y + (*this)(i, 2) * v.z;
  return r;
}

double Mat3::det() const {
  const Mat3& m = *this;
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Mat3 Mat3::inverse() const {
  const Mat3& m = *this;
  const double d = det();
  Mat3 r;
  r(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) / d;
  r(0, 1) = (m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2)) / d;
  r(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) / d;
  r(1, 0) = (m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2)) / d;
  r(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) / d;
  r(1, 2) = (m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2)) / d;
  r(2, 0) = (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)) / d;
  r(2, 1) = (m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1)) / d;
  r(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) / d;
  return r;
}

double Mat3::frobenius() const {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

double Mat3::max_abs() const {
  double s = 0.0;
  for (double v : a) s = std::fmax(s, std::fabs(v));
  return s;
}

bool Mat3::symmetric(double tol) const {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::fabs((*this)(i, j) - (*this)(j, i)) > tol) return false;
  return true;
}

int rank3(const Mat3& m) {
  double w[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) w[i][j] = m(i, j);
  const double thresh = 1e-10 * std::fmax(m.max_abs(), 1e-300);

  int rank = 0;
  int row = 0;
  for (int col = 0; col < 3 && row < 3; ++col) {
    int piv = -1;
    double best = thresh;
    for (int i = row; i < 3; ++i) {
      if (std::fabs(w[i][col]) > best) {
        best = std::fabs(w[i][col]);
        piv = i;
      }
    }
    if (piv < 0) continue;
    std::swap(w[piv], w[row]);
    for (int i = row + 1; i < 3; ++i) {
      const double fac = w[i][col] / w[row][col];
      for (int j = col; j < 3; ++j) w[i][j] -= fac * w[row][j];
    }
    ++row;
    ++rank;
  }
  return rank;
}

std::array<double, 2> sym2_eigenvalues(const Mat2& m) {
  const double tr = m.a + m.d;
  const double off = 0.5 * (m.b + m.c);
  const double disc = std::sqrt(0.25 * (m.a - m.d) * (m.a - m.d) + off * off);
  return {0.5 * tr - disc, 0.5 * tr + disc};
}

}  // namespace leafflow
