#pragma once

#include "leafflow/family.hpp"

namespace leafflow {

// 2x2 real matrix, row-major.
struct Mat2x2 {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  Mat2x2 operator+(const Mat2x2& o) const {
    return {a + o.a, b + o.b, c + o.c, d + o.d};
  }
  Mat2x2 operator*(double s) const { return {a * s, b * s, c * s, d * s}; }
  Mat2x2 mul(const Mat2x2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
            c * o.b + d * o.d};
  }
  Mat2x2 commutator(const Mat2x2& o) const {
    const Mat2x2 ab = mul(o);
    const Mat2x2 ba = o.mul(*this);
    return {ab.a - ba.a, ab.b - ba.b, ab.c - ba.c, ab.d - ba.d};
  }
  double trace_prod(const Mat2x2& o) const {
    return a * o.a + b * o.c + c * o.b + d * o.d;
  }
};

// Traceless 2x2 matrix as coordinates: L = (y/sqrt2) e1 + (x/sqrt2) e2
// + (z/2) e3 with e1 upper-triangular, e2 lower-triangular, e3 diagonal.
Mat2x2 sl2_embed(const Point3& p);
Point3 sl2_project(const Mat2x2& m);

// Residual between the coordinate-level double bracket field and the
// matrix-level [L, [L, grad G(L)]] computed with the half-Killing metric
// 2 tr(AB). Linear preset and standard metric only.
double sl2_oracle_compare(const Family& family, const AmbientMetric& g,
                          const Expr& G, const Point3& p);

}  // namespace leafflow
