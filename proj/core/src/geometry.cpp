#include "leafflow/geometry.hpp"

#include <cmath>

namespace leafflow {

AmbientMetric::AmbientMetric(const Mat3& g, bool standard)
    : g_(g), standard_(standard) {
  if (!g.symmetric(0.0)) throw ConfigurationError("ambient metric must be symmetric");
  if (std::fabs(g.det()) < 1e-300)
    throw ConfigurationError("ambient metric must be invertible");
  g_inv_ = g.inverse();
}

AmbientMetric AmbientMetric::standard() {
  Mat3 g;
  g(0, 1) = g(1, 0) = 1.0;
  g(2, 2) = 1.0;
  return AmbientMetric(g, true);
}

AmbientMetric AmbientMetric::custom(const Mat3& g) {
  return AmbientMetric(g, false);
}

Covec3 AmbientMetric::flat(const Vec3& v) const {
  const Vec3 r = g_.apply(v);
  return {r.x, r.y, r.z};
}

Vec3 AmbientMetric::sharp(const Covec3& a) const { return g_inv_.apply(a); }

Mat3 PoissonStructure::matrix(const Point3& p) const {
  const double w = w_.eval(p);
  Mat3 m;
  m(0, 1) = w;
  m(1, 0) = -w;
  m(0, 2) = -p.x;
  m(2, 0) = p.x;
  m(1, 2) = p.y;
  m(2, 1) = -p.y;
  return m;
}

// The orientation is fixed by the fundamental brackets: applying the
// covector to the rows of [Pi] (equivalently [Pi]^T alpha) gives
// sharp_pi(dz) = x d_x - y d_y.
Vec3 PoissonStructure::sharp(const Point3& p, const Covec3& alpha) const {
  return matrix(p).transposed().apply(alpha);
}

Mat3 poisson_matrix(const PoissonStructure& pi, const Point3& p) {
  return pi.matrix(p);
}

Mat3 metriplectic_matrix(const PoissonStructure& pi, const AmbientMetric& g,
                         const Point3& p) {
  if (g.is_standard()) {
    const double w = pi.w_value(p);
    const double x = p.x, y = p.y;
    Mat3 m;
    m(0, 0) = x * x;
    m(0, 1) = m(1, 0) = -x * y - w * w;
    m(0, 2) = m(2, 0) = x * w;
    m(1, 1) = y * y;
    m(1, 2) = m(2, 1) = y * w;
    m(2, 2) = -2.0 * x * y;
    return m;
  }
  const Mat3 P = pi.matrix(p);
  return (P * g.matrix() * P) * -1.0;
}

Vec3 sharp_pi(const PoissonStructure& pi, const Point3& p, const Covec3& a) {
  return pi.sharp(p, a);
}

Covec3 flat_g(const AmbientMetric& g, const Vec3& v) { return g.flat(v); }

Vec3 sharp_g(const AmbientMetric& g, const Covec3& a) { return g.sharp(a); }

Vec3 hamiltonian_field(const PoissonStructure& pi, const Expr& G,
                       const Point3& p) {
  return pi.sharp(p, G.gradient(p));
}

Vec3 double_bracket_field(const PoissonStructure& pi, const AmbientMetric& g,
                          const Expr& G, const Point3& p) {
  const Covec3 dG = G.gradient(p);
  return metriplectic_matrix(pi, g, p).apply(dG) * -1.0;
}

double verify_chain_identity(const PoissonStructure& pi,
                             const AmbientMetric& g, const Point3& p) {
  const Mat3 P = pi.matrix(p);
  const Mat3 M = metriplectic_matrix(pi, g, p);
  return (M + P * g.matrix() * P).frobenius();
}

}  // namespace leafflow
