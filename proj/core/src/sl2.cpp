#include "leafflow/sl2.hpp"

#include <cmath>

#include "leafflow/geometry.hpp"

namespace leafflow {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

Mat2x2 sl2_embed(const Point3& p) {
  // (y/sqrt2) e1 + (x/sqrt2) e2 + (z/2) e3
  return {p.z / 2.0, p.y / kSqrt2, p.x / kSqrt2, -p.z / 2.0};
}

Point3 sl2_project(const Mat2x2& m) {
  return {kSqrt2 * m.c, kSqrt2 * m.b, 2.0 * m.a};
}

double sl2_oracle_compare(const Family& family, const AmbientMetric& g,
                          const Expr& G, const Point3& p) {
  if (family.spec().preset != Preset::Linear)
    throw ConfigurationError("sl2 oracle requires the linear preset");
  if (!g.is_standard())
    throw ConfigurationError("sl2 oracle requires the standard metric");

  const Mat2x2 L = sl2_embed(p);

  // Gradient of G(L) w.r.t. the metric 2 tr(AB): in the rescaled basis
  // this is the x<->y swap of the coordinate gradient.
  const Covec3 dG = G.gradient(p);
  const Mat2x2 grad = sl2_embed({dG.y, dG.x, dG.z});

  const Mat2x2 bracket = L.commutator(L.commutator(grad));
  const Point3 matrix_side = sl2_project(bracket);

  const PoissonStructure pi = family.poisson();
  const Vec3 coord_side = double_bracket_field(pi, g, G, p);

  return std::fmax(
      std::fabs(matrix_side.x - coord_side.x),
      std::fmax(std::fabs(matrix_side.y - coord_side.y),
                std::fabs(matrix_side.z - coord_side.z)));
}

}  // namespace leafflow
