#pragma once

#include <stdexcept>

#include "leafflow/expr.hpp"
#include "leafflow/linalg.hpp"

namespace leafflow {

struct ConfigurationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Constant symmetric ambient metric on R^3. The default is
// g = 2 dx dy + dz^2, i.e. the (rescaled) sl2 Killing metric written in
// the (x, y, z) coordinates; signature (+,+,-).
class AmbientMetric {
 public:
  static AmbientMetric standard();
  static AmbientMetric custom(const Mat3& g);

  const Mat3& matrix() const { return g_; }
  const Mat3& inverse() const { return g_inv_; }
  bool is_standard() const { return standard_; }

  Covec3 flat(const Vec3& v) const;   // v -> g v
  Vec3 sharp(const Covec3& a) const;  // a -> g^{-1} a

 private:
  AmbientMetric(const Mat3& g, bool standard);
  Mat3 g_;
  Mat3 g_inv_;
  bool standard_;
};

// Poisson structure of the two-function family: the bivector matrix is
// determined by the single coefficient W(x,y,z) together with the fixed
// entries -x and y.
class PoissonStructure {
 public:
  explicit PoissonStructure(Expr w) : w_(std::move(w)) {}

  const Expr& w() const { return w_; }
  double w_value(const Point3& p) const { return w_.eval(p); }

  // Antisymmetric matrix with [Pi]_{12} = W, [Pi]_{13} = -x, [Pi]_{23} = y.
  Mat3 matrix(const Point3& p) const;

  // Hamiltonian vector field of the coordinate covector alpha,
  // oriented so that sharp_pi(dx) = W d_y - x d_z.
  Vec3 sharp(const Point3& p, const Covec3& alpha) const;

 private:
  Expr w_;
};

Mat3 poisson_matrix(const PoissonStructure& pi, const Point3& p);

// [M] = -[Pi][g][Pi]; for the standard metric the closed form
// [[x^2, -xy-W^2, xW], [-xy-W^2, y^2, yW], [xW, yW, -2xy]] is used.
Mat3 metriplectic_matrix(const PoissonStructure& pi, const AmbientMetric& g,
                         const Point3& p);

Vec3 sharp_pi(const PoissonStructure& pi, const Point3& p, const Covec3& a);
Covec3 flat_g(const AmbientMetric& g, const Vec3& v);
Vec3 sharp_g(const AmbientMetric& g, const Covec3& a);

Vec3 hamiltonian_field(const PoissonStructure& pi, const Expr& G,
                       const Point3& p);

// -[M] dG; identically equal to sharp_pi(flat_g(X_G)).
Vec3 double_bracket_field(const PoissonStructure& pi, const AmbientMetric& g,
                          const Expr& G, const Point3& p);

// Frobenius norm of [M] + [Pi][g][Pi]; zero up to rounding.
double verify_chain_identity(const PoissonStructure& pi,
                             const AmbientMetric& g, const Point3& p);

enum class RegularityClass { MRegular, MSingular, SingularLeaf };

}  // namespace leafflow
