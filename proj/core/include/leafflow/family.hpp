#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leafflow/expr.hpp"
#include "leafflow/geometry.hpp"

namespace leafflow {

struct FamilyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Preset { Linear, Quadratic, Group };

// Either a named preset or a custom quadruple (U, V, P, Q), all functions
// of z alone, with P' = V and Q' = U exp(P).
struct FamilySpec {
  std::optional<Preset> preset;
  double eta = 1.0;  // Group only
  Expr u, v, p, q;   // Custom only

  static FamilySpec linear();
  static FamilySpec quadratic();
  static FamilySpec group(double eta);
  static FamilySpec custom(Expr u, Expr v, Expr p, Expr q);

  std::string name() const;
};

struct Interval {
  double lo = -10.0;
  double hi = 10.0;
};

enum class LeafTopology { TwoPlanes, Surface, ContainsSingular };

struct LeafRoot {
  double z = 0.0;
  bool multiple = false;
};

struct LeafReport {
  double c = 0.0;
  std::vector<LeafRoot> roots;
  int n_simple = 0;
  LeafTopology topology = LeafTopology::TwoPlanes;
  int genus = 0;      // Surface only
  int punctures = 0;  // Surface only
  std::vector<double> singular_z;
  bool boundary_warning = false;
};

enum class ZoneSignature { Lorentzian, Euclidean, Degenerate };

struct Zone {
  double z_lo = 0.0;
  double z_hi = 0.0;
  ZoneSignature signature = ZoneSignature::Degenerate;
};

struct ZoneReport {
  double c = 0.0;
  std::vector<double> red_z;
  std::vector<Zone> zones;
};

// One Poisson structure of the family together with its derived bundle:
// W = U + xy V, Casimir C = xy e^P + Q, degeneracy function f = 2xy + W^2.
class Family {
 public:
  const FamilySpec& spec() const { return spec_; }
  const Interval& z_interval() const { return z_interval_; }

  const Expr& u_expr() const { return u_; }
  const Expr& v_expr() const { return v_; }
  const Expr& p_expr() const { return p_; }
  const Expr& q_expr() const { return q_; }
  const Expr& w_expr() const { return w_; }
  const Expr& casimir_expr() const { return c_; }
  const Expr& f_expr() const { return f_; }

  double u(double z) const { return u_.eval({0, 0, z}); }
  double v(double z) const { return v_.eval({0, 0, z}); }
  double pp(double z) const { return p_.eval({0, 0, z}); }
  double q(double z) const { return q_.eval({0, 0, z}); }

  double casimir(const Point3& p) const { return c_.eval(p); }
  double f_value(const Point3& p) const { return f_.eval(p); }
  double w_value(const Point3& p) const { return w_.eval(p); }

  PoissonStructure poisson() const { return PoissonStructure(w_); }

  // Zeros of U on the working interval; z-values of the point-like leaves.
  std::vector<double> singular_leaves() const;

  // Topology of the level set C = c via the zeros of h_c(z) = Q(z) - c.
  LeafReport classify_level_set(double c) const;

  // f restricted to the leaf S_c as a function of z.
  double f_on_leaf(double c, double z) const;

  // Zeros of F_c and the signature of each zone in between.
  ZoneReport red_lines(double c) const;

  RegularityClass classify_point(const Point3& p, double eps_f = 1e-9,
                                 double eps_axis = 1e-9) const;

  friend Family build_family(const FamilySpec& spec, const Interval& zi);

 private:
  Family() = default;
  FamilySpec spec_;
  Interval z_interval_;
  Expr u_, v_, p_, q_;
  Expr w_, c_, f_;
};

// Validates P' = V and Q' = U exp(P) on 200 sample points before use.
Family build_family(const FamilySpec& spec, const Interval& zi = {});

}  // namespace leafflow
