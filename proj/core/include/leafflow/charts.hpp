#pragma once

#include "leafflow/family.hpp"
#include "leafflow/linalg.hpp"

namespace leafflow {

struct ChartError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedChart : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a double-bracket-metric quantity is requested on or too
// close to a red line; carries f^S and the degenerate direction in chart
// coordinates.
struct RedZoneError : std::runtime_error {
  RedZoneError(double f_value, Vec2 kernel_dir)
      : std::runtime_error("point lies in the red zone (f = " +
                           std::to_string(f_value) + ")"),
        f_value(f_value),
        kernel_dir(kernel_dir) {}
  double f_value;
  Vec2 kernel_dir;
};

enum class ChartKind { XZ, YZ, XY };

enum class Signature { Euclidean, Lorentzian, Degenerate };

struct LeafPoint {
  double c = 0.0;
  ChartKind chart = ChartKind::XZ;
  double coord_a = 0.0;  // x (XZ), y (YZ), x (XY)
  double coord_b = 0.0;  // z (XZ), z (YZ), y (XY)
  Point3 ambient;
};

// Chart-level structures on the fixed leaf S_c.
class LeafChart {
 public:
  LeafChart(const Family& family, const AmbientMetric& metric, double c,
            double chart_margin = 1e-8, double eps_f = 1e-9);

  double c() const { return c_; }

  // XZ: (a, b) = (x, z), y = e^{-P}(c - Q)/x. YZ symmetric. XY solves
  // C(x, y, .) = c for z on the working interval and requires the
  // solution to be unique there.
  LeafPoint lift(ChartKind chart, double a, double b) const;

  Mat2 induced_metric(const LeafPoint& lp) const;
  Mat2 symplectic_form(const LeafPoint& lp) const;

  // -(1/f^S) g_ind; throws RedZoneError when |f^S| <= eps_f.
  Mat2 tau_db(const LeafPoint& lp) const;

  // Chart components of the ambient double bracket field.
  Vec2 restrict_db_field(const Expr& G, const LeafPoint& lp) const;

  // sup-norm of tau_db(field, .) + d(G|_S); < 1e-8 in exact arithmetic.
  double gradient_identity_residual(const Expr& G, const LeafPoint& lp) const;

  Signature signature_of(const LeafPoint& lp) const;

  double f_value(const LeafPoint& lp) const;

  // d(G|_S) by substituting the on-leaf differential relation into the
  // ambient dG (no finite differencing).
  Vec2 chart_differential(const Expr& G, const LeafPoint& lp) const;

  Vec2 kernel_direction(const LeafPoint& lp) const;

 private:
  const Family& family_;
  const AmbientMetric& metric_;
  double c_;
  double margin_;
  double eps_f_;
};

}  // namespace leafflow
