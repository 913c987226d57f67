#include "leafflow/charts.hpp"

#include <cmath>

#include "leafflow/roots.hpp"

namespace leafflow {

LeafChart::LeafChart(const Family& family, const AmbientMetric& metric,
                     double c, double chart_margin, double eps_f)
    : family_(family), metric_(metric), c_(c), margin_(chart_margin),
      eps_f_(eps_f) {
  if (!metric.is_standard())
    throw ConfigurationError(
        "leaf charts are derived for the standard ambient metric only");
}

LeafPoint LeafChart::lift(ChartKind chart, double a, double b) const {
  LeafPoint lp;
  lp.c = c_;
  lp.chart = chart;
  lp.coord_a = a;
  lp.coord_b = b;
  switch (chart) {
    case ChartKind::XZ: {
      if (std::fabs(a) <= margin_)
        throw ChartError("XZ chart requires |x| > margin");
      const double y =
          std::exp(-family_.pp(b)) * (c_ - family_.q(b)) / a;
      lp.ambient = {a, y, b};
      break;
    }
    case ChartKind::YZ: {
      if (std::fabs(a) <= margin_)
        throw ChartError("YZ chart requires |y| > margin");
      const double x =
          std::exp(-family_.pp(b)) * (c_ - family_.q(b)) / a;
      lp.ambient = {x, a, b};
      break;
    }
    case ChartKind::XY: {
      const double x = a, y = b;
      auto h = [&](double z) {
        return x * y * std::exp(family_.pp(z)) + family_.q(z) - c_;
      };
      auto dh = [&](double z) {
        // dC/dz = e^P (U + xy V)
        return std::exp(family_.pp(z)) *
               (family_.u(z) + x * y * family_.v(z));
      };
      const Interval zi = family_.z_interval();
      std::vector<double> roots = bracketed_roots(h, dh, zi.lo, zi.hi);
      if (roots.size() != 1)
        throw UnsupportedChart(
            "XY chart: leaf equation has no unique z solution on the "
            "working interval (" +
            std::to_string(roots.size()) + " candidates)");
      lp.ambient = {x, y, roots.front()};
      if (std::fabs(family_.w_value(lp.ambient)) <= margin_)
        throw ChartError("XY chart requires |W| > margin");
      break;
    }
  }
  if (std::fabs(family_.casimir(lp.ambient) - c_) > 1e-10 * std::fmax(1.0, std::fabs(c_)))
    throw ChartError("lifted point misses the leaf C = c");
  return lp;
}

double LeafChart::f_value(const LeafPoint& lp) const {
  return family_.f_value(lp.ambient);
}

Mat2 LeafChart::induced_metric(const LeafPoint& lp) const {
  const Point3& p = lp.ambient;
  const double w = family_.w_value(p);
  switch (lp.chart) {
    case ChartKind::XZ:
      return {-2.0 * p.y / p.x, -w / p.x, -w / p.x, 1.0};
    case ChartKind::YZ:
      return {-2.0 * p.x / p.y, -w / p.y, -w / p.y, 1.0};
    case ChartKind::XY: {
      const double w2 = w * w;
      return {p.y * p.y / w2, 1.0 + p.x * p.y / w2, 1.0 + p.x * p.y / w2,
              p.x * p.x / w2};
    }
  }
  return {};
}

Mat2 LeafChart::symplectic_form(const LeafPoint& lp) const {
  const Point3& p = lp.ambient;
  switch (lp.chart) {
    case ChartKind::XZ:
      return {0.0, 1.0 / p.x, -1.0 / p.x, 0.0};
    case ChartKind::YZ:
      return {0.0, -1.0 / p.y, 1.0 / p.y, 0.0};
    case ChartKind::XY: {
      const double w = family_.w_value(p);
      return {0.0, -1.0 / w, 1.0 / w, 0.0};
    }
  }
  return {};
}

Vec2 LeafChart::kernel_direction(const LeafPoint& lp) const {
  const Point3& p = lp.ambient;
  const double w = family_.w_value(p);
  switch (lp.chart) {
    case ChartKind::XZ: return {p.x, w};
    case ChartKind::YZ: return {p.y, w};
    case ChartKind::XY: return {p.x, p.y};
  }
  return {};
}

Mat2 LeafChart::tau_db(const LeafPoint& lp) const {
  const double f = f_value(lp);
  if (std::fabs(f) <= eps_f_) throw RedZoneError(f, kernel_direction(lp));
  return induced_metric(lp) * (-1.0 / f);
}

Vec2 LeafChart::restrict_db_field(const Expr& G, const LeafPoint& lp) const {
  const Point3& p = lp.ambient;
  const Covec3 dG = G.gradient(p);
  const double w = family_.w_value(p);
  const double x = p.x, y = p.y;
  const double fx =
      -x * x * dG.x + (x * y + w * w) * dG.y - x * w * dG.z;
  const double fy =
      -y * y * dG.y + (x * y + w * w) * dG.x - y * w * dG.z;
  const double fz = -x * w * dG.x - y * w * dG.y + 2.0 * x * y * dG.z;
  switch (lp.chart) {
    case ChartKind::XZ: return {fx, fz};
    case ChartKind::YZ: return {fy, fz};
    case ChartKind::XY: return {fx, fy};
  }
  return {};
}

Vec2 LeafChart::chart_differential(const Expr& G, const LeafPoint& lp) const {
  const Point3& p = lp.ambient;
  const Covec3 dG = G.gradient(p);
  const double w = family_.w_value(p);
  switch (lp.chart) {
    case ChartKind::XZ:
      // dy = -(y dx + W dz)/x on the leaf
      return {dG.x - dG.y * p.y / p.x, dG.z - dG.y * w / p.x};
    case ChartKind::YZ:
      return {dG.y - dG.x * p.x / p.y, dG.z - dG.x * w / p.y};
    case ChartKind::XY:
      // dz = -(y dx + x dy)/W on the leaf
      return {dG.x - dG.z * p.y / w, dG.y - dG.z * p.x / w};
  }
  return {};
}

double LeafChart::gradient_identity_residual(const Expr& G,
                                             const LeafPoint& lp) const {
  const Mat2 tau = tau_db(lp);
  const Vec2 v = restrict_db_field(G, lp);
  const Vec2 dG = chart_differential(G, lp);
  const Vec2 tv = tau.apply(v);  // symmetric, row/column agnostic
  return std::fmax(std::fabs(tv.a + dG.a), std::fabs(tv.b + dG.b));
}

Signature LeafChart::signature_of(const LeafPoint& lp) const {
  const Mat2 g = induced_metric(lp);
  const auto ev = sym2_eigenvalues(g);
  const double scale = std::fmax(1.0, g.max_abs());
  if (std::fmin(std::fabs(ev[0]), std::fabs(ev[1])) <= eps_f_ * scale)
    return Signature::Degenerate;
  if (ev[0] > 0.0 && ev[1] > 0.0) return Signature::Euclidean;
  return Signature::Lorentzian;
}

}  // namespace leafflow
