#include "leafflow/family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "leafflow/roots.hpp"

namespace leafflow {

FamilySpec FamilySpec::linear() {
  FamilySpec s;
  s.preset = Preset::Linear;
  return s;
}

FamilySpec FamilySpec::quadratic() {
  FamilySpec s;
  s.preset = Preset::Quadratic;
  return s;
}

FamilySpec FamilySpec::group(double eta) {
  if (eta == 0.0) throw FamilyError("group preset requires eta != 0");
  FamilySpec s;
  s.preset = Preset::Group;
  s.eta = eta;
  return s;
}

FamilySpec FamilySpec::custom(Expr u, Expr v, Expr p, Expr q) {
  for (const Expr* e : {&u, &v, &p, &q}) {
    if (!e->valid()) throw FamilyError("custom spec: missing expression");
    if (e->uses_var(0) || e->uses_var(1))
      throw FamilyError("custom spec: U, V, P, Q must depend on z only");
  }
  FamilySpec s;
  s.u = std::move(u);
  s.v = std::move(v);
  s.p = std::move(p);
  s.q = std::move(q);
  return s;
}

std::string FamilySpec::name() const {
  if (!preset) return "custom";
  switch (*preset) {
    case Preset::Linear: return "linear";
    case Preset::Quadratic: return "quadratic";
    case Preset::Group: {
      std::ostringstream os;
      os << "group(eta=" << eta << ")";
      return os.str();
    }
  }
  return "?";
}

Family build_family(const FamilySpec& spec, const Interval& zi) {
  if (zi.lo >= zi.hi) throw FamilyError("empty z interval");
  Family fam;
  fam.spec_ = spec;
  fam.z_interval_ = zi;

  const Expr z = Expr::z();
  if (spec.preset) {
    switch (*spec.preset) {
      case Preset::Linear:
        fam.u_ = z;
        fam.v_ = Expr::constant(0.0);
        fam.p_ = Expr::constant(0.0);
        fam.q_ = z.pow(2) / 2.0;
        break;
      case Preset::Quadratic:
        fam.u_ = 3.0 * z.pow(2) - 1.0;
        fam.v_ = Expr::constant(0.0);
        fam.p_ = Expr::constant(0.0);
        fam.q_ = z.pow(3) - z;
        break;
      case Preset::Group: {
        const double eta = spec.eta;
        fam.u_ = (1.0 - exp(-2.0 * eta * z)) / (2.0 * eta);
        fam.v_ = Expr::constant(eta);
        fam.p_ = eta * z;
        fam.q_ = (cosh(eta * z) - 1.0) / (eta * eta);
        break;
      }
    }
  } else {
    fam.u_ = spec.u;
    fam.v_ = spec.v;
    fam.p_ = spec.p;
    fam.q_ = spec.q;
  }

  // consistency check: P' = V and Q' = U e^P at 200 samples
  double worst = 0.0;
  double worst_z = zi.lo;
  for (int i = 0; i < 200; ++i) {
    const double zz = zi.lo + (zi.hi - zi.lo) * (i + 0.5) / 200.0;
    const Point3 pt{0, 0, zz};
    const double dp = fam.p_.eval_dual(pt).dz;
    const double dq = fam.q_.eval_dual(pt).dz;
    const double v = fam.v_.eval(pt);
    const double uep = fam.u_.eval(pt) * std::exp(fam.p_.eval(pt));
    const double r1 = std::fabs(dp - v) / std::fmax(1.0, std::fabs(v));
    const double r2 = std::fabs(dq - uep) / std::fmax(1.0, std::fabs(uep));
    const double r = std::fmax(r1, r2);
    if (r > worst) {
      worst = r;
      worst_z = zz;
    }
  }
  if (worst > 1e-8) {
    std::ostringstream os;
    os << "inconsistent family spec: max residual " << worst << " at z = "
       << worst_z << " (need P' = V and Q' = U*exp(P))";
    throw FamilyError(os.str());
  }

  const Expr x = Expr::x();
  const Expr y = Expr::y();
  fam.w_ = fam.u_ + x * y * fam.v_;
  fam.c_ = x * y * exp(fam.p_) + fam.q_;
  fam.f_ = 2.0 * x * y + fam.w_.pow(2);
  return fam;
}

std::vector<double> Family::singular_leaves() const {
  auto f = [&](double z) { return u(z); };
  auto df = [&](double z) { return u_.eval_dual({0, 0, z}).dz; };
  std::vector<double> roots =
      bracketed_roots(f, df, z_interval_.lo, z_interval_.hi);
  // also catch even-order zeros of U
  for (double z : tangent_roots(f, df, z_interval_.lo, z_interval_.hi, 1e-12))
    roots.push_back(z);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) {
                            return std::fabs(a - b) < 1e-9;
                          }),
              roots.end());
  // Newton polish to |U| < 1e-12 where the derivative allows
  for (double& z : roots) {
    for (int it = 0; it < 5 && std::fabs(u(z)) > 1e-12; ++it) {
      const double d = u_.eval_dual({0, 0, z}).dz;
      if (d == 0.0) break;
      z -= u(z) / d;
    }
  }
  return roots;
}

LeafReport Family::classify_level_set(double c) const {
  LeafReport rep;
  rep.c = c;
  auto h = [&](double z) { return q(z) - c; };
  auto dh = [&](double z) { return q_.eval_dual({0, 0, z}).dz; };
  const double lo = z_interval_.lo, hi = z_interval_.hi;
  const double cell = (hi - lo) / 10000.0;

  std::vector<double> simple = bracketed_roots(h, dh, lo, hi);
  std::vector<double> multi = tangent_roots(h, dh, lo, hi, 1e-8);

  for (double z : simple) {
    const bool is_multi = std::fabs(dh(z)) < 1e-8;
    rep.roots.push_back({z, is_multi});
    if (z - lo < cell || hi - z < cell) rep.boundary_warning = true;
  }
  for (double z : multi) {
    const bool seen =
        std::any_of(rep.roots.begin(), rep.roots.end(),
                    [&](const LeafRoot& r) { return std::fabs(r.z - z) < 1e-6; });
    if (!seen) rep.roots.push_back({z, true});
  }
  std::sort(rep.roots.begin(), rep.roots.end(),
            [](const LeafRoot& a, const LeafRoot& b) { return a.z < b.z; });

  bool has_multiple = false;
  for (const LeafRoot& r : rep.roots) {
    if (r.multiple) {
      has_multiple = true;
      rep.singular_z.push_back(r.z);
    } else {
      ++rep.n_simple;
    }
  }

  if (has_multiple) {
    rep.topology = LeafTopology::ContainsSingular;
  } else if (rep.n_simple == 0) {
    rep.topology = LeafTopology::TwoPlanes;
  } else {
    rep.topology = LeafTopology::Surface;
    const int n = rep.n_simple;
    rep.genus = (n + 1) / 2 - 1;
    rep.punctures = (n % 2 == 1) ? 1 : 2;
  }
  return rep;
}

double Family::f_on_leaf(double c, double z) const {
  const double uu = u(z);
  const double vv = v(z);
  const double ep = std::exp(-pp(z));
  const double d = c - q(z);
  return uu * uu + 2.0 * (1.0 + uu * vv) * ep * d + vv * vv * ep * ep * d * d;
}

ZoneReport Family::red_lines(double c) const {
  ZoneReport rep;
  rep.c = c;
  auto F = [&](double z) { return f_on_leaf(c, z); };
  auto dF = [&](double z) {
    const double h = 1e-7 * std::fmax(1.0, std::fabs(z));
    return (F(z + h) - F(z - h)) / (2.0 * h);
  };
  const double lo = z_interval_.lo, hi = z_interval_.hi;

  // F can vanish identically (the whole leaf is red, e.g. the cone
  // through the origin); report one degenerate zone and no red lines.
  double sup = 0.0;
  for (int i = 0; i <= 512; ++i)
    sup = std::fmax(sup, std::fabs(F(lo + (hi - lo) * i / 512.0)));
  if (sup < 1e-12) {
    rep.zones.push_back({lo, hi, ZoneSignature::Degenerate});
    return rep;
  }

  rep.red_z = bracketed_roots(F, dF, lo, hi);
  for (double z : tangent_roots(F, dF, lo, hi, 1e-10)) {
    const bool seen = std::any_of(
        rep.red_z.begin(), rep.red_z.end(),
        [&](double r) { return std::fabs(r - z) < 1e-6; });
    if (!seen) rep.red_z.push_back(z);
  }
  std::sort(rep.red_z.begin(), rep.red_z.end());

  std::vector<double> bounds{lo};
  bounds.insert(bounds.end(), rep.red_z.begin(), rep.red_z.end());
  bounds.push_back(hi);
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    Zone zone;
    zone.z_lo = bounds[i];
    zone.z_hi = bounds[i + 1];
    const double mid = 0.5 * (zone.z_lo + zone.z_hi);
    const double fm = F(mid);
    if (fm > 1e-12)
      zone.signature = ZoneSignature::Lorentzian;
    else if (fm < -1e-12)
      zone.signature = ZoneSignature::Euclidean;
    else
      zone.signature = ZoneSignature::Degenerate;
    rep.zones.push_back(zone);
  }
  return rep;
}

RegularityClass Family::classify_point(const Point3& p, double eps_f,
                                       double eps_axis) const {
  if (std::fabs(p.x) < eps_axis && std::fabs(p.y) < eps_axis &&
      std::fabs(u(p.z)) < eps_f)
    return RegularityClass::SingularLeaf;
  if (std::fabs(f_value(p)) < eps_f) return RegularityClass::MSingular;
  return RegularityClass::MRegular;
}

}  // namespace leafflow
