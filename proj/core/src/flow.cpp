#include "leafflow/flow.hpp"

#include <algorithm>
#include <cmath>

#include "leafflow/geometry.hpp"

namespace leafflow {

namespace {

// Fehlberg 4(5) tableau.
constexpr double A2 = 1.0 / 4.0;
constexpr double B31 = 3.0 / 32.0, B32 = 9.0 / 32.0;
constexpr double B41 = 1932.0 / 2197.0, B42 = -7200.0 / 2197.0,
                 B43 = 7296.0 / 2197.0;
constexpr double B51 = 439.0 / 216.0, B52 = -8.0, B53 = 3680.0 / 513.0,
                 B54 = -845.0 / 4104.0;
constexpr double B61 = -8.0 / 27.0, B62 = 2.0, B63 = -3544.0 / 2565.0,
                 B64 = 1859.0 / 4104.0, B65 = -11.0 / 40.0;
constexpr double C1 = 16.0 / 135.0, C3 = 6656.0 / 12825.0,
                 C4 = 28561.0 / 56430.0, C5 = -9.0 / 50.0, C6 = 2.0 / 55.0;
constexpr double D1 = 25.0 / 216.0, D3 = 1408.0 / 2565.0,
                 D4 = 2197.0 / 4104.0, D5 = -1.0 / 5.0;

}  // namespace

bool Rkf45Stepper::step(double& t, std::vector<double>& y, double& h_try) {
  const std::size_t n = y.size();
  for (auto& k : k_) k.resize(n);
  tmp_.resize(n);
  y5_.resize(n);
  y4_.resize(n);
  const double h = h_try;

  f_(t, y, k_[0]);
  for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * A2 * k_[0][i];
  f_(t + h * A2, tmp_, k_[1]);
  for (std::size_t i = 0; i < n; ++i)
    tmp_[i] = y[i] + h * (B31 * k_[0][i] + B32 * k_[1][i]);
  f_(t + h * 3.0 / 8.0, tmp_, k_[2]);
  for (std::size_t i = 0; i < n; ++i)
    tmp_[i] = y[i] + h * (B41 * k_[0][i] + B42 * k_[1][i] + B43 * k_[2][i]);
  f_(t + h * 12.0 / 13.0, tmp_, k_[3]);
  for (std::size_t i = 0; i < n; ++i)
    tmp_[i] = y[i] + h * (B51 * k_[0][i] + B52 * k_[1][i] + B53 * k_[2][i] +
                          B54 * k_[3][i]);
  f_(t + h, tmp_, k_[4]);
  for (std::size_t i = 0; i < n; ++i)
    tmp_[i] = y[i] + h * (B61 * k_[0][i] + B62 * k_[1][i] + B63 * k_[2][i] +
                          B64 * k_[3][i] + B65 * k_[4][i]);
  f_(t + h * 0.5, tmp_, k_[5]);

  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    y5_[i] = y[i] + h * (C1 * k_[0][i] + C3 * k_[2][i] + C4 * k_[3][i] +
                         C5 * k_[4][i] + C6 * k_[5][i]);
    y4_[i] = y[i] + h * (D1 * k_[0][i] + D3 * k_[2][i] + D4 * k_[3][i] +
                         D5 * k_[4][i]);
    const double sc =
        atol_ + rtol_ * std::fmax(std::fabs(y[i]), std::fabs(y5_[i]));
    err = std::fmax(err, std::fabs(y5_[i] - y4_[i]) / sc);
  }

  double factor = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
  factor = std::clamp(factor, 0.2, 5.0);
  if (err <= 1.0) {
    t += h;
    y = y5_;
    h_try = h * factor;
    return true;
  }
  h_try = h * factor;
  return false;
}

void rk4_step(const OdeFunc& f, double& t, std::vector<double>& y, double h) {
  const std::size_t n = y.size();
  static thread_local std::vector<double> k1, k2, k3, k4, tmp;
  k1.resize(n); k2.resize(n); k3.resize(n); k4.resize(n); tmp.resize(n);
  f(t, y, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  f(t + 0.5 * h, tmp, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  f(t + 0.5 * h, tmp, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
  f(t + h, tmp, k4);
  for (std::size_t i = 0; i < n; ++i)
    y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  t += h;
}

namespace {

double predicted_rate(const PoissonStructure& pi, const AmbientMetric& g,
                      const Expr& G, const Point3& p, double direction) {
  const Covec3 dG = G.gradient(p);
  const Mat3 M = metriplectic_matrix(pi, g, p);
  const Vec3 MdG = M.apply(dG);
  return -direction * dG.pair(MdG);
}

FlowSample make_sample(const Family& fam, const Expr& G, double t,
                       const Point3& p, double rate, double g_pred) {
  FlowSample s;
  s.t = t;
  s.p = p;
  s.casimir = fam.casimir(p);
  s.g_value = G.eval(p);
  s.f_value = fam.f_value(p);
  s.predicted_rate = rate;
  s.g_predicted = g_pred;
  return s;
}

}  // namespace

Trajectory integrate_db_flow(const Family& family, const AmbientMetric& g,
                             const Expr& G, const Point3& start,
                             const FlowOptions& opts) {
  if (!start.finite()) throw NumericalAbort("non-finite start point");
  const PoissonStructure pi = family.poisson();
  Trajectory traj;

  // State: (x, y, z, integral of predicted dG/dt).
  auto deriv = [&](double, const std::vector<double>& y,
                   std::vector<double>& dy) {
    const Point3 p{y[0], y[1], y[2]};
    const Vec3 v = double_bracket_field(pi, g, G, p) * opts.direction;
    dy.resize(4);
    dy[0] = v.x;
    dy[1] = v.y;
    dy[2] = v.z;
    dy[3] = predicted_rate(pi, g, G, p, opts.direction);
  };

  const double c0 = family.casimir(start);
  double t = 0.0;
  std::vector<double> y{start.x, start.y, start.z, G.eval(start)};

  auto record = [&](double tt, const Point3& p, double g_pred) {
    traj.samples.push_back(make_sample(
        family, G, tt, p, predicted_rate(pi, g, G, p, opts.direction),
        g_pred));
  };

  record(0.0, start, y[3]);

  {
    const Vec3 v0 = double_bracket_field(pi, g, G, start);
    if (v0.max_abs() < opts.convergence_tol) {
      traj.events.push_back({FlowEventKind::Converged, 0.0, v0.max_abs()});
      traj.termination = FlowTermination::Converged;
      return traj;
    }
    if (std::fabs(family.f_value(start)) < opts.eps_red) {
      traj.events.push_back(
          {FlowEventKind::RedZoneApproach, 0.0, family.f_value(start)});
      traj.termination = FlowTermination::RedZoneApproach;
      return traj;
    }
  }

  Rkf45Stepper stepper(deriv, opts.rtol, opts.atol);
  double h = (opts.method == StepMethod::Rk4Fixed)
                 ? opts.dt
                 : std::fmin(1e-3, opts.t_max);

  double f_prev = family.f_value(start);

  for (long step = 0; step < opts.max_steps; ++step) {
    if (t >= opts.t_max) {
      traj.termination = FlowTermination::TMax;
      return traj;
    }
    double h_here = std::fmin(h, opts.t_max - t);
    const double t_prev = t;
    const std::vector<double> y_prev = y;
    if (opts.method == StepMethod::Rk4Fixed) {
      rk4_step(deriv, t, y, h_here);
    } else {
      double h_try = h_here;
      bool ok = false;
      for (int rej = 0; rej < 64 && !ok; ++rej) {
        if (h_try < 1e-14 * std::fmax(1.0, std::fabs(t)))
          throw NumericalAbort("step size underflow at t = " +
                               std::to_string(t));
        ok = stepper.step(t, y, h_try);
      }
      if (!ok) throw NumericalAbort("step repeatedly rejected");
      h = h_try;
    }

    Point3 p{y[0], y[1], y[2]};
    if (!p.finite()) throw NumericalAbort("state became non-finite");

    // The field itself is smooth across red lines, so an accepted step can
    // jump the |f| < eps_red band entirely; a sign change flags the
    // crossing and a bisection on the step length lands back inside it.
    double f = family.f_value(p);
    if (f_prev * f < 0.0) {
      double h_lo = 0.0, h_hi = t - t_prev;
      for (int it = 0; it < 200; ++it) {
        const double h_mid = 0.5 * (h_lo + h_hi);
        double tm = t_prev;
        std::vector<double> ym = y_prev;
        rk4_step(deriv, tm, ym, h_mid);
        const double fm = family.f_value({ym[0], ym[1], ym[2]});
        if (std::fabs(fm) < 0.5 * opts.eps_red || h_hi - h_lo < 1e-15) {
          t = tm;
          y = ym;
          break;
        }
        (f_prev * fm > 0.0 ? h_lo : h_hi) = h_mid;
      }
      p = Point3{y[0], y[1], y[2]};
      f = family.f_value(p);
    }
    f_prev = f;
    record(t, p, y[3]);

    const double drift = std::fabs(family.casimir(p) - c0);
    if (drift > opts.casimir_tol) {
      traj.events.push_back({FlowEventKind::CasimirDrift, t, drift});
      traj.termination = FlowTermination::CasimirAbort;
      return traj;
    }
    if (std::fabs(f) < opts.eps_red) {
      traj.events.push_back({FlowEventKind::RedZoneApproach, t, f});
      traj.termination = FlowTermination::RedZoneApproach;
      return traj;
    }
    const Vec3 v = double_bracket_field(pi, g, G, p);
    if (v.max_abs() < opts.convergence_tol) {
      traj.events.push_back({FlowEventKind::Converged, t, v.max_abs()});
      traj.termination = FlowTermination::Converged;
      return traj;
    }
  }
  traj.termination = FlowTermination::MaxSteps;
  return traj;
}

double dissipation_check(const Trajectory& traj) {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i) {
    const FlowSample& a = traj.samples[i];
    const FlowSample& b = traj.samples[i + 1];
    const double dt = b.t - a.t;
    if (dt <= 0.0) continue;
    const double measured = (b.g_value - a.g_value) / dt;
    const double predicted = (b.g_predicted - a.g_predicted) / dt;
    worst = std::fmax(worst, std::fabs(measured - predicted));
  }
  return worst;
}

}  // namespace leafflow
