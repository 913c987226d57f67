// Acceptance gate: one line per criterion, PASS/FAIL, nonzero exit on any
// failure. Everything runs in-process against the core library.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "leafflow/brockett.hpp"
#include "leafflow/charts.hpp"
#include "leafflow/flow.hpp"
#include "leafflow/sl2.hpp"
#include "leafflow/verify.hpp"

using namespace leafflow;

namespace {

int g_failures = 0;

void report(int n, const char* what, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", n, what,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::vector<FamilySpec> presets() {
  return {FamilySpec::linear(), FamilySpec::quadratic(), FamilySpec::group(1.0)};
}

const AmbientMetric& metric() {
  static AmbientMetric g = AmbientMetric::standard();
  return g;
}

char buf_[256];
std::string fmt(const char* f, double a, double b = 0.0) {
  std::snprintf(buf_, sizeof buf_, f, a, b);
  return buf_;
}

// 1: ambient identity suite, 1000 seeded points per preset, < 5 s.
void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  double worst = 0.0;
  for (const FamilySpec& spec : presets()) {
    const VerifyReport r = run_verification(build_family(spec), metric(),
                                            1000, 20240521);
    for (const auto& s : r.suites) {
      if (s.name == "chain-identity" || s.name == "metriplectic-closed-form" ||
          s.name == "casimir-tangency") {
        ok = ok && s.passed();
        worst = std::fmax(worst, s.max_residual);
      }
    }
  }
  const double dt = seconds_since(t0);
  ok = ok && dt < 5.0;
  report(1, "ambient identity suite (3 presets x 1000 points)", ok,
         fmt("max residual %.2e, %.2f s", worst, dt));
}

// 2: gradient identity at 200 green points per preset, 5 fields, < 5 s.
void criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  const Expr fields[] = {Expr::x(), Expr::y(), Expr::z(),
                         Expr::x() + 2.0 * Expr::y() - Expr::z(),
                         Expr::x() * Expr::y()};
  double worst = 0.0;
  bool ok = true;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  for (const FamilySpec& spec : presets()) {
    const Family fam = build_family(spec);
    int accepted = 0;
    while (accepted < 200) {
      const Point3 p{u(rng), u(rng), u(rng)};
      if (std::fabs(p.x) < 0.1 || std::fabs(fam.f_value(p)) < 1e-2) continue;
      LeafChart chart(fam, metric(), fam.casimir(p));
      LeafPoint lp;
      try {
        lp = chart.lift(ChartKind::XZ, p.x, p.z);
      } catch (const ChartError&) {
        continue;
      }
      for (const Expr& G : fields)
        worst = std::fmax(worst, chart.gradient_identity_residual(G, lp));
      ++accepted;
    }
  }
  const double dt = seconds_since(t0);
  ok = worst < 1e-8 && dt < 5.0;
  report(2, "gradient identity at green-zone points", ok,
         fmt("max residual %.2e, %.2f s", worst, dt));
}

// 3: pinned numbers: quadratic red lines, zone signatures, linear f = 2C.
void criterion3() {
  bool ok = true;
  std::string detail;

  const Family quad = build_family(FamilySpec::quadratic());
  const ZoneReport z0 = quad.red_lines(0.0);
  ok = ok && z0.red_z.size() == 2 && std::fabs(z0.red_z[0] + 0.77) < 0.01 &&
       std::fabs(z0.red_z[1] + 0.30) < 0.01;
  ok = ok && z0.zones.size() == 3 &&
       z0.zones[0].signature == ZoneSignature::Lorentzian &&
       z0.zones[1].signature == ZoneSignature::Euclidean &&
       z0.zones[2].signature == ZoneSignature::Lorentzian;

  const ZoneReport z1 = quad.red_lines(1.0);
  ok = ok && z1.red_z.empty() && z1.zones.size() == 1 &&
       z1.zones[0].signature == ZoneSignature::Lorentzian;

  const Family lin = build_family(FamilySpec::linear());
  double worst = 0.0;
  for (double x = -3; x <= 3; x += 0.25)
    for (double y = -3; y <= 3; y += 0.25)
      for (double z = -3; z <= 3; z += 0.25) {
        const Point3 p{x, y, z};
        worst = std::fmax(worst,
                          std::fabs(lin.f_value(p) - 2.0 * lin.casimir(p)));
      }
  ok = ok && worst < 1e-12;
  report(3, "pinned red-line and zone numbers, linear f = 2C", ok,
         fmt("red_z = (-0.772, -0.297) expected band, max |f - 2C| = %.2e",
             worst));
}

// 4: topology table.
void criterion4() {
  bool ok = true;
  const Family lin = build_family(FamilySpec::linear());
  const LeafReport a = lin.classify_level_set(1.0);
  ok = ok && a.topology == LeafTopology::Surface && a.genus == 0 &&
       a.punctures == 2;

  const Family quad = build_family(FamilySpec::quadratic());
  const LeafReport b = quad.classify_level_set(0.0);
  ok = ok && b.topology == LeafTopology::Surface && b.genus == 1 &&
       b.punctures == 1;

  const Family quartic = build_family(FamilySpec::custom(
      parse_expression("8*z^3 - 20*z"), parse_expression("0"),
      parse_expression("0"), parse_expression("2*z^4 - 10*z^2 + 8")));
  const LeafReport c = quartic.classify_level_set(0.0);
  ok = ok && c.topology == LeafTopology::Surface && c.genus == 1 &&
       c.punctures == 2;

  const Family quintic = build_family(FamilySpec::custom(
      parse_expression("10*z^4 - 30*z^2 + 8"), parse_expression("0"),
      parse_expression("0"), parse_expression("2*z^5 - 10*z^3 + 8*z")));
  const LeafReport d = quintic.classify_level_set(0.0);
  ok = ok && d.topology == LeafTopology::Surface && d.genus == 2 &&
       d.punctures == 1;

  report(4, "level-set topology (cylinder, g1p1, g1p2, g2p1)", ok, "");
}

// 5: Casimir drift < 1e-8 over t in [0, 10] for presets x {x, y, z}.
void criterion5() {
  bool ok = true;
  double worst = 0.0;
  const Expr fields[] = {Expr::x(), Expr::y(), Expr::z()};
  for (const FamilySpec& spec : presets()) {
    const Family fam = build_family(spec);
    for (const Expr& G : fields) {
      FlowOptions opts;
      opts.t_max = 10.0;
      const Point3 start{1.0, 0.5, -0.3};
      const Trajectory t = integrate_db_flow(fam, metric(), G, start, opts);
      const double c0 = fam.casimir(start);
      for (const auto& s : t.samples)
        worst = std::fmax(worst, std::fabs(s.casimir - c0));
      ok = ok && t.termination != FlowTermination::CasimirAbort;
    }
  }
  ok = ok && worst < 1e-8;
  report(5, "leaf invariance of flows", ok, fmt("max drift %.2e", worst));
}

// 6: Brockett n=5 sorting demonstrator under 1 s.
void criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = 5;
  std::mt19937_64 rng(13);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<double>> q(n, std::vector<double>(n));
  for (int col = 0; col < n; ++col) {
    for (int i = 0; i < n; ++i) q[i][col] = gauss(rng);
    for (int prev = 0; prev < col; ++prev) {
      double proj = 0;
      for (int i = 0; i < n; ++i) proj += q[i][col] * q[i][prev];
      for (int i = 0; i < n; ++i) q[i][col] -= proj * q[i][prev];
    }
    double norm = 0;
    for (int i = 0; i < n; ++i) norm += q[i][col] * q[i][col];
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) q[i][col] /= norm;
  }
  std::vector<double> l(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double v = 0;
      for (int k = 0; k < n; ++k) v += q[i][k] * (k + 1.0) * q[j][k];
      l[i * n + j] = v;
      l[j * n + i] = v;
    }

  const BrockettTrajectory t =
      brockett_flow(SymMatrixState::from_matrix(n, l, {5, 4, 3, 2, 1}));
  bool ok = t.converged;
  double drift = 0.0;
  for (const auto& s : t.samples) drift = std::fmax(drift, s.eigenvalue_drift);
  ok = ok && drift < 1e-8;
  ok = ok && t.samples.back().offdiag_norm < 1e-6;
  for (int i = 0; i < n; ++i)
    ok = ok && std::fabs(t.final_diagonal[i] - (5.0 - i)) < 1e-6;
  const double dt = seconds_since(t0);
  ok = ok && dt < 1.0;
  report(6, "Brockett n=5 isospectral sorting", ok,
         fmt("drift %.2e, %.3f s", drift, dt));
}

// 7: matrix-level oracle after validating the identification map.
void criterion7() {
  bool ok = true;

  // bracket table of the 2x2 basis
  const Mat2x2 e1{0, 1, 0, 0}, e2{0, 0, 1, 0}, e3{1, 0, 0, -1};
  auto close = [](const Mat2x2& a, const Mat2x2& b) {
    return std::fabs(a.a - b.a) + std::fabs(a.b - b.b) +
               std::fabs(a.c - b.c) + std::fabs(a.d - b.d) <
           1e-15;
  };
  ok = ok && close(e1.commutator(e2), e3);
  ok = ok && close(e1.commutator(e3), e1 * -2.0);
  ok = ok && close(e2.commutator(e3), e2 * 2.0);

  const Family lin = build_family(FamilySpec::linear());
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const Expr fields[] = {Expr::x(), Expr::y(), Expr::z(),
                         Expr::x() + 2.0 * Expr::y() - Expr::z(),
                         0.5 * Expr::x() - 1.5 * Expr::y() + Expr::z()};
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Point3 p{u(rng), u(rng), u(rng)};
    worst = std::fmax(worst,
                      sl2_oracle_compare(lin, metric(), fields[i % 5], p));
  }
  ok = ok && worst < 1e-10;
  report(7, "matrix-flow reduction oracle", ok, fmt("max residual %.2e", worst));
}

// 8: group preset Casimir converges linearly in eta to the linear one.
void criterion8() {
  const Family lin = build_family(FamilySpec::linear());
  std::vector<double> sups;
  for (double eta : {1e-2, 1e-3, 1e-4}) {
    const Family grp = build_family(FamilySpec::group(eta));
    double sup = 0.0;
    for (double x = -2; x <= 2; x += 0.5)
      for (double y = -2; y <= 2; y += 0.5)
        for (double z = -2; z <= 2; z += 0.5) {
          const Point3 p{x, y, z};
          sup = std::fmax(sup, std::fabs(grp.casimir(p) - lin.casimir(p)));
        }
    sups.push_back(sup);
  }
  const double r1 = sups[0] / sups[1];
  const double r2 = sups[1] / sups[2];
  const bool ok = r1 > 8.3 && r1 < 12.0 && r2 > 8.3 && r2 < 12.0;
  report(8, "deformation limit is first order", ok,
         fmt("decade ratios %.3f, %.3f", r1, r2));
}

// 9: dissipation identity along trajectories; descent in Euclidean zones.
void criterion9() {
  bool ok = true;
  double worst_rel = 0.0;
  const Expr fields[] = {Expr::z(), Expr::x() + Expr::y()};
  for (const FamilySpec& spec : presets()) {
    const Family fam = build_family(spec);
    for (const Expr& G : fields) {
      FlowOptions opts;
      opts.t_max = 5.0;
      const Trajectory t =
          integrate_db_flow(fam, metric(), G, {1.0, 1.0, 0.5}, opts);
      double scale = 1.0;
      for (const auto& s : t.samples)
        scale = std::fmax(scale, std::fabs(s.predicted_rate));
      worst_rel = std::fmax(worst_rel, dissipation_check(t) / scale);
    }
  }
  ok = ok && worst_rel < 1e-7;

  // Euclidean-zone monotonicity: quadratic c=0 between the red lines.
  const Family quad = build_family(FamilySpec::quadratic());
  FlowOptions opts;
  opts.t_max = 10.0;
  const Trajectory t =
      integrate_db_flow(quad, metric(), Expr::z(), {1.0, -0.375, -0.5}, opts);
  for (std::size_t i = 0; i + 1 < t.samples.size(); ++i)
    ok = ok &&
         t.samples[i + 1].g_value <= t.samples[i].g_value + 10.0 * opts.atol;
  report(9, "dissipation identity and Euclidean-zone descent", ok,
         fmt("max relative residual %.2e", worst_rel));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
