#include "leafflow/verify.hpp"

#include <cmath>
#include <random>

#include "leafflow/charts.hpp"
#include "leafflow/geometry.hpp"
#include "leafflow/sl2.hpp"

namespace leafflow {

namespace {

struct Recorder {
  SuiteResult result;

  explicit Recorder(std::string name, double threshold) {
    result.name = std::move(name);
    result.threshold = threshold;
  }

  void update(double residual, const Point3& p) {
    if (residual > result.max_residual) {
      result.max_residual = residual;
      result.worst_point = p;
    }
  }
};

}  // namespace

VerifyReport run_verification(const Family& family, const AmbientMetric& g,
                              int n_points, std::uint64_t seed) {
  if (n_points < 1) throw ConfigurationError("n_points must be >= 1");
  VerifyReport report;
  report.family_name = family.spec().name();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);

  const PoissonStructure pi = family.poisson();
  const Expr& C = family.casimir_expr();

  std::vector<Expr> test_functions = {
      Expr::x(), Expr::y(), Expr::z(),
      Expr::x() + 2.0 * Expr::y() - Expr::z(), Expr::x() * Expr::y()};

  Recorder chain("chain-identity", 1e-12);
  Recorder closed("metriplectic-closed-form", 1e-12);
  Recorder tangency("casimir-tangency", 1e-10);
  Recorder det_rel("induced-metric-determinant", 1e-10);
  Recorder tau_rel("double-bracket-metric-relation", 1e-10);
  Recorder grad_id("gradient-identity", 1e-8);
  Recorder oracle("sl2-reduction", 1e-10);
  const bool linear = family.spec().preset == Preset::Linear;

  for (int i = 0; i < n_points; ++i) {
    const Point3 p{coord(rng), coord(rng), coord(rng)};

    chain.update(verify_chain_identity(pi, g, p), p);

    {
      const Mat3 P = pi.matrix(p);
      const Mat3 product = (P * g.matrix() * P) * -1.0;
      closed.update((metriplectic_matrix(pi, g, p) - product).frobenius(), p);
    }

    tangency.update(sharp_pi(pi, p, C.gradient(p)).max_abs(), p);

    if (linear) {
      for (const Expr& G : test_functions)
        oracle.update(sl2_oracle_compare(family, g, G, p), p);
    }

    // Chart-level suites need a green, chart-valid leaf point.
    if (std::fabs(p.x) < 0.05 || std::fabs(family.f_value(p)) < 1e-3)
      continue;
    const double c = family.casimir(p);
    LeafChart chart(family, g, c);
    LeafPoint lp;
    try {
      lp = chart.lift(ChartKind::XZ, p.x, p.z);
    } catch (const ChartError&) {
      continue;
    }

    const Mat2 gi = chart.induced_metric(lp);
    const double f = chart.f_value(lp);
    det_rel.update(std::fabs(gi.det() + f / (p.x * p.x)) /
                       std::fmax(1.0, std::fabs(f / (p.x * p.x))),
                   p);

    const Mat2 tau = chart.tau_db(lp);
    double worst_entry = 0.0;
    worst_entry = std::fmax(worst_entry, std::fabs(tau.a * f + gi.a));
    worst_entry = std::fmax(worst_entry, std::fabs(tau.b * f + gi.b));
    worst_entry = std::fmax(worst_entry, std::fabs(tau.c * f + gi.c));
    worst_entry = std::fmax(worst_entry, std::fabs(tau.d * f + gi.d));
    tau_rel.update(worst_entry / std::fmax(1.0, gi.max_abs()), p);

    for (const Expr& G : test_functions)
      grad_id.update(chart.gradient_identity_residual(G, lp), p);
  }

  report.suites = {chain.result,   closed.result, tangency.result,
                   det_rel.result, tau_rel.result, grad_id.result};
  if (linear) report.suites.push_back(oracle.result);
  return report;
}

}  // namespace leafflow
