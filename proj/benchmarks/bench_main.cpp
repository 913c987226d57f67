#include <benchmark/benchmark.h>

#include "leafflow/charts.hpp"
#include "leafflow/family.hpp"
#include "leafflow/flow.hpp"
#include "leafflow/geometry.hpp"

using namespace leafflow;

static void BM_DoubleBracketField(benchmark::State& state) {
  const Family family = build_family(FamilySpec::quadratic());
  const AmbientMetric g = AmbientMetric::standard();
  const PoissonStructure pi = family.poisson();
  const Expr G = parse_expression("x + 2*y - z");
  const Point3 p{1.2, -0.7, 0.4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(double_bracket_field(pi, g, G, p));
  }
}
BENCHMARK(BM_DoubleBracketField);

static void BM_LevelSetClassify(benchmark::State& state) {
  const Family family = build_family(FamilySpec::quadratic());
  for (auto _ : state) {
    benchmark::DoNotOptimize(family.classify_level_set(0.37));
  }
}
BENCHMARK(BM_LevelSetClassify);

static void BM_GradientIdentity(benchmark::State& state) {
  const Family family = build_family(FamilySpec::quadratic());
  const AmbientMetric g = AmbientMetric::standard();
  const Expr G = Expr::x() * Expr::y();
  const Point3 p{1.0, 1.0, 1.0};
  const double c = family.casimir(p);
  LeafChart chart(family, g, c);
  const LeafPoint lp = chart.lift(ChartKind::XZ, p.x, p.z);
  for (auto _ : state) {
    benchmark::DoNotOptimize(chart.gradient_identity_residual(G, lp));
  }
}
BENCHMARK(BM_GradientIdentity);

static void BM_FlowShortRun(benchmark::State& state) {
  const Family family = build_family(FamilySpec::linear());
  const AmbientMetric g = AmbientMetric::standard();
  const Expr G = Expr::z();
  FlowOptions opts;
  opts.t_max = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        integrate_db_flow(family, g, G, {1.0, 1.0, 1.0}, opts));
  }
}
BENCHMARK(BM_FlowShortRun);

BENCHMARK_MAIN();
