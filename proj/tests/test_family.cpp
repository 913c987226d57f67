#include <doctest.h>

#include <cmath>
#include <random>

#include "leafflow/family.hpp"

using namespace leafflow;

TEST_CASE("preset Casimirs") {
  const Family lin = build_family(FamilySpec::linear());
  CHECK(lin.casimir({1, 1, 0}) == doctest::Approx(1.0));
  CHECK(lin.casimir({2, 3, 2}) == doctest::Approx(8.0));

  const Family quad = build_family(FamilySpec::quadratic());
  CHECK(quad.casimir({1, 1, 0}) == doctest::Approx(1.0));
  CHECK(quad.casimir({1, 2, 1}) == doctest::Approx(2.0));

  const Family grp = build_family(FamilySpec::group(1.0));
  CHECK(grp.casimir({1, 1, 1}) ==
        doctest::Approx(std::exp(1.0) + std::cosh(1.0) - 1.0));
}

TEST_CASE("f, W and the linear f = 2C identity") {
  const Family lin = build_family(FamilySpec::linear());
  CHECK(lin.f_value({1, 1, 0}) == doctest::Approx(2.0));
  CHECK(lin.w_value({1, 1, 0}) == doctest::Approx(0.0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const Point3 p{u(rng), u(rng), u(rng)};
    CHECK(std::fabs(lin.f_value(p) - 2.0 * lin.casimir(p)) < 1e-12);
  }

  // f on the z-axis reduces to U^2
  const Family quad = build_family(FamilySpec::quadratic());
  CHECK(quad.f_value({0, 0, 2}) == doctest::Approx(11.0 * 11.0));
}

TEST_CASE("f-consistency with the expanded form") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const FamilySpec& spec :
       {FamilySpec::linear(), FamilySpec::quadratic(), FamilySpec::group(0.7)}) {
    const Family fam = build_family(spec);
    for (int i = 0; i < 100; ++i) {
      const Point3 p{u(rng), u(rng), u(rng)};
      const double uu = fam.u(p.z), vv = fam.v(p.z);
      const double xy = p.x * p.y;
      const double expanded =
          uu * uu + 2.0 * (1.0 + uu * vv) * xy + vv * vv * xy * xy;
      CHECK(fam.f_value(p) == doctest::Approx(expanded).epsilon(1e-12));
    }
  }
}

TEST_CASE("custom family validation rejects inconsistent P and Q") {
  // P' != V
  CHECK_THROWS_AS(
      build_family(FamilySpec::custom(parse_expression("z"),
                                      parse_expression("1"),
                                      parse_expression("0"),
                                      parse_expression("z^2/2"))),
      FamilyError);
  // Q' != U e^P
  CHECK_THROWS_AS(
      build_family(FamilySpec::custom(parse_expression("z"),
                                      parse_expression("0"),
                                      parse_expression("0"),
                                      parse_expression("z^3"))),
      FamilyError);
  // the linear data spelled out by hand is accepted
  CHECK_NOTHROW(
      build_family(FamilySpec::custom(parse_expression("z"),
                                      parse_expression("0"),
                                      parse_expression("0"),
                                      parse_expression("z^2/2"))));
}

TEST_CASE("singular leaves per preset") {
  const Family lin = build_family(FamilySpec::linear());
  auto s = lin.singular_leaves();
  REQUIRE(s.size() == 1);
  CHECK(std::fabs(s[0]) < 1e-12);

  const Family quad = build_family(FamilySpec::quadratic());
  s = quad.singular_leaves();
  REQUIRE(s.size() == 2);
  CHECK(s[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(s[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  // critical values of c at those leaves
  CHECK(quad.q(s[0]) == doctest::Approx(2.0 * std::sqrt(3.0) / 9.0));
  CHECK(quad.q(s[1]) == doctest::Approx(-2.0 * std::sqrt(3.0) / 9.0));

  const Family grp = build_family(FamilySpec::group(2.0));
  s = grp.singular_leaves();
  REQUIRE(s.size() == 1);
  CHECK(std::fabs(s[0]) < 1e-12);
}

TEST_CASE("level-set topology classification") {
  const Family lin = build_family(FamilySpec::linear());
  {
    const LeafReport r = lin.classify_level_set(1.0);
    CHECK(r.topology == LeafTopology::Surface);
    CHECK(r.n_simple == 2);
    CHECK(r.genus == 0);
    CHECK(r.punctures == 2);
    REQUIRE(r.roots.size() == 2);
    CHECK(r.roots[0].z == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-9));
    CHECK(r.roots[1].z == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  }
  {
    const LeafReport r = lin.classify_level_set(-1.0);
    CHECK(r.topology == LeafTopology::TwoPlanes);
    CHECK(r.n_simple == 0);
  }
  {
    // h_0 = z^2/2 has a double root at the singular value
    const LeafReport r = lin.classify_level_set(0.0);
    CHECK(r.topology == LeafTopology::ContainsSingular);
  }

  const Family quad = build_family(FamilySpec::quadratic());
  {
    const LeafReport r = quad.classify_level_set(0.0);
    CHECK(r.topology == LeafTopology::Surface);
    CHECK(r.n_simple == 3);
    CHECK(r.genus == 1);
    CHECK(r.punctures == 1);
  }
}

TEST_CASE("quartic and quintic custom families match the topology rule") {
  // Q = 2(z-2)(z-1)(z+1)(z+2) = 2z^4 - 10z^2 + 8, U = Q', V = P = 0
  const Family quartic = build_family(FamilySpec::custom(
      parse_expression("8*z^3 - 20*z"), parse_expression("0"),
      parse_expression("0"), parse_expression("2*z^4 - 10*z^2 + 8")));
  {
    const LeafReport r = quartic.classify_level_set(0.0);
    CHECK(r.topology == LeafTopology::Surface);
    CHECK(r.n_simple == 4);
    CHECK(r.genus == 1);
    CHECK(r.punctures == 2);
  }

  // Q = 2(z-2)(z-1)z(z+1)(z+2) = 2z^5 - 10z^3 + 8z
  const Family quintic = build_family(FamilySpec::custom(
      parse_expression("10*z^4 - 30*z^2 + 8"), parse_expression("0"),
      parse_expression("0"), parse_expression("2*z^5 - 10*z^3 + 8*z")));
  {
    const LeafReport r = quintic.classify_level_set(0.0);
    CHECK(r.topology == LeafTopology::Surface);
    CHECK(r.n_simple == 5);
    CHECK(r.genus == 2);
    CHECK(r.punctures == 1);
  }
}

TEST_CASE("F_c closed forms") {
  const Family lin = build_family(FamilySpec::linear());
  for (double c : {-1.0, 0.0, 2.5})
    for (double z : {-2.0, 0.0, 1.0})
      CHECK(lin.f_on_leaf(c, z) == doctest::Approx(2.0 * c));

  const Family quad = build_family(FamilySpec::quadratic());
  for (double c : {0.0, 1.0})
    for (double z : {-1.0, -0.5, 0.3, 2.0}) {
      const double poly = 9 * z * z * z * z - 2 * z * z * z - 6 * z * z +
                          2 * z + 1 + 2 * c;
      CHECK(quad.f_on_leaf(c, z) == doctest::Approx(poly).epsilon(1e-12));
    }

  // at a singular z with the critical c, F vanishes
  const double zs = 1.0 / std::sqrt(3.0);
  CHECK(std::fabs(quad.f_on_leaf(quad.q(zs), zs)) < 1e-12);
}

TEST_CASE("on-leaf reduction F_c(z) = f(p) for points of the leaf") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const FamilySpec& spec :
       {FamilySpec::linear(), FamilySpec::quadratic(), FamilySpec::group(1.0)}) {
    const Family fam = build_family(spec);
    for (int i = 0; i < 100; ++i) {
      Point3 p{u(rng), 0.0, u(rng)};
      if (std::fabs(p.x) < 0.1) continue;
      const double c = u(rng);
      // solve xy e^P + Q = c for y
      p.y = std::exp(-fam.pp(p.z)) * (c - fam.q(p.z)) / p.x;
      CHECK(fam.f_on_leaf(c, p.z) ==
            doctest::Approx(fam.f_value(p)).epsilon(1e-10));
    }
  }
}

TEST_CASE("red lines and zone signatures") {
  const Family quad = build_family(FamilySpec::quadratic());
  {
    const ZoneReport r = quad.red_lines(0.0);
    REQUIRE(r.red_z.size() == 2);
    CHECK(r.red_z[0] == doctest::Approx(-0.77).epsilon(0.02));
    CHECK(r.red_z[1] == doctest::Approx(-0.30).epsilon(0.02));
    REQUIRE(r.zones.size() == 3);
    CHECK(r.zones[0].signature == ZoneSignature::Lorentzian);
    CHECK(r.zones[1].signature == ZoneSignature::Euclidean);
    CHECK(r.zones[2].signature == ZoneSignature::Lorentzian);
  }
  {
    const ZoneReport r = quad.red_lines(1.0);
    CHECK(r.red_z.empty());
    REQUIRE(r.zones.size() == 1);
    CHECK(r.zones[0].signature == ZoneSignature::Lorentzian);
  }

  const Family lin = build_family(FamilySpec::linear());
  {
    const ZoneReport r = lin.red_lines(-1.0);
    CHECK(r.red_z.empty());
    REQUIRE(r.zones.size() == 1);
    CHECK(r.zones[0].signature == ZoneSignature::Euclidean);
  }
  {
    // F_0 vanishes identically on the cone
    const ZoneReport r = lin.red_lines(0.0);
    CHECK(r.red_z.empty());
    REQUIRE(r.zones.size() == 1);
    CHECK(r.zones[0].signature == ZoneSignature::Degenerate);
  }
}

TEST_CASE("group preset converges to the linear one as eta -> 0") {
  const Family lin = build_family(FamilySpec::linear());
  double prev = 0.0;
  int step = 0;
  for (double eta : {1e-2, 1e-3, 1e-4}) {
    const Family grp = build_family(FamilySpec::group(eta));
    double sup = 0.0;
    for (double x = -2; x <= 2; x += 0.5)
      for (double y = -2; y <= 2; y += 0.5)
        for (double z = -2; z <= 2; z += 0.5) {
          const Point3 p{x, y, z};
          sup = std::fmax(sup, std::fabs(grp.casimir(p) - lin.casimir(p)));
        }
    if (step > 0) {
      const double ratio = prev / sup;
      CHECK(ratio > 10.0 / 1.2);
      CHECK(ratio < 10.0 * 1.2);
    }
    prev = sup;
    ++step;
  }
}

TEST_CASE("singular z values are double roots of h at the critical c") {
  const Family quad = build_family(FamilySpec::quadratic());
  for (double zs : quad.singular_leaves()) {
    const double c = quad.q(zs);
    const LeafReport r = quad.classify_level_set(c);
    CHECK(r.topology == LeafTopology::ContainsSingular);
    bool found = false;
    for (const auto& root : r.roots)
      if (std::fabs(root.z - zs) < 1e-6 && root.multiple) found = true;
    CHECK(found);
  }
}
