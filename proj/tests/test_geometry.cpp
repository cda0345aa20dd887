#include <doctest.h>

#include <cmath>

#include "geofix/errors.hpp"
#include "geofix/geometry.hpp"
#include "geofix/sampling.hpp"
#include "support.hpp"

using namespace geofix;
namespace ts = geofix::testsupport;

TEST_CASE("euclidean distance and interpolation") {
  Space e2 = Space::euclidean(2);
  CHECK(e2.distance(vec_point({0, 0}), vec_point({3, 4})) == doctest::Approx(5.0).epsilon(1e-15));
  Point m = e2.convex_combination(vec_point({0, 0}), vec_point({2, 0}), 0.25);
  CHECK(std::get<VecPoint>(m).x[0] == doctest::Approx(0.5));
  CHECK(std::get<VecPoint>(m).x[1] == 0.0);
}

TEST_CASE("disk distance agrees with the arcosh oracle and the metric integral") {
  Space disk = Space::poincare_disk();
  // frozen oracle value: arcosh(1 + 2*0.25/0.75) = log 3
  const double oracle = ts::disk_distance_arcosh(0.0, 0.0, 0.5, 0.0);
  CHECK(oracle == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(disk.distance(disk_point(0, 0), disk_point(0.5, 0)) ==
        doctest::Approx(1.0986122886681098).epsilon(1e-12));

  // off-axis pair, cross-checked against both oracles
  Point a = disk_point(0.3, -0.2);
  Point b = disk_point(-0.5, 0.4);
  double d = disk.distance(a, b);
  CHECK(d == doctest::Approx(ts::disk_distance_arcosh(0.3, -0.2, -0.5, 0.4)).epsilon(1e-12));
  CHECK(d == doctest::Approx(ts::disk_geodesic_length(disk, a, b)).epsilon(1e-6));
}

TEST_CASE("disk midpoint sits at tanh(log(3)/4) on the axis") {
  Space disk = Space::poincare_disk();
  Point m = disk.convex_combination(disk_point(0, 0), disk_point(0.5, 0), 0.5);
  auto dp = std::get<DiskPoint>(m);
  CHECK(dp.u == doctest::Approx(std::tanh(std::log(3.0) / 4.0)).epsilon(1e-12));
  CHECK(dp.u == doctest::Approx(0.26795).epsilon(1e-4));
  CHECK(std::abs(dp.v) < 1e-15);
  // equidistance from both ends
  CHECK(disk.distance(disk_point(0, 0), m) ==
        doctest::Approx(disk.distance(m, disk_point(0.5, 0))).epsilon(1e-12));
}

TEST_CASE("tripod distances match the path-sum oracle") {
  Space tree = Space::metric_tree(ts::tripod());
  Point a = tree_point(0, 1.0);  // leaf a
  Point b = tree_point(1, 1.0);  // leaf b
  Point o = tree_point(0, 0.0);  // center
  CHECK(ts::tree_distance_oracle(ts::tripod(), TreePoint{0, 1.0}, TreePoint{1, 1.0}) ==
        doctest::Approx(2.0));
  CHECK(tree.distance(a, b) == doctest::Approx(2.0));
  CHECK(tree.distance(a, o) == doctest::Approx(1.0));
  // midpoint of a->b is the center
  Point mid = tree.convex_combination(a, b, 0.5);
  CHECK(tree.distance(mid, o) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("tree distances agree with the oracle on random pairs") {
  MetricTree t = ts::caterpillar();
  Space space = Space::metric_tree(ts::caterpillar());
  Rng g(99);
  for (int i = 0; i < 500; ++i) {
    Point x = sample_point(space, g);
    Point y = sample_point(space, g);
    double expect = ts::tree_distance_oracle(t, std::get<TreePoint>(x), std::get<TreePoint>(y));
    CHECK(space.distance(x, y) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("tree interpolation walks the unique path") {
  Space space = Space::metric_tree(ts::caterpillar());
  MetricTree t = ts::caterpillar();
  Rng g(100);
  for (int i = 0; i < 300; ++i) {
    Point x = sample_point(space, g);
    Point y = sample_point(space, g);
    double d = space.distance(x, y);
    double tpar = uniform01(g);
    Point m = space.convex_combination(x, y, tpar);
    CHECK(space.distance(x, m) == doctest::Approx(tpar * d).epsilon(1e-9));
    CHECK(space.distance(m, y) == doctest::Approx((1.0 - tpar) * d).epsilon(1e-9));
  }
  (void)t;
}

TEST_CASE("endpoint parameters return the inputs unchanged") {
  Space disk = Space::poincare_disk();
  Point x = disk_point(0.123456, -0.654321);
  Point y = disk_point(-0.2, 0.7);
  auto x0 = std::get<DiskPoint>(disk.convex_combination(x, y, 0.0));
  auto y1 = std::get<DiskPoint>(disk.convex_combination(x, y, 1.0));
  CHECK(x0.u == std::get<DiskPoint>(x).u);
  CHECK(x0.v == std::get<DiskPoint>(x).v);
  CHECK(y1.u == std::get<DiskPoint>(y).u);
  CHECK(y1.v == std::get<DiskPoint>(y).v);
}

TEST_CASE("moduli of uniform convexity") {
  Space e2 = Space::euclidean(2);
  CHECK(e2.modulus_eval(1.0, 0.5) == doctest::Approx(0.03125).epsilon(1e-15));
  CHECK(Space::lp(1.5, 3).modulus_eval(7.0, 1.0) == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(Space::lp(4.0, 3).modulus_eval(0.3, 1.0) == doctest::Approx(1.0 / 64).epsilon(1e-15));
  // radius-free: same value at a different radius
  CHECK(Space::lp(4.0, 3).modulus_eval(5.0, 1.0) == doctest::Approx(1.0 / 64).epsilon(1e-15));
  CHECK(e2.modulus().monotone_in_r);
  CHECK_THROWS_AS(e2.modulus_eval(0.0, 0.5), DomainError);
  CHECK_THROWS_AS(e2.modulus_eval(1.0, 2.5), DomainError);
  CHECK_THROWS_AS(e2.without_modulus().modulus_eval(1.0, 0.5), UnsupportedCapability);
}

TEST_CASE("domain errors") {
  Space e2 = Space::euclidean(2);
  Space e3 = Space::euclidean(3);
  CHECK_THROWS_AS(e2.distance(vec_point({0, 0}), vec_point({0, 0, 0})), DomainError);
  CHECK_THROWS_AS(e2.distance(vec_point({0, 0}), disk_point(0, 0)), DomainError);
  CHECK_THROWS_AS(e2.convex_combination(vec_point({0, 0}), vec_point({1, 1}), 1.5), DomainError);
  CHECK_THROWS_AS(e2.convex_combination(vec_point({0, 0}), vec_point({1, 1}), -0.1), DomainError);
  CHECK_THROWS_AS(Space::poincare_disk().require_point(disk_point(0.8, 0.7)), DomainError);
  CHECK_THROWS_AS(Space::lp(1.0, 2), DomainError);
  (void)e3;
}

TEST_CASE("w-axioms hold on sampled tuples in every model space") {
  const Space spaces[] = {Space::euclidean(3), Space::poincare_disk(),
                          Space::metric_tree(ts::tripod()), Space::lp(4.0, 3)};
  for (const auto& space : spaces) {
    CAPTURE(space.describe());
    Rng g(4242);
    const double tol = space.tol();
    for (int i = 0; i < 800; ++i) {
      Point x = sample_point(space, g);
      Point y = sample_point(space, g);
      Point z = sample_point(space, g);
      Point w = sample_point(space, g);
      double t = uniform01(g);
      double t2 = uniform01(g);
      Point m = space.convex_combination(x, y, t);
      // W1
      CHECK(space.distance(z, m) <=
            (1 - t) * space.distance(z, x) + t * space.distance(z, y) + tol);
      // W2
      double w2_lhs = space.distance(m, space.convex_combination(x, y, t2));
      double w2_rhs = std::abs(t - t2) * space.distance(x, y);
      CHECK(std::abs(w2_lhs - w2_rhs) <= tol * (1.0 + space.distance(x, y)));
      // W3
      CHECK(space.distance(m, space.convex_combination(y, x, 1.0 - t)) <= tol * 10);
      // W4 (Busemann form)
      CHECK(space.distance(m, space.convex_combination(z, w, t)) <=
            (1 - t) * space.distance(x, z) + t * space.distance(y, w) + tol);
      // geodesic parameterization
      CHECK(space.distance(x, m) == doctest::Approx(t * space.distance(x, y)).epsilon(1e-8));
    }
  }
}

TEST_CASE("declared moduli are monotone in the radius on sampled grids") {
  const Space spaces[] = {Space::euclidean(2), Space::poincare_disk(), Space::lp(1.5, 2),
                          Space::lp(4.0, 2)};
  for (const auto& space : spaces) {
    CAPTURE(space.describe());
    REQUIRE(space.modulus().monotone_in_r);
    Rng g(17);
    for (int i = 0; i < 200; ++i) {
      double r1 = uniform_in(g, 0.01, 10.0);
      double r2 = uniform_in(g, 0.01, 10.0);
      if (r1 > r2) std::swap(r1, r2);
      double eps = uniform_in(g, 0.01, 2.0);
      CHECK(space.modulus_eval(r1, eps) >= space.modulus_eval(r2, eps) - 1e-15);
    }
  }
}
