#include <doctest.h>

#include <cmath>

#include "geofix/errors.hpp"
#include "geofix/sampling.hpp"
#include "geofix/sets.hpp"
#include "support.hpp"

using namespace geofix;
namespace ts = geofix::testsupport;

TEST_CASE("euclidean ball and half-space projections") {
  Space e2 = Space::euclidean(2);
  auto rep = project(e2, Ball{vec_point({0, 0}), 1.0}, vec_point({2, 0}));
  CHECK(std::get<VecPoint>(rep.projected).x[0] == doctest::Approx(1.0));
  CHECK(rep.dist_to_set == doctest::Approx(1.0));
  CHECK(rep.iterations_used == 0);

  auto hs = project(e2, HalfSpace{{1, 0}, 0.0}, vec_point({1, 1}));
  CHECK(std::get<VecPoint>(hs.projected).x[0] == doctest::Approx(0.0));
  CHECK(std::get<VecPoint>(hs.projected).x[1] == doctest::Approx(1.0));
  CHECK(hs.dist_to_set == doctest::Approx(1.0));
}

TEST_CASE("subtree projection finds the gate vertex") {
  Space tree = Space::metric_tree(ts::tripod());
  Subtree ob{{ts::tripod().vertex_id("o"), ts::tripod().vertex_id("b")}};
  auto rep = project(tree, ob, tree_point(0, 1.0));  // leaf a
  CHECK(rep.dist_to_set == doctest::Approx(1.0));
  CHECK(tree.distance(rep.projected, tree_point(0, 0.0)) == doctest::Approx(0.0));  // the center
}

TEST_CASE("membership checks") {
  Space e2 = Space::euclidean(2);
  CHECK(membership(e2, Ball{vec_point({0, 0}), 1.0}, vec_point({0.5, 0}), 1e-9));
  CHECK_FALSE(membership(e2, Ball{vec_point({0, 0}), 1.0}, vec_point({1.001, 0}), 1e-9));
  Space tree = Space::metric_tree(ts::tripod());
  Subtree ob{{0, 2}};  // o, b
  CHECK(membership(tree, ob, tree_point(1, 0.5), 1e-9));       // midpoint of o-b
  CHECK_FALSE(membership(tree, ob, tree_point(0, 0.5), 1e-9)); // midpoint of o-a
}

TEST_CASE("projection validation errors") {
  Space disk = Space::poincare_disk();
  CHECK_THROWS_AS(project(disk, HalfSpace{{1, 0}, 0.0}, disk_point(0, 0)), UnsupportedCapability);
  Space e2 = Space::euclidean(2);
  CHECK_THROWS_AS(project(e2, Subtree{{0}}, vec_point({0, 0})), UnsupportedCapability);
  CHECK_THROWS_AS(validate_set(e2, Ball{vec_point({0, 0}), -1.0}), DomainError);
  CHECK_THROWS_AS(validate_set(e2, HalfSpace{{0, 0}, 1.0}), DomainError);
  Space tree = Space::metric_tree(ts::tripod());
  CHECK_THROWS_AS(validate_set(tree, Subtree{{1, 2}}), DomainError);  // a,b not adjacent
  CHECK_THROWS_AS(validate_set(tree, Subtree{{}}), DomainError);
}

TEST_CASE("projections are idempotent and minimize distance over set samples") {
  const Space spaces[] = {Space::euclidean(2), Space::poincare_disk(),
                          Space::metric_tree(ts::caterpillar()), Space::lp(4.0, 3)};
  for (const auto& space : spaces) {
    CAPTURE(space.describe());
    Rng g(314);
    std::vector<ConvexSet> sets;
    Point c = sample_point(space, g, 0.5);
    sets.push_back(Ball{c, 0.4});
    sets.push_back(Segment{sample_point(space, g, 0.7), sample_point(space, g, 0.7)});
    if (space.kind() == SpaceKind::Euclidean || space.kind() == SpaceKind::Lp) {
      std::vector<double> normal(static_cast<std::size_t>(space.dim()), 0.0);
      normal[0] = 1.0;
      normal.back() = -0.5;
      sets.push_back(HalfSpace{normal, 0.1});
    }
    if (space.kind() == SpaceKind::MetricTree) {
      sets.push_back(Subtree{{1, 2, 5}});  // connected chain in the caterpillar
    }
    for (const auto& set : sets) {
      for (int i = 0; i < 20; ++i) {
        Point x = sample_point(space, g);
        auto rep = project(space, set, x);
        // reported distance is the distance to the projected point
        CHECK(rep.dist_to_set ==
              doctest::Approx(space.distance(x, rep.projected)).epsilon(1e-9));
        // idempotence
        auto rep2 = project(space, set, rep.projected);
        CHECK(rep2.dist_to_set <= space.tol() * 10);
        // membership of the projected point
        CHECK(membership(space, set, rep.projected, space.tol() * 10));
        // verification sample: 64 pseudo-random set points, none closer
        for (int k = 0; k < 64; ++k) {
          Point s = project(space, set, sample_point(space, g)).projected;
          CHECK(space.distance(x, rep.projected) <= space.distance(x, s) + 1e-7);
        }
      }
    }
  }
}

TEST_CASE("projections are nonexpansive and firmly nonexpansive in the CAT(0) models") {
  const Space spaces[] = {Space::euclidean(2), Space::poincare_disk(),
                          Space::metric_tree(ts::caterpillar())};
  const double grid[] = {0.1, 0.5, 0.9};
  for (const auto& space : spaces) {
    CAPTURE(space.describe());
    Rng g(2718);
    std::vector<ConvexSet> sets;
    sets.push_back(Ball{sample_point(space, g, 0.5), 0.35});
    sets.push_back(Segment{sample_point(space, g, 0.8), sample_point(space, g, 0.8)});
    if (space.kind() == SpaceKind::Euclidean) sets.push_back(HalfSpace{{0.6, -0.8}, 0.05});
    if (space.kind() == SpaceKind::MetricTree) sets.push_back(Subtree{{0, 1, 4}});
    for (const auto& set : sets) {
      for (int i = 0; i < 250; ++i) {
        Point x = sample_point(space, g);
        Point y = sample_point(space, g);
        Point px = project(space, set, x).projected;
        Point py = project(space, set, y).projected;
        double dxy = space.distance(x, y);
        CHECK(space.distance(px, py) <= dxy + space.tol());
        // lambda-firm inequality for the projection, spot-checked on a grid
        for (double l : grid) {
          double rhs = space.distance(space.convex_combination(x, px, l),
                                      space.convex_combination(y, py, l));
          CHECK(space.distance(px, py) <= rhs + space.tol() * 10);
        }
      }
    }
  }
}

TEST_CASE("disk segment projection agrees with a dense grid minimizer") {
  Space disk = Space::poincare_disk();
  Rng g(555);
  for (int trial = 0; trial < 40; ++trial) {
    Segment seg{sample_point(disk, g), sample_point(disk, g)};
    Point x = sample_point(disk, g);
    auto rep = project(disk, seg, x);
    double best = 1e300;
    const int grid_n = 20000;
    for (int k = 0; k <= grid_n; ++k) {
      double t = static_cast<double>(k) / grid_n;
      best = std::min(best, disk.distance(x, disk.convex_combination(seg.a, seg.b, t)));
    }
    CHECK(rep.dist_to_set == doctest::Approx(best).epsilon(1e-5));
    // golden-section fallback lands on the same point
    auto gold = project_segment_golden(disk, seg, x);
    CHECK(gold.iterations_used > 0);
    CHECK(disk.distance(gold.projected, rep.projected) <= 1e-5);
  }
}

TEST_CASE("lp segment projection matches golden-section and stays optimal") {
  Space l4 = Space::lp(4.0, 3);
  Rng g(808);
  for (int trial = 0; trial < 30; ++trial) {
    Segment seg{sample_point(l4, g), sample_point(l4, g)};
    Point x = sample_point(l4, g);
    auto rep = project(l4, seg, x);
    const int grid_n = 4000;
    double best = 1e300;
    for (int k = 0; k <= grid_n; ++k) {
      double t = static_cast<double>(k) / grid_n;
      best = std::min(best, l4.distance(x, l4.convex_combination(seg.a, seg.b, t)));
    }
    CHECK(rep.dist_to_set <= best + 1e-7);
  }
}

TEST_CASE("lp half-space projection satisfies the optimality conditions") {
  Space l4 = Space::lp(4.0, 3);
  Rng g(4444);
  HalfSpace hs{{1.0, -2.0, 0.5}, 0.3};
  for (int i = 0; i < 200; ++i) {
    Point x = sample_point(l4, g, 2.0);
    auto rep = project(l4, hs, x);
    CHECK(membership(l4, hs, rep.projected, 1e-9));
    // no member sample beats the projection
    for (int k = 0; k < 24; ++k) {
      Point s = project(l4, hs, sample_point(l4, g, 2.0)).projected;
      CHECK(l4.distance(x, rep.projected) <= l4.distance(x, s) + 1e-9);
    }
    // perturbations along the boundary do not improve (local optimality)
    const auto& pv = std::get<VecPoint>(rep.projected).x;
    const auto& xv = std::get<VecPoint>(x).x;
    if (l4.distance(x, rep.projected) > 1e-9) {
      for (int axis = 0; axis < 2; ++axis) {
        // tangent direction within the hyperplane
        std::vector<double> dir(3, 0.0);
        dir[axis] = hs.normal[2];
        dir[2] = -hs.normal[axis];
        for (double step : {1e-4, -1e-4}) {
          std::vector<double> q(3);
          for (int j = 0; j < 3; ++j) q[j] = pv[j] + step * dir[j];
          double base = l4.distance(x, rep.projected);
          double moved = l4.distance(x, vec_point(q));
          CHECK(moved >= base - 1e-6);
        }
      }
    }
    (void)xv;
  }
}
