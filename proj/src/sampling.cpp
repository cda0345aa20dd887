#include "geofix/sampling.hpp"

#include <cmath>
#include <numbers>

namespace geofix {

double gaussian(Rng& g) {
  // Box-Muller on the raw engine
  double u1 = uniform01(g);
  double u2 = uniform01(g);
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Point sample_point(const Space& space, Rng& g, double scale) {
  switch (space.kind()) {
    case SpaceKind::Euclidean:
    case SpaceKind::Lp: {
      const int d = space.dim();
      std::vector<double> dir(static_cast<std::size_t>(d));
      double norm = 0.0;
      while (norm == 0.0) {
        for (auto& c : dir) c = gaussian(g);
        if (space.p_exponent() == 2.0) {
          double s = 0.0;
          for (double c : dir) s += c * c;
          norm = std::sqrt(s);
        } else {
          double s = 0.0;
          for (double c : dir) s += std::pow(std::abs(c), space.p_exponent());
          norm = std::pow(s, 1.0 / space.p_exponent());
        }
      }
      double radius = scale * std::pow(uniform01(g), 1.0 / d);
      for (auto& c : dir) c = c / norm * radius;
      return VecPoint{std::move(dir)};
    }
    case SpaceKind::PoincareDisk: {
      double r = 0.9 * std::sqrt(uniform01(g));
      double phi = uniform_in(g, 0.0, 2.0 * std::numbers::pi);
      return DiskPoint{r * std::cos(phi), r * std::sin(phi)};
    }
    case SpaceKind::MetricTree: {
      const auto& tree = space.tree();
      int e = static_cast<int>(g() % static_cast<std::uint64_t>(tree.edge_count()));
      double off = uniform_in(g, 0.0, tree.edge(e).length);
      return TreePoint{e, off};
    }
  }
  return VecPoint{};
}

std::vector<Point> sample_points(const Space& space, int n, std::uint64_t seed, double scale) {
  Rng g(seed);
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(sample_point(space, g, scale));
  return out;
}

std::vector<std::pair<Point, Point>> sample_pairs(const Space& space, int n, std::uint64_t seed,
                                                  double scale) {
  Rng g(seed);
  std::vector<std::pair<Point, Point>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Point a = sample_point(space, g, scale);
    Point b = sample_point(space, g, scale);
    out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

}  // namespace geofix
