#include "geofix/mappings.hpp"

#include <cmath>
#include <limits>

#include "geofix/errors.hpp"

namespace geofix {

Mapping identity_map() { return Mapping(IdentityMap{}); }

Mapping projection_map(ConvexSet set) { return Mapping(ProjectionMap{std::move(set)}); }

Mapping averaged_map(Mapping base, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("averaged lambda must lie in (0, 1)");
  return Mapping(AveragedMap{std::make_shared<const Mapping>(std::move(base)), lambda});
}

Mapping composite_map(std::vector<Mapping> retractions, std::vector<double> lambdas,
                      std::vector<double> weights) {
  const std::size_t r = retractions.size();
  if (r < 2) throw DomainError("composite needs at least two retractions");
  if (lambdas.size() != r || weights.size() != r) {
    throw DomainError("composite retraction/lambda/weight lists must have equal length");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0 && w < 1.0)) throw DomainError("composite weights must lie in (0, 1)");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw DomainError("composite weights must sum to 1");
  for (double l : lambdas) {
    if (!(l > 0.0 && l < 1.0)) throw DomainError("composite lambdas must lie in (0, 1)");
  }
  CompositeMap node;
  node.retractions.reserve(r);
  for (auto& m : retractions) node.retractions.push_back(std::make_shared<const Mapping>(std::move(m)));
  node.lambdas = std::move(lambdas);
  node.weights = std::move(weights);
  return Mapping(std::move(node));
}

Mapping scale_map(double factor, Point anchor) {
  if (!(factor >= 0.0) || !std::isfinite(factor)) throw DomainError("scale factor must be finite and >= 0");
  return Mapping(ScaleMap{factor, std::move(anchor)});
}

Mapping rotation_map(double angle) { return Mapping(RotationMap{angle}); }

bool is_library_mapping(const Mapping& m) {
  return std::visit(
      [](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ScaleMap> || std::is_same_v<T, RotationMap>) {
          return false;
        } else if constexpr (std::is_same_v<T, AveragedMap>) {
          return is_library_mapping(*node.base);
        } else if constexpr (std::is_same_v<T, CompositeMap>) {
          for (const auto& r : node.retractions) {
            if (!is_library_mapping(*r)) return false;
          }
          return true;
        } else {
          return true;
        }
      },
      m.node());
}

bool is_composite(const Mapping& m) { return std::holds_alternative<CompositeMap>(m.node()); }

void validate_mapping(const Space& space, const Mapping& m) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ProjectionMap>) {
          validate_set(space, node.set);
        } else if constexpr (std::is_same_v<T, AveragedMap>) {
          if (!(node.lambda > 0.0 && node.lambda < 1.0)) {
            throw DomainError("averaged lambda must lie in (0, 1)");
          }
          validate_mapping(space, *node.base);
        } else if constexpr (std::is_same_v<T, CompositeMap>) {
          if (node.retractions.size() < 2 || node.lambdas.size() != node.retractions.size() ||
              node.weights.size() != node.retractions.size()) {
            throw DomainError("composite retraction/lambda/weight lists must have equal length >= 2");
          }
          double sum = 0.0;
          for (double w : node.weights) sum += w;
          if (std::abs(sum - 1.0) > 1e-12) throw DomainError("composite weights must sum to 1");
          for (const auto& r : node.retractions) validate_mapping(space, *r);
        } else if constexpr (std::is_same_v<T, ScaleMap>) {
          space.require_point(node.anchor);
          if (space.kind() == SpaceKind::PoincareDisk || space.kind() == SpaceKind::MetricTree) {
            if (node.factor > 1.0) {
              throw DomainError("scale factors above 1 need a normed space");
            }
          }
        } else if constexpr (std::is_same_v<T, RotationMap>) {
          if (space.kind() != SpaceKind::Euclidean || space.dim() != 2) {
            throw UnsupportedCapability("rotations exist only in euclidean:2");
          }
        }
      },
      m.node());
}

Point apply(const Space& space, const Mapping& m, const Point& x) {
  return std::visit(
      [&](const auto& node) -> Point {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, IdentityMap>) {
          return x;
        } else if constexpr (std::is_same_v<T, ProjectionMap>) {
          return project(space, node.set, x).projected;
        } else if constexpr (std::is_same_v<T, AveragedMap>) {
          return space.convex_combination(x, apply(space, *node.base, x), node.lambda);
        } else if constexpr (std::is_same_v<T, CompositeMap>) {
          const int r = static_cast<int>(node.retractions.size());
          std::vector<Point> tx(static_cast<std::size_t>(r));
          for (int i = 0; i < r; ++i) {
            Point pix = apply(space, *node.retractions[static_cast<std::size_t>(i)], x);
            tx[static_cast<std::size_t>(i)] =
                space.convex_combination(x, pix, node.lambdas[static_cast<std::size_t>(i)]);
          }
          // suffix weights a_j = sum_{i=j..r} alpha_i (1-based)
          std::vector<double> suffix(static_cast<std::size_t>(r) + 2, 0.0);
          for (int j = r; j >= 1; --j) {
            suffix[static_cast<std::size_t>(j)] =
                suffix[static_cast<std::size_t>(j) + 1] + node.weights[static_cast<std::size_t>(j - 1)];
          }
          Point s = tx[static_cast<std::size_t>(r - 1)];
          for (int i = 1; i <= r - 2; ++i) {
            int j = r - i;
            double t = suffix[static_cast<std::size_t>(j) + 1] / suffix[static_cast<std::size_t>(j)];
            s = space.convex_combination(tx[static_cast<std::size_t>(j - 1)], s, t);
          }
          return space.convex_combination(tx[0], s, suffix[2]);
        } else if constexpr (std::is_same_v<T, ScaleMap>) {
          if (node.factor <= 1.0) {
            return space.convex_combination(node.anchor, x, node.factor);
          }
          if (space.kind() != SpaceKind::Euclidean && space.kind() != SpaceKind::Lp) {
            throw DomainError("scale factors above 1 need a normed space");
          }
          const auto& av = std::get<VecPoint>(node.anchor).x;
          const auto& xv = std::get<VecPoint>(x).x;
          std::vector<double> out(xv.size());
          for (std::size_t i = 0; i < xv.size(); ++i) out[i] = av[i] + node.factor * (xv[i] - av[i]);
          return VecPoint{std::move(out)};
        } else {
          if (space.kind() != SpaceKind::Euclidean || space.dim() != 2) {
            throw UnsupportedCapability("rotations exist only in euclidean:2");
          }
          const auto& xv = std::get<VecPoint>(x).x;
          double c = std::cos(node.angle);
          double s = std::sin(node.angle);
          return VecPoint{{c * xv[0] - s * xv[1], s * xv[0] + c * xv[1]}};
        }
      },
      m.node());
}

namespace {

FirmnessReport report_from_max(double worst, std::optional<std::pair<Point, Point>> witness,
                               double tol, int tested) {
  FirmnessReport rep;
  rep.worst_violation = worst;
  rep.witness_pair = std::move(witness);
  rep.holds = worst <= tol;
  rep.pairs_tested = tested;
  return rep;
}

}  // namespace

FirmnessReport check_nonexpansive(const Space& space, const Mapping& m,
                                  std::span<const std::pair<Point, Point>> pairs,
                                  std::optional<double> tol) {
  const double t = tol.value_or(space.tol());
  double worst = -std::numeric_limits<double>::infinity();
  std::optional<std::pair<Point, Point>> witness;
  for (const auto& [x, y] : pairs) {
    double v = space.distance(apply(space, m, x), apply(space, m, y)) - space.distance(x, y);
    if (v > worst) {
      worst = v;
      witness = std::make_pair(x, y);
    }
  }
  return report_from_max(worst, std::move(witness), t, static_cast<int>(pairs.size()));
}

FirmnessReport check_lambda_firm(const Space& space, const Mapping& m,
                                 std::span<const double> lambda_grid,
                                 std::span<const std::pair<Point, Point>> pairs,
                                 std::optional<double> tol) {
  if (lambda_grid.empty()) throw DomainError("lambda grid must be nonempty");
  const double t = tol.value_or(space.tol());
  double worst = -std::numeric_limits<double>::infinity();
  std::optional<std::pair<Point, Point>> witness;
  for (const auto& [x, y] : pairs) {
    Point tx = apply(space, m, x);
    Point ty = apply(space, m, y);
    double lhs = space.distance(tx, ty);
    for (double l : lambda_grid) {
      double rhs = space.distance(space.convex_combination(x, tx, l),
                                  space.convex_combination(y, ty, l));
      double v = lhs - rhs;
      if (v > worst) {
        worst = v;
        witness = std::make_pair(x, y);
      }
    }
  }
  auto rep = report_from_max(worst, std::move(witness), t, static_cast<int>(pairs.size()));
  rep.lambda_grid.assign(lambda_grid.begin(), lambda_grid.end());
  return rep;
}

FirmnessReport check_double_step_descent(const Space& space, const Mapping& m,
                                         std::span<const Point> points,
                                         std::optional<double> tol) {
  const double t = tol.value_or(space.tol());
  double worst = -std::numeric_limits<double>::infinity();
  std::optional<std::pair<Point, Point>> witness;
  for (const auto& x : points) {
    Point tx = apply(space, m, x);
    Point ttx = apply(space, m, tx);
    double v = space.distance(ttx, tx) - space.distance(tx, x);
    if (v > worst) {
      worst = v;
      witness = std::make_pair(x, tx);
    }
  }
  return report_from_max(worst, std::move(witness), t, static_cast<int>(points.size()));
}

FirmnessReport check_averaged_pair_inequality(const Space& space, const Mapping& averaged,
                                              double lambda,
                                              std::span<const std::pair<Point, Point>> pairs,
                                              std::optional<double> tol) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0, 1)");
  const double t = tol.value_or(space.tol());
  double worst = -std::numeric_limits<double>::infinity();
  std::optional<std::pair<Point, Point>> witness;
  const double l = lambda;
  for (const auto& [x, y] : pairs) {
    Point tx = apply(space, averaged, x);
    Point ty = apply(space, averaged, y);
    double lhs = space.distance(tx, ty);
    double rhs = (1.0 - l) * space.distance(tx, y) + l * (1.0 - l) * space.distance(x, ty) +
                 (1.0 - l) * (1.0 - l) * space.distance(y, ty) + l * l * space.distance(x, y);
    double v = lhs - rhs;
    if (v > worst) {
      worst = v;
      witness = std::make_pair(x, y);
    }
  }
  return report_from_max(worst, std::move(witness), t, static_cast<int>(pairs.size()));
}

FixedPointProbeReport fixed_point_set_probe(const Space& space, const Mapping& composite,
                                            std::span<const ConvexSet> sets,
                                            std::span<const Point> candidates, double tol) {
  FixedPointProbeReport rep;
  const double member_tol = 10.0 * tol;
  for (const auto& x : candidates) {
    FixedPointProbeEntry entry;
    entry.candidate = x;
    entry.displacement = space.distance(x, apply(space, composite, x));
    entry.fixed = entry.displacement <= tol;
    entry.member_all = true;
    for (const auto& set : sets) {
      bool in = membership(space, set, x, member_tol);
      entry.member.push_back(in);
      entry.member_all = entry.member_all && in;
    }
    entry.consistent = entry.fixed == entry.member_all;
    rep.consistent = rep.consistent && entry.consistent;
    rep.entries.push_back(std::move(entry));
  }
  return rep;
}

}  // namespace geofix
