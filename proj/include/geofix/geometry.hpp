#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "geofix/tree.hpp"

namespace geofix {

enum class SpaceKind { Euclidean, PoincareDisk, MetricTree, Lp };

// Coordinate vector (Euclidean and Lp spaces).
struct VecPoint {
  std::vector<double> x;
};

// Point of the open unit disk, u^2 + v^2 < 1.
struct DiskPoint {
  double u = 0.0;
  double v = 0.0;
};

// Position on a tree edge, measured from the edge's first endpoint.
struct TreePoint {
  int edge = 0;
  double offset = 0.0;
};

using Point = std::variant<VecPoint, DiskPoint, TreePoint>;

Point vec_point(std::vector<double> coords);
Point disk_point(double u, double v);
Point tree_point(int edge, double offset);

bool finite_point(const Point& p) noexcept;

// delta(r, eps) in (0, 1]; radius-free for all model spaces here.
struct ModulusOfConvexity {
  std::function<double(double r, double eps)> eval;
  bool monotone_in_r = true;
  bool radius_free = true;
};

ModulusOfConvexity cat0_modulus();          // eps^2 / 8
ModulusOfConvexity lp_modulus(double p);    // (p-1) eps^2 / 8  or  eps^p / (p 2^p)

// A model geodesic space: metric, convexity mapping W, and modulus of
// uniform convexity. Values are immutable; every operation is pure.
class Space {
 public:
  static Space euclidean(int dim);
  static Space poincare_disk();
  static Space lp(double p, int dim);
  static Space metric_tree(MetricTree tree);

  SpaceKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  double p_exponent() const noexcept { return p_; }
  const MetricTree& tree() const;
  // Geometric tolerance: 1e-9, loosened to 1e-6 in the disk.
  double tol() const noexcept;
  std::string describe() const;

  double distance(const Point& x, const Point& y) const;
  // W(x, y, t): the point of [x, y] with d(x, .) = t d(x, y). Returns the
  // inputs unchanged (same representation) at t = 0 and t = 1.
  Point convex_combination(const Point& x, const Point& y, double t) const;

  bool has_modulus() const noexcept { return modulus_.has_value(); }
  const ModulusOfConvexity& modulus() const;
  double modulus_eval(double r, double eps) const;
  Space without_modulus() const;

  // Throws DomainError if the point does not belong to this space.
  void require_point(const Point& p) const;

  // Maximum disk radius handed out by samplers and accepted by require_point.
  static constexpr double kDiskRadiusMax = 0.999;

 private:
  Space() = default;
  SpaceKind kind_ = SpaceKind::Euclidean;
  int dim_ = 0;
  double p_ = 2.0;
  std::shared_ptr<const MetricTree> tree_;
  std::optional<ModulusOfConvexity> modulus_;
};

// d(x, y) <= tol
bool same_point(const Space& space, const Point& x, const Point& y, double tol);

}  // namespace geofix
