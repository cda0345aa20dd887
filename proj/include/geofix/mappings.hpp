#pragma once

#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "geofix/sets.hpp"

namespace geofix {

class Mapping;
using MappingRef = std::shared_ptr<const Mapping>;

struct IdentityMap {};

struct ProjectionMap {
  ConvexSet set;
};

// W(x, Tx, lambda) of a base mapping T, lambda in (0, 1).
struct AveragedMap {
  MappingRef base;
  double lambda = 0.5;
};

// Weighted combination of averaged retractions T_i = W(x, P_i x, lambda_i),
// folded right-to-left along geodesics with suffix-weight parameters.
struct CompositeMap {
  std::vector<MappingRef> retractions;
  std::vector<double> lambdas;
  std::vector<double> weights;  // sum to 1
};

// Test helpers, flagged non-library: not nonexpansive for factor > 1.
struct ScaleMap {
  double factor = 1.0;
  Point anchor;
};

struct RotationMap {
  double angle = 0.0;  // about the origin, Euclidean(2) only
};

class Mapping {
 public:
  using Node = std::variant<IdentityMap, ProjectionMap, AveragedMap, CompositeMap, ScaleMap,
                            RotationMap>;
  explicit Mapping(Node node) : node_(std::move(node)) {}
  const Node& node() const noexcept { return node_; }

 private:
  Node node_;
};

Mapping identity_map();
Mapping projection_map(ConvexSet set);
Mapping averaged_map(Mapping base, double lambda);
Mapping composite_map(std::vector<Mapping> retractions, std::vector<double> lambdas,
                      std::vector<double> weights);
Mapping scale_map(double factor, Point anchor);
Mapping rotation_map(double angle);

// False when the descriptor contains a Scale/Rotation helper.
bool is_library_mapping(const Mapping& m);
bool is_composite(const Mapping& m);

// Throws on malformed descriptors (weights, lambdas, set/space mismatches).
void validate_mapping(const Space& space, const Mapping& m);

Point apply(const Space& space, const Mapping& m, const Point& x);

struct FirmnessReport {
  bool holds = true;
  double worst_violation = 0.0;
  std::optional<std::pair<Point, Point>> witness_pair;
  std::vector<double> lambda_grid;
  int pairs_tested = 0;
};

inline const std::vector<double>& default_lambda_grid() {
  static const std::vector<double> grid{0.1, 0.25, 0.5, 0.75, 0.9};
  return grid;
}

// max over pairs of d(Tx,Ty) - d(x,y); holds iff <= tol (default: space tol)
FirmnessReport check_nonexpansive(const Space& space, const Mapping& m,
                                  std::span<const std::pair<Point, Point>> pairs,
                                  std::optional<double> tol = std::nullopt);

// max over pairs and grid of d(Tx,Ty) - d(W(x,Tx,l), W(y,Ty,l))
FirmnessReport check_lambda_firm(const Space& space, const Mapping& m,
                                 std::span<const double> lambda_grid,
                                 std::span<const std::pair<Point, Point>> pairs,
                                 std::optional<double> tol = std::nullopt);

// d(T^2 x, Tx) <= d(Tx, x) on sample points
FirmnessReport check_double_step_descent(const Space& space, const Mapping& m,
                                         std::span<const Point> points,
                                         std::optional<double> tol = std::nullopt);

// d(Tx,Ty) <= (1-l) d(Tx,y) + l(1-l) d(x,Ty) + (1-l)^2 d(y,Ty) + l^2 d(x,y)
// for an averaged mapping T with parameter l
FirmnessReport check_averaged_pair_inequality(const Space& space, const Mapping& averaged,
                                              double lambda,
                                              std::span<const std::pair<Point, Point>> pairs,
                                              std::optional<double> tol = std::nullopt);

struct FixedPointProbeEntry {
  Point candidate;
  double displacement = 0.0;
  bool fixed = false;
  std::vector<bool> member;
  bool member_all = false;
  bool consistent = false;  // fixed <=> member of every set
};

struct FixedPointProbeReport {
  std::vector<FixedPointProbeEntry> entries;
  bool consistent = true;
};

// Fixed points of the composite against the intersection of its sets:
// d(x,Tx) <= tol must coincide with membership in every set at 10*tol.
FixedPointProbeReport fixed_point_set_probe(const Space& space, const Mapping& composite,
                                            std::span<const ConvexSet> sets,
                                            std::span<const Point> candidates, double tol);

}  // namespace geofix
