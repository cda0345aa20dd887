#pragma once

#include <variant>
#include <vector>

#include "geofix/geometry.hpp"

namespace geofix {

// Closed metric ball; radius 0 gives a singleton.
struct Ball {
  Point center;
  double radius = 0.0;
};

// { x : <normal, x> <= offset }, normed spaces only.
struct HalfSpace {
  std::vector<double> normal;
  double offset = 0.0;
};

// Geodesic segment [a, b].
struct Segment {
  Point a;
  Point b;
};

// Convex hull of a connected vertex set of a metric tree: the union of all
// edges with both endpoints in the set.
struct Subtree {
  std::vector<int> vertices;
};

using ConvexSet = std::variant<Ball, HalfSpace, Segment, Subtree>;

struct ProjectionReport {
  Point projected;
  double dist_to_set = 0.0;
  int iterations_used = 0;  // 0 for closed-form projections
};

// Throws DomainError / UnsupportedCapability when the set does not describe
// a nonempty closed convex subset of this space.
void validate_set(const Space& space, const ConvexSet& set);

ProjectionReport project(const Space& space, const ConvexSet& set, const Point& x);
double set_distance(const Space& space, const ConvexSet& set, const Point& x);
bool membership(const Space& space, const ConvexSet& set, const Point& x, double tol);

// Golden-section fallback along the segment parameter (tolerance 1e-10);
// valid on any model space, used as a cross-check for the closed forms.
ProjectionReport project_segment_golden(const Space& space, const Segment& seg, const Point& x);

}  // namespace geofix
