#pragma once

#include <cmath>
#include <vector>

#include "geofix/geometry.hpp"
#include "geofix/tree.hpp"

namespace geofix::testsupport {

// Center o with leaves a, b, c; unit edges. Edge ids: 0 = o-a, 1 = o-b, 2 = o-c.
inline MetricTree tripod() {
  return MetricTree({"o", "a", "b", "c"},
                    {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
}

// A larger tree with uneven edge lengths for sampling-heavy checks.
inline MetricTree caterpillar() {
  return MetricTree({"v0", "v1", "v2", "v3", "v4", "v5", "v6"},
                    {{0, 1, 0.7},
                     {1, 2, 1.3},
                     {2, 3, 0.4},
                     {1, 4, 2.0},
                     {2, 5, 0.9},
                     {3, 6, 1.1}});
}

// Independent distance oracle: Floyd-Warshall over the vertex graph plus the
// four endpoint routes; shares no code with MetricTree's BFS tables.
inline double tree_distance_oracle(const MetricTree& t, const TreePoint& a, const TreePoint& b) {
  const int n = t.vertex_count();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 1e300));
  for (int v = 0; v < n; ++v) d[v][v] = 0.0;
  for (int e = 0; e < t.edge_count(); ++e) {
    const auto& ed = t.edge(e);
    d[ed.u][ed.v] = std::min(d[ed.u][ed.v], ed.length);
    d[ed.v][ed.u] = std::min(d[ed.v][ed.u], ed.length);
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  if (a.edge == b.edge) return std::abs(a.offset - b.offset);
  const auto& ea = t.edge(a.edge);
  const auto& eb = t.edge(b.edge);
  double best = 1e300;
  const double a_to[2] = {a.offset, ea.length - a.offset};
  const double b_to[2] = {b.offset, eb.length - b.offset};
  const int a_end[2] = {ea.u, ea.v};
  const int b_end[2] = {eb.u, eb.v};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      best = std::min(best, a_to[i] + d[a_end[i]][b_end[j]] + b_to[j]);
    }
  }
  return best;
}

// Independent disk distance: arcosh(1 + 2|z-w|^2 / ((1-|z|^2)(1-|w|^2))).
inline double disk_distance_arcosh(double u1, double v1, double u2, double v2) {
  double dz2 = (u1 - u2) * (u1 - u2) + (v1 - v2) * (v1 - v2);
  double den = (1.0 - u1 * u1 - v1 * v1) * (1.0 - u2 * u2 - v2 * v2);
  return std::acosh(1.0 + 2.0 * dz2 / den);
}

// Arc length of t -> W(x, y, t) under the disk metric 2|dz| / (1 - |z|^2),
// composite Simpson with central differences.
inline double disk_geodesic_length(const Space& disk, const Point& x, const Point& y, int panels = 400) {
  auto speed = [&](double t) {
    double h = 1e-6;
    double lo = std::max(0.0, t - h);
    double hi = std::min(1.0, t + h);
    auto p0 = std::get<DiskPoint>(disk.convex_combination(x, y, lo));
    auto p1 = std::get<DiskPoint>(disk.convex_combination(x, y, hi));
    double du = (p1.u - p0.u) / (hi - lo);
    double dv = (p1.v - p0.v) / (hi - lo);
    auto pm = std::get<DiskPoint>(disk.convex_combination(x, y, t));
    double r2 = pm.u * pm.u + pm.v * pm.v;
    return 2.0 * std::sqrt(du * du + dv * dv) / (1.0 - r2);
  };
  double h = 1.0 / panels;
  double sum = speed(0.0) + speed(1.0);
  for (int i = 1; i < panels; ++i) sum += speed(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace geofix::testsupport
