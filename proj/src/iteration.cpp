#include "geofix/iteration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geofix/errors.hpp"

namespace geofix {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Picard:
      return "picard";
    case Scheme::AlternatingProjection:
      return "ap";
    case Scheme::Parallel:
      return "parallel";
  }
  return "?";
}

namespace {

// Stores every point until the cap is hit, then thins to every 2nd, 4th, ...
class OrbitRecorder {
 public:
  OrbitRecorder(OrbitTrace& trace, std::size_t cap) : trace_(trace), cap_(std::max<std::size_t>(cap, 4)) {}

  void add(std::int64_t step, const Point& p) {
    last_step_ = step;
    last_point_ = p;
    if (step % stride_ != 0) return;
    trace_.points.push_back(p);
    trace_.point_steps.push_back(step);
    if (trace_.points.size() > cap_) thin();
  }

  void finish() {
    if (trace_.point_steps.empty() || trace_.point_steps.back() != last_step_) {
      trace_.points.push_back(last_point_);
      trace_.point_steps.push_back(last_step_);
    }
  }

 private:
  void thin() {
    std::size_t keep = 0;
    for (std::size_t i = 0; i < trace_.points.size(); i += 2) {
      trace_.points[keep] = std::move(trace_.points[i]);
      trace_.point_steps[keep] = trace_.point_steps[i];
      ++keep;
    }
    trace_.points.resize(keep);
    trace_.point_steps.resize(keep);
    stride_ *= 2;
  }

  OrbitTrace& trace_;
  std::size_t cap_;
  std::int64_t stride_ = 1;
  std::int64_t last_step_ = 0;
  Point last_point_;
};

void require_finite(const Point& p, std::int64_t step) {
  if (!finite_point(p)) throw NumericFailure("non-finite coordinates in orbit", step);
}

template <typename StepFn>
OrbitTrace run_orbit(const Space& space, Scheme scheme, const Point& x0, std::int64_t n_max,
                     double eps_stop, std::size_t point_cap, StepFn&& next_point) {
  if (n_max < 1) throw DomainError("orbit needs n_max >= 1");
  if (!(eps_stop >= 0.0)) throw DomainError("eps_stop must be nonnegative");
  space.require_point(x0);
  OrbitTrace trace;
  trace.scheme = scheme;
  trace.eps_stop = eps_stop;
  OrbitRecorder rec(trace, point_cap);
  Point x = x0;
  rec.add(0, x);
  for (std::int64_t n = 0; n < n_max; ++n) {
    Point y = next_point(n, x);
    require_finite(y, n + 1);
    double gap = space.distance(x, y);
    trace.gaps.push_back(gap);
    rec.add(n + 1, y);
    x = std::move(y);
    if (gap <= eps_stop) {
      trace.reached = true;
      break;
    }
  }
  rec.finish();
  return trace;
}

}  // namespace

OrbitTrace picard_orbit(const Space& space, const Mapping& m, const Point& x0, std::int64_t n_max,
                        double eps_stop, std::size_t point_cap) {
  validate_mapping(space, m);
  Scheme scheme = is_composite(m) ? Scheme::Parallel : Scheme::Picard;
  return run_orbit(space, scheme, x0, n_max, eps_stop, point_cap,
                   [&](std::int64_t, const Point& x) { return apply(space, m, x); });
}

OrbitTrace alternating_projections(const Space& space, const ConvexSet& a, const ConvexSet& b,
                                   const Point& x0, std::int64_t n_max, double eps_stop,
                                   std::size_t point_cap) {
  validate_set(space, a);
  validate_set(space, b);
  return run_orbit(space, Scheme::AlternatingProjection, x0, n_max, eps_stop, point_cap,
                   [&](std::int64_t n, const Point& x) {
                     const ConvexSet& set = (n % 2 == 0) ? a : b;
                     return project(space, set, x).projected;
                   });
}

std::optional<std::int64_t> regularity_index(const OrbitTrace& trace, double eps) {
  if (!(eps > 0.0)) throw DomainError("regularity index needs eps > 0");
  for (std::size_t n = 0; n < trace.gaps.size(); ++n) {
    if (trace.gaps[n] <= eps) return static_cast<std::int64_t>(n);
  }
  return std::nullopt;
}

double minimal_displacement_estimate(const OrbitTrace& trace) {
  if (trace.gaps.empty()) return 0.0;
  return trace.gaps.back();
}

std::vector<Point> trace_tail(const OrbitTrace& trace) {
  if (trace.points.empty()) return {};
  std::size_t start = trace.points.size() - std::max<std::size_t>(trace.points.size() / 4, 1);
  return {trace.points.begin() + static_cast<std::ptrdiff_t>(start), trace.points.end()};
}

namespace {

std::vector<double> point_coords(const Point& p) {
  if (const auto* v = std::get_if<VecPoint>(&p)) return v->x;
  if (const auto* d = std::get_if<DiskPoint>(&p)) return {d->u, d->v};
  throw DomainError("coordinate grid needs a vector or disk point");
}

}  // namespace

CenterResult asymptotic_center(const Space& space, std::span<const Point> tail,
                               const CenterSearch& search) {
  if (tail.empty()) throw DomainError("asymptotic center needs a nonempty tail");
  if (!(search.step > 0.0)) throw DomainError("center search step must be positive");

  std::vector<Point> candidates;
  if (space.kind() == SpaceKind::MetricTree) {
    const auto& tree = space.tree();
    for (int e = 0; e < tree.edge_count(); ++e) {
      double len = tree.edge(e).length;
      auto samples = static_cast<std::int64_t>(std::ceil(len / search.step));
      samples = std::min<std::int64_t>(samples, 100000);
      for (std::int64_t k = 0; k <= samples; ++k) {
        candidates.push_back(TreePoint{e, len * static_cast<double>(k) / static_cast<double>(samples)});
      }
      if (candidates.size() > search.max_candidates) {
        throw DomainError("center search grid too large");
      }
    }
  } else {
    // axis-aligned grid over the tail bounding box (or explicit bounds)
    std::vector<double> lo;
    std::vector<double> hi;
    if (search.lo && search.hi) {
      lo = *search.lo;
      hi = *search.hi;
    } else {
      lo = point_coords(tail[0]);
      hi = lo;
      for (const auto& p : tail) {
        auto c = point_coords(p);
        for (std::size_t i = 0; i < c.size(); ++i) {
          lo[i] = std::min(lo[i], c[i]);
          hi[i] = std::max(hi[i], c[i]);
        }
      }
      for (std::size_t i = 0; i < lo.size(); ++i) {
        lo[i] -= 2.0 * search.step;
        hi[i] += 2.0 * search.step;
      }
    }
    const std::size_t dims = lo.size();
    std::vector<std::int64_t> counts(dims);
    std::size_t total = 1;
    for (std::size_t i = 0; i < dims; ++i) {
      counts[i] = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor((hi[i] - lo[i]) / search.step)) + 1);
      total *= static_cast<std::size_t>(counts[i]);
      if (total > search.max_candidates) throw DomainError("center search grid too large");
    }
    std::vector<std::int64_t> idx(dims, 0);
    while (true) {
      std::vector<double> c(dims);
      for (std::size_t i = 0; i < dims; ++i) c[i] = lo[i] + search.step * static_cast<double>(idx[i]);
      bool ok = true;
      if (space.kind() == SpaceKind::PoincareDisk) {
        ok = c[0] * c[0] + c[1] * c[1] <= Space::kDiskRadiusMax * Space::kDiskRadiusMax;
      }
      if (ok) {
        if (space.kind() == SpaceKind::PoincareDisk) {
          candidates.push_back(DiskPoint{c[0], c[1]});
        } else {
          candidates.push_back(VecPoint{std::move(c)});
        }
      }
      std::size_t k = 0;
      while (k < dims && ++idx[k] == counts[k]) {
        idx[k] = 0;
        ++k;
      }
      if (k == dims) break;
    }
  }
  if (candidates.empty()) throw DomainError("center search produced no candidates");

  CenterResult best;
  double best_radius = std::numeric_limits<double>::infinity();
  for (auto& c : candidates) {
    double radius = 0.0;
    for (const auto& p : tail) {
      radius = std::max(radius, space.distance(c, p));
      if (radius >= best_radius) break;
    }
    if (radius < best_radius) {
      best_radius = radius;
      best.center = std::move(c);
    }
  }
  best.radius = best_radius;
  return best;
}

PeriodicProbeReport periodic_point_probe(const Space& space, const OrbitTrace& trace, double tol) {
  PeriodicProbeReport rep;
  const auto& steps = trace.point_steps;
  const std::size_t limit = std::min<std::size_t>(trace.points.size(), 2000);
  for (std::size_t i = 0; i < limit; ++i) {
    std::int64_t si = steps[i];
    // a point with a collapsed gap is (near-)fixed: not a periodic suspect
    if (si >= trace.steps() || trace.gaps[static_cast<std::size_t>(si)] <= tol) continue;
    for (std::size_t j = i + 1; j < limit; ++j) {
      std::int64_t k = steps[j] - si;
      if (k < 2) continue;
      ++rep.pairs_scanned;
      if (space.distance(trace.points[i], trace.points[j]) <= tol) {
        rep.hits.push_back(PeriodicHit{si, k, trace.gaps[static_cast<std::size_t>(si)]});
        break;
      }
    }
  }
  return rep;
}

DescentReport gaps_monotone(const OrbitTrace& trace, double tol) {
  DescentReport rep;
  // the first alternating-projection gap measures the arbitrary start point,
  // which no set contains; descent is guaranteed from the first projected
  // iterate on
  std::size_t start = trace.scheme == Scheme::AlternatingProjection ? 1 : 0;
  for (std::size_t n = start; n + 1 < trace.gaps.size(); ++n) {
    double v = trace.gaps[n + 1] - trace.gaps[n];
    ++rep.checks;
    if (v > rep.worst_violation) {
      rep.worst_violation = v;
      rep.at_step = static_cast<std::int64_t>(n);
    }
  }
  rep.holds = rep.worst_violation <= tol;
  return rep;
}

DescentReport fejer_descent(const Space& space, const OrbitTrace& trace, const Point& p,
                            double tol) {
  DescentReport rep;
  double prev = -1.0;
  for (std::size_t i = 0; i < trace.points.size(); ++i) {
    double d = space.distance(trace.points[i], p);
    if (i > 0) {
      double v = d - prev;
      ++rep.checks;
      if (v > rep.worst_violation) {
        rep.worst_violation = v;
        rep.at_step = trace.point_steps[i];
      }
    }
    prev = d;
  }
  rep.holds = rep.worst_violation <= tol;
  return rep;
}

DescentReport quadratic_projection_descent(const Space& space, const OrbitTrace& trace,
                                           const Point& p, double tol) {
  DescentReport rep;
  for (std::size_t i = 0; i + 1 < trace.points.size(); ++i) {
    if (trace.point_steps[i + 1] != trace.point_steps[i] + 1) continue;
    auto n = static_cast<std::size_t>(trace.point_steps[i]);
    if (n >= trace.gaps.size()) continue;
    double g = trace.gaps[n];
    double dn = space.distance(trace.points[i], p);
    double dn1 = space.distance(trace.points[i + 1], p);
    double v = g * g - (dn * dn - dn1 * dn1);
    ++rep.checks;
    if (v > rep.worst_violation) {
      rep.worst_violation = v;
      rep.at_step = static_cast<std::int64_t>(n);
    }
  }
  rep.holds = rep.worst_violation <= tol;
  return rep;
}

DescentReport firmly_orbit_inequality(const Space& space, const OrbitTrace& trace, double lambda,
                                      double tol) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0, 1)");
  DescentReport rep;
  const double ratio = (1.0 + lambda) / lambda;
  std::int64_t n_cap = 0;
  double pw = 1.0;
  while (pw * (1.0 + 1.0 / lambda) <= 1e15 && n_cap < 64) {
    pw *= 1.0 + 1.0 / lambda;
    ++n_cap;
  }
  for (std::size_t ia = 0; ia < trace.points.size(); ++ia) {
    std::int64_t si = trace.point_steps[ia];
    if (si < 1) continue;  // the inequality starts at i >= 1
    for (std::size_t ib = ia + 1; ib < trace.points.size(); ++ib) {
      std::int64_t n = trace.point_steps[ib] - si;
      if (n < 1 || n > n_cap) continue;
      auto gi = static_cast<std::size_t>(si);
      auto gin = static_cast<std::size_t>(si + n);
      if (gi >= trace.gaps.size() || gin >= trace.gaps.size()) continue;
      double lhs = static_cast<double>(n) * trace.gaps[gi];
      double amp = 1.0 + std::pow(ratio, static_cast<double>(n));
      double rhs = space.distance(trace.points[ia], trace.points[ib]) +
                   static_cast<double>(n) * amp * (trace.gaps[gi] - trace.gaps[gin]);
      double v = lhs - rhs;
      ++rep.checks;
      if (v > rep.worst_violation) {
        rep.worst_violation = v;
        rep.at_step = si;
      }
    }
    if (rep.checks > 200000) break;
  }
  rep.holds = rep.worst_violation <= tol;
  return rep;
}

}  // namespace geofix
