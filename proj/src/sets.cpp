#include "geofix/sets.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <set>

#include "geofix/errors.hpp"

namespace geofix {

namespace {

using cplx = std::complex<double>;

cplx to_cplx(const DiskPoint& p) { return {p.u, p.v}; }
cplx mobius_to_origin(cplx a, cplx z) { return (z - a) / (1.0 - std::conj(a) * z); }
cplx mobius_from_origin(cplx a, cplx w) { return (w + a) / (1.0 + std::conj(a) * w); }

bool normed_space(const Space& s) {
  return s.kind() == SpaceKind::Euclidean || s.kind() == SpaceKind::Lp;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

ProjectionReport radial_ball_projection(const Space& space, const Ball& ball, const Point& x) {
  double d = space.distance(ball.center, x);
  ProjectionReport rep;
  if (d <= ball.radius) {
    rep.projected = x;
    rep.dist_to_set = 0.0;
    return rep;
  }
  rep.projected = space.convex_combination(ball.center, x, ball.radius / d);
  rep.dist_to_set = space.distance(x, rep.projected);
  return rep;
}

ProjectionReport halfspace_projection(const Space& space, const HalfSpace& hs, const Point& x) {
  const auto& xv = std::get<VecPoint>(x).x;
  double slack = dot(hs.normal, xv) - hs.offset;
  ProjectionReport rep;
  if (slack <= 0.0) {
    rep.projected = x;
    rep.dist_to_set = 0.0;
    return rep;
  }
  const double p = space.p_exponent();
  std::vector<double> out = xv;
  if (p == 2.0) {
    double nn = dot(hs.normal, hs.normal);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= slack / nn * hs.normal[i];
  } else {
    // minimize ||x - y||_p over <a, y> = offset: the correction is along
    // sign(a_i) |a_i|^{1/(p-1)}, scaled so the constraint is met exactly
    const double q = p / (p - 1.0);
    double denom = 0.0;
    for (double a : hs.normal) denom += std::pow(std::abs(a), q);
    std::vector<double> w(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      double a = hs.normal[i];
      w[i] = (a == 0.0 ? 0.0 : (a > 0 ? 1.0 : -1.0) * std::pow(std::abs(a), 1.0 / (p - 1.0)));
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= slack / denom * w[i];
  }
  rep.projected = VecPoint{std::move(out)};
  rep.dist_to_set = space.distance(x, rep.projected);
  return rep;
}

ProjectionReport euclidean_segment_projection(const Space& space, const Segment& seg,
                                              const Point& x) {
  const auto& a = std::get<VecPoint>(seg.a).x;
  const auto& b = std::get<VecPoint>(seg.b).x;
  const auto& xv = std::get<VecPoint>(x).x;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double ab = b[i] - a[i];
    num += (xv[i] - a[i]) * ab;
    den += ab * ab;
  }
  double t = den == 0.0 ? 0.0 : std::clamp(num / den, 0.0, 1.0);
  ProjectionReport rep;
  rep.projected = space.convex_combination(seg.a, seg.b, t);
  rep.dist_to_set = space.distance(x, rep.projected);
  return rep;
}

ProjectionReport disk_segment_projection(const Space& space, const Segment& seg, const Point& x) {
  cplx a = to_cplx(std::get<DiskPoint>(seg.a));
  cplx b = to_cplx(std::get<DiskPoint>(seg.b));
  cplx z0 = to_cplx(std::get<DiskPoint>(x));
  cplx zb = mobius_to_origin(a, b);
  double segr = std::abs(zb);
  ProjectionReport rep;
  if (segr == 0.0) {
    rep.projected = seg.a;
    rep.dist_to_set = space.distance(x, seg.a);
    return rep;
  }
  // isometry: a -> 0 and b -> segr on the positive real axis
  cplx rot = std::conj(zb) / segr;
  cplx z = rot * mobius_to_origin(a, z0);
  double u = z.real();
  double n2 = std::norm(z);
  // foot of the perpendicular geodesic onto the real diameter:
  // u p^2 - (1 + n2) p + u = 0, root inside (-1, 1)
  double p;
  if (std::abs(u) < 1e-300) {
    p = 0.0;
  } else {
    double s = 1.0 + n2;
    double disc = std::max(0.0, s * s - 4.0 * u * u);
    p = (s - std::sqrt(disc)) / (2.0 * u);
  }
  double pc = std::clamp(p, 0.0, segr);
  cplx proj = mobius_from_origin(a, std::conj(rot) * pc);
  rep.projected = DiskPoint{proj.real(), proj.imag()};
  rep.dist_to_set = space.distance(x, rep.projected);
  return rep;
}

ProjectionReport tree_segment_projection(const Space& space, const Segment& seg, const Point& x) {
  // gate point via the Gromov product: arclength from a equals
  // (d(x,a) + d(a,b) - d(x,b)) / 2, clamped to the segment
  double da = space.distance(x, seg.a);
  double db = space.distance(x, seg.b);
  double len = space.distance(seg.a, seg.b);
  ProjectionReport rep;
  if (len == 0.0) {
    rep.projected = seg.a;
    rep.dist_to_set = da;
    return rep;
  }
  double s = std::clamp((da + len - db) / 2.0, 0.0, len);
  rep.projected = space.convex_combination(seg.a, seg.b, s / len);
  rep.dist_to_set = space.distance(x, rep.projected);
  return rep;
}

bool subtree_has_vertex(const Subtree& st, int v) {
  return std::find(st.vertices.begin(), st.vertices.end(), v) != st.vertices.end();
}

ProjectionReport subtree_projection(const Space& space, const Subtree& st, const Point& x) {
  const auto& tree = space.tree();
  const auto& tp = std::get<TreePoint>(x);
  const auto& e = tree.edge(tp.edge);
  ProjectionReport rep;
  if (subtree_has_vertex(st, e.u) && subtree_has_vertex(st, e.v)) {
    rep.projected = x;
    rep.dist_to_set = 0.0;
    return rep;
  }
  // gate vertex: the nearest member vertex (the path to any point of the
  // subtree passes through it)
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (int v : st.vertices) {
    double d = std::min(tp.offset + tree.vertex_distance(e.u, v),
                        e.length - tp.offset + tree.vertex_distance(e.v, v));
    if (d < best_d) {
      best_d = d;
      best = v;
    }
  }
  // realize the gate vertex on an edge, preferring one inside the subtree
  int rep_edge = -1;
  bool at_u = false;
  for (int eid : tree.incident_edges(best)) {
    const auto& ed = tree.edge(eid);
    int other = ed.u == best ? ed.v : ed.u;
    if (rep_edge < 0 || subtree_has_vertex(st, other)) {
      rep_edge = eid;
      at_u = ed.u == best;
      if (subtree_has_vertex(st, other)) break;
    }
  }
  rep.projected = TreePoint{rep_edge, at_u ? 0.0 : tree.edge(rep_edge).length};
  rep.dist_to_set = best_d;
  return rep;
}

}  // namespace

void validate_set(const Space& space, const ConvexSet& set) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) {
          space.require_point(s.center);
          if (!(s.radius >= 0.0) || !std::isfinite(s.radius)) {
            throw DomainError("ball radius must be finite and nonnegative");
          }
        } else if constexpr (std::is_same_v<T, HalfSpace>) {
          if (!normed_space(space)) {
            throw UnsupportedCapability("half-spaces exist only in normed spaces");
          }
          if (static_cast<int>(s.normal.size()) != space.dim()) {
            throw DomainError("half-space normal dimension mismatch");
          }
          double nn = 0.0;
          for (double a : s.normal) nn += a * a;
          if (!(nn > 0.0)) throw DomainError("half-space normal must be nonzero");
        } else if constexpr (std::is_same_v<T, Segment>) {
          space.require_point(s.a);
          space.require_point(s.b);
        } else {
          if (space.kind() != SpaceKind::MetricTree) {
            throw UnsupportedCapability("subtrees exist only in metric trees");
          }
          if (s.vertices.empty()) throw DomainError("subtree vertex set must be nonempty");
          if (!space.tree().induces_connected_subgraph(s.vertices)) {
            throw DomainError("subtree vertex set must induce a connected subgraph");
          }
        }
      },
      set);
}

ProjectionReport project(const Space& space, const ConvexSet& set, const Point& x) {
  validate_set(space, set);
  space.require_point(x);
  return std::visit(
      [&](const auto& s) -> ProjectionReport {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return radial_ball_projection(space, s, x);
        } else if constexpr (std::is_same_v<T, HalfSpace>) {
          return halfspace_projection(space, s, x);
        } else if constexpr (std::is_same_v<T, Segment>) {
          switch (space.kind()) {
            case SpaceKind::Euclidean:
              return euclidean_segment_projection(space, s, x);
            case SpaceKind::PoincareDisk:
              return disk_segment_projection(space, s, x);
            case SpaceKind::MetricTree:
              return tree_segment_projection(space, s, x);
            case SpaceKind::Lp:
              return project_segment_golden(space, s, x);
          }
          throw DomainError("unreachable space kind");
        } else {
          return subtree_projection(space, s, x);
        }
      },
      set);
}

ProjectionReport project_segment_golden(const Space& space, const Segment& seg, const Point& x) {
  space.require_point(x);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = 1.0;
  auto eval = [&](double t) { return space.distance(x, space.convex_combination(seg.a, seg.b, t)); };
  double t1 = hi - inv_phi * (hi - lo);
  double t2 = lo + inv_phi * (hi - lo);
  double f1 = eval(t1);
  double f2 = eval(t2);
  int iters = 0;
  while (hi - lo > 1e-10) {
    ++iters;
    if (f1 <= f2) {
      hi = t2;
      t2 = t1;
      f2 = f1;
      t1 = hi - inv_phi * (hi - lo);
      f1 = eval(t1);
    } else {
      lo = t1;
      t1 = t2;
      f1 = f2;
      t2 = lo + inv_phi * (hi - lo);
      f2 = eval(t2);
    }
  }
  double t = (lo + hi) / 2.0;
  // snap to the endpoints when the minimizer sits on the boundary
  if (eval(0.0) <= eval(t)) t = 0.0;
  if (eval(1.0) < eval(t)) t = 1.0;
  ProjectionReport rep;
  rep.projected = space.convex_combination(seg.a, seg.b, t);
  rep.dist_to_set = space.distance(x, rep.projected);
  rep.iterations_used = iters;
  return rep;
}

double set_distance(const Space& space, const ConvexSet& set, const Point& x) {
  return project(space, set, x).dist_to_set;
}

bool membership(const Space& space, const ConvexSet& set, const Point& x, double tol) {
  return set_distance(space, set, x) <= tol;
}

}  // namespace geofix
