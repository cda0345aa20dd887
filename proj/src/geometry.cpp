#include "geofix/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "geofix/errors.hpp"

namespace geofix {

namespace {

using cplx = std::complex<double>;

cplx to_cplx(const DiskPoint& p) { return {p.u, p.v}; }

// Disk isometry sending a to the origin.
cplx mobius_to_origin(cplx a, cplx z) { return (z - a) / (1.0 - std::conj(a) * z); }
cplx mobius_from_origin(cplx a, cplx w) { return (w + a) / (1.0 + std::conj(a) * w); }

double disk_metric(cplx z, cplx w) {
  double m = std::abs(mobius_to_origin(w, z));
  if (m >= 1.0) m = std::nextafter(1.0, 0.0);
  return std::log1p(2.0 * m / (1.0 - m));  // = log((1+m)/(1-m)) = 2 atanh m
}

double lp_norm(const std::vector<double>& v, double p) {
  if (p == 2.0) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
  }
  double s = 0.0;
  for (double c : v) s += std::pow(std::abs(c), p);
  return std::pow(s, 1.0 / p);
}

double tree_point_to_vertex(const MetricTree& tree, const TreePoint& p, int vertex) {
  const auto& e = tree.edge(p.edge);
  if (vertex == e.u) return p.offset;
  if (vertex == e.v) return e.length - p.offset;
  throw DomainError("vertex is not an endpoint of the point's edge");
}

struct TreeRoute {
  int exit_vertex = -1;   // endpoint of a's edge where the path leaves it
  int entry_vertex = -1;  // endpoint of b's edge where the path enters it
  double length = 0.0;
};

TreeRoute tree_route(const MetricTree& tree, const TreePoint& a, const TreePoint& b) {
  const auto& ea = tree.edge(a.edge);
  const auto& eb = tree.edge(b.edge);
  TreeRoute best;
  best.length = std::numeric_limits<double>::infinity();
  for (int u : {ea.u, ea.v}) {
    for (int v : {eb.u, eb.v}) {
      double len = tree_point_to_vertex(tree, a, u) + tree.vertex_distance(u, v) +
                   tree_point_to_vertex(tree, b, v);
      if (len < best.length) {
        best = TreeRoute{u, v, len};
      }
    }
  }
  return best;
}

double tree_metric(const MetricTree& tree, const TreePoint& a, const TreePoint& b) {
  if (a.edge == b.edge) return std::abs(a.offset - b.offset);
  return tree_route(tree, a, b).length;
}

TreePoint tree_move_within_edge(const MetricTree& tree, const TreePoint& from, int toward_vertex,
                                double dist) {
  const auto& e = tree.edge(from.edge);
  double off = toward_vertex == e.u ? from.offset - dist : from.offset + dist;
  off = std::clamp(off, 0.0, e.length);
  return TreePoint{from.edge, off};
}

TreePoint tree_combine(const MetricTree& tree, const TreePoint& a, const TreePoint& b, double t) {
  double total = tree_metric(tree, a, b);
  if (total == 0.0) return a;
  double target = t * total;
  if (a.edge == b.edge) {
    double dir = b.offset >= a.offset ? 1.0 : -1.0;
    return TreePoint{a.edge, a.offset + dir * target};
  }
  TreeRoute route = tree_route(tree, a, b);
  double leg = tree_point_to_vertex(tree, a, route.exit_vertex);
  if (target <= leg) return tree_move_within_edge(tree, a, route.exit_vertex, target);
  double rem = target - leg;
  int cur = route.exit_vertex;
  while (cur != route.entry_vertex) {
    int nxt = tree.next_hop(cur, route.entry_vertex);
    int eid = tree.edge_between(cur, nxt);
    const auto& e = tree.edge(eid);
    if (rem <= e.length) {
      double off = cur == e.u ? rem : e.length - rem;
      return TreePoint{eid, std::clamp(off, 0.0, e.length)};
    }
    rem -= e.length;
    cur = nxt;
  }
  // inside b's edge, entering through route.entry_vertex
  const auto& eb = tree.edge(b.edge);
  double off = route.entry_vertex == eb.u ? rem : eb.length - rem;
  return TreePoint{b.edge, std::clamp(off, 0.0, eb.length)};
}

}  // namespace

Point vec_point(std::vector<double> coords) { return VecPoint{std::move(coords)}; }
Point disk_point(double u, double v) { return DiskPoint{u, v}; }
Point tree_point(int edge, double offset) { return TreePoint{edge, offset}; }

bool finite_point(const Point& p) noexcept {
  return std::visit(
      [](const auto& q) -> bool {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, VecPoint>) {
          for (double c : q.x) {
            if (!std::isfinite(c)) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, DiskPoint>) {
          return std::isfinite(q.u) && std::isfinite(q.v);
        } else {
          return std::isfinite(q.offset);
        }
      },
      p);
}

ModulusOfConvexity cat0_modulus() {
  ModulusOfConvexity m;
  m.eval = [](double /*r*/, double eps) { return eps * eps / 8.0; };
  m.monotone_in_r = true;
  m.radius_free = true;
  return m;
}

ModulusOfConvexity lp_modulus(double p) {
  if (!(p > 1.0)) throw DomainError("lp modulus needs p > 1");
  ModulusOfConvexity m;
  if (p <= 2.0) {
    m.eval = [p](double /*r*/, double eps) { return (p - 1.0) * eps * eps / 8.0; };
  } else {
    m.eval = [p](double /*r*/, double eps) { return std::pow(eps, p) / (p * std::pow(2.0, p)); };
  }
  m.monotone_in_r = true;
  m.radius_free = true;
  return m;
}

Space Space::euclidean(int dim) {
  if (dim < 1) throw DomainError("euclidean dimension must be positive");
  Space s;
  s.kind_ = SpaceKind::Euclidean;
  s.dim_ = dim;
  s.p_ = 2.0;
  s.modulus_ = cat0_modulus();
  return s;
}

Space Space::poincare_disk() {
  Space s;
  s.kind_ = SpaceKind::PoincareDisk;
  s.dim_ = 2;
  s.modulus_ = cat0_modulus();
  return s;
}

Space Space::lp(double p, int dim) {
  if (dim < 1) throw DomainError("lp dimension must be positive");
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("lp exponent must satisfy 1 < p < inf");
  Space s;
  s.kind_ = SpaceKind::Lp;
  s.dim_ = dim;
  s.p_ = p;
  s.modulus_ = lp_modulus(p);
  return s;
}

Space Space::metric_tree(MetricTree tree) {
  Space s;
  s.kind_ = SpaceKind::MetricTree;
  s.tree_ = std::make_shared<MetricTree>(std::move(tree));
  s.modulus_ = cat0_modulus();
  return s;
}

const MetricTree& Space::tree() const {
  if (kind_ != SpaceKind::MetricTree) throw DomainError("space has no tree");
  return *tree_;
}

double Space::tol() const noexcept { return kind_ == SpaceKind::PoincareDisk ? 1e-6 : 1e-9; }

std::string Space::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case SpaceKind::Euclidean:
      os << "euclidean:" << dim_;
      break;
    case SpaceKind::PoincareDisk:
      os << "disk";
      break;
    case SpaceKind::Lp:
      os << "lp:" << p_ << ":" << dim_;
      break;
    case SpaceKind::MetricTree:
      os << "tree:" << tree_->vertex_count() << "v";
      break;
  }
  return os.str();
}

void Space::require_point(const Point& p) const {
  switch (kind_) {
    case SpaceKind::Euclidean:
    case SpaceKind::Lp: {
      const auto* v = std::get_if<VecPoint>(&p);
      if (v == nullptr) throw DomainError("point kind does not match space " + describe());
      if (static_cast<int>(v->x.size()) != dim_) {
        throw DomainError("point dimension does not match space " + describe());
      }
      return;
    }
    case SpaceKind::PoincareDisk: {
      const auto* d = std::get_if<DiskPoint>(&p);
      if (d == nullptr) throw DomainError("point kind does not match space " + describe());
      double r2 = d->u * d->u + d->v * d->v;
      if (!(r2 <= kDiskRadiusMax * kDiskRadiusMax + 1e-12)) {
        throw DomainError("disk point outside radius " + std::to_string(kDiskRadiusMax));
      }
      return;
    }
    case SpaceKind::MetricTree: {
      const auto* t = std::get_if<TreePoint>(&p);
      if (t == nullptr) throw DomainError("point kind does not match space " + describe());
      const auto& e = tree_->edge(t->edge);
      if (!(t->offset >= -1e-12 && t->offset <= e.length + 1e-12)) {
        throw DomainError("tree offset outside edge length");
      }
      return;
    }
  }
}

double Space::distance(const Point& x, const Point& y) const {
  require_point(x);
  require_point(y);
  switch (kind_) {
    case SpaceKind::Euclidean:
    case SpaceKind::Lp: {
      const auto& a = std::get<VecPoint>(x).x;
      const auto& b = std::get<VecPoint>(y).x;
      std::vector<double> diff(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
      return lp_norm(diff, p_);
    }
    case SpaceKind::PoincareDisk:
      return disk_metric(to_cplx(std::get<DiskPoint>(x)), to_cplx(std::get<DiskPoint>(y)));
    case SpaceKind::MetricTree:
      return tree_metric(*tree_, std::get<TreePoint>(x), std::get<TreePoint>(y));
  }
  throw DomainError("unreachable space kind");
}

Point Space::convex_combination(const Point& x, const Point& y, double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("convex combination parameter outside [0,1]");
  require_point(x);
  require_point(y);
  if (t == 0.0) return x;
  if (t == 1.0) return y;
  switch (kind_) {
    case SpaceKind::Euclidean:
    case SpaceKind::Lp: {
      const auto& a = std::get<VecPoint>(x).x;
      const auto& b = std::get<VecPoint>(y).x;
      std::vector<double> out(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) out[i] = (1.0 - t) * a[i] + t * b[i];
      return VecPoint{std::move(out)};
    }
    case SpaceKind::PoincareDisk: {
      cplx a = to_cplx(std::get<DiskPoint>(x));
      cplx b = to_cplx(std::get<DiskPoint>(y));
      cplx z = mobius_to_origin(a, b);
      double m = std::abs(z);
      if (m == 0.0) return x;
      double d = std::log1p(2.0 * m / (1.0 - m));
      double r = std::tanh(t * d / 2.0);
      cplx w = mobius_from_origin(a, z / m * r);
      return DiskPoint{w.real(), w.imag()};
    }
    case SpaceKind::MetricTree:
      return tree_combine(*tree_, std::get<TreePoint>(x), std::get<TreePoint>(y), t);
  }
  throw DomainError("unreachable space kind");
}

const ModulusOfConvexity& Space::modulus() const {
  if (!modulus_) throw UnsupportedCapability("space has no modulus of uniform convexity");
  return *modulus_;
}

double Space::modulus_eval(double r, double eps) const {
  if (!modulus_) throw UnsupportedCapability("space has no modulus of uniform convexity");
  if (!(r > 0.0)) throw DomainError("modulus radius must be positive");
  if (!(eps > 0.0 && eps <= 2.0)) throw DomainError("modulus eps must lie in (0, 2]");
  return modulus_->eval(r, eps);
}

Space Space::without_modulus() const {
  Space s = *this;
  s.modulus_.reset();
  return s;
}

bool same_point(const Space& space, const Point& x, const Point& y, double tol) {
  return space.distance(x, y) <= tol;
}

}  // namespace geofix
