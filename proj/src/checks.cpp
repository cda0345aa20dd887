#include "geofix/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geofix/errors.hpp"

namespace geofix {

const char* property_name(GeoProperty p) {
  switch (p) {
    case GeoProperty::W1:
      return "w1";
    case GeoProperty::W2:
      return "w2";
    case GeoProperty::W3:
      return "w3";
    case GeoProperty::W4:
      return "w4";
    case GeoProperty::GeodesicParam:
      return "geodesic-param";
    case GeoProperty::ConvexMetric:
      return "convex-metric";
    case GeoProperty::Busemann:
      return "busemann";
    case GeoProperty::CN:
      return "cn";
    case GeoProperty::Ptolemy:
      return "ptolemy";
    case GeoProperty::Betweenness:
      return "betweenness";
    case GeoProperty::WeakBetweenness:
      return "weak-betweenness";
    case GeoProperty::UniformConvexity:
      return "uniform-convexity";
  }
  return "?";
}

std::optional<GeoProperty> parse_property(const std::string& name) {
  static const std::vector<GeoProperty> all = {
      GeoProperty::W1,          GeoProperty::W2,       GeoProperty::W3,
      GeoProperty::W4,          GeoProperty::GeodesicParam, GeoProperty::ConvexMetric,
      GeoProperty::Busemann,    GeoProperty::CN,       GeoProperty::Ptolemy,
      GeoProperty::Betweenness, GeoProperty::WeakBetweenness, GeoProperty::UniformConvexity,
  };
  for (GeoProperty p : all) {
    if (name == property_name(p)) return p;
  }
  return std::nullopt;
}

std::vector<GeoProperty> parse_property_list(const std::string& csv) {
  std::vector<GeoProperty> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t comma = csv.find(',', pos);
    std::string token = csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!token.empty()) {
      if (token == "w-axioms") {
        out.insert(out.end(), {GeoProperty::W1, GeoProperty::W2, GeoProperty::W3, GeoProperty::W4,
                               GeoProperty::GeodesicParam});
      } else if (token == "all") {
        out.insert(out.end(),
                   {GeoProperty::W1, GeoProperty::W2, GeoProperty::W3, GeoProperty::W4,
                    GeoProperty::GeodesicParam, GeoProperty::ConvexMetric, GeoProperty::Busemann,
                    GeoProperty::CN, GeoProperty::Ptolemy, GeoProperty::Betweenness,
                    GeoProperty::WeakBetweenness, GeoProperty::UniformConvexity});
      } else {
        auto p = parse_property(token);
        if (!p) throw ConfigError("unknown property: " + token);
        out.push_back(*p);
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw ConfigError("empty property list");
  return out;
}

namespace {

// Violations are compared against tol * max(1, scale of the sample); the
// tracker keeps the normalized maximum and its witness.
class ViolationTracker {
 public:
  ViolationTracker(GeoProperty property, double tol) {
    report_.property = property;
    report_.tolerance = tol;
    report_.max_violation = -std::numeric_limits<double>::infinity();
  }

  void offer(double violation, double scale, std::initializer_list<Point> witness) {
    ++report_.samples_tested;
    double normalized = violation / std::max(1.0, scale);
    if (normalized > report_.max_violation) {
      report_.max_violation = normalized;
      report_.witness.assign(witness.begin(), witness.end());
    }
  }

  CheckReport finish() {
    if (report_.samples_tested == 0) report_.max_violation = 0.0;
    report_.passed = report_.max_violation <= report_.tolerance;
    if (report_.passed) report_.witness.clear();
    return std::move(report_);
  }

 private:
  CheckReport report_;
};

double tuple_scale(const DistanceFn& d, std::initializer_list<const Point*> pts) {
  double scale = 0.0;
  for (auto it = pts.begin(); it != pts.end(); ++it) {
    for (auto jt = std::next(it); jt != pts.end(); ++jt) {
      scale = std::max(scale, d(**it, **jt));
    }
  }
  return scale;
}

struct SpaceFns {
  DistanceFn d;
  CombineFn w;
  PointSamplerFn sample;
};

SpaceFns space_fns(const Space& space, double scale = 1.0) {
  SpaceFns f;
  f.d = [&space](const Point& a, const Point& b) { return space.distance(a, b); };
  f.w = [&space](const Point& a, const Point& b, double t) {
    return space.convex_combination(a, b, t);
  };
  f.sample = [&space, scale](Rng& g) { return sample_point(space, g, scale); };
  return f;
}

}  // namespace

namespace engines {

CheckReport convex_metric(const DistanceFn& d, const CombineFn& w, const PointSamplerFn& sample,
                          int n, std::uint64_t seed, double tol) {
  Rng g(seed);
  ViolationTracker tracker(GeoProperty::ConvexMetric, tol);
  for (int i = 0; i < n; ++i) {
    Point x = sample(g);
    Point y = sample(g);
    Point z = sample(g);
    double t = uniform01(g);
    Point m = w(y, z, t);
    double lhs = d(x, m);
    double rhs = (1.0 - t) * d(x, y) + t * d(x, z);
    tracker.offer(lhs - rhs, tuple_scale(d, {&x, &y, &z}), {x, y, z, m});
  }
  return tracker.finish();
}

CheckReport cn_inequality(const DistanceFn& d, const CombineFn& w, const PointSamplerFn& sample,
                          int n, std::uint64_t seed, double tol) {
  Rng g(seed);
  ViolationTracker tracker(GeoProperty::CN, tol);
  for (int i = 0; i < n; ++i) {
    Point x = sample(g);
    Point y1 = sample(g);
    Point y2 = sample(g);
    double t = uniform01(g);
    Point m = w(y1, y2, t);
    double dxm = d(x, m);
    double d1 = d(x, y1);
    double d2 = d(x, y2);
    double dyy = d(y1, y2);
    double lhs = dxm * dxm;
    double rhs = (1.0 - t) * d1 * d1 + t * d2 * d2 - t * (1.0 - t) * dyy * dyy;
    double scale = tuple_scale(d, {&x, &y1, &y2});
    tracker.offer(lhs - rhs, scale * scale, {x, y1, y2});
  }
  return tracker.finish();
}

}  // namespace engines

CheckReport check_w1(const Space& space, int n, std::uint64_t seed) {
  auto f = space_fns(space);
  Rng g(seed);
  ViolationTracker tracker(GeoProperty::W1, space.tol());
  for (int i = 0; i < n; ++i) {
    Point x = f.sample(g);
    Point y = f.sample(g);
    Point z = f.sample(g);
    double t = uniform01(g);
    Point m = f.w(x, y, t);
    double lhs = f.d(z, m);
    double rhs = (1.0 - t) * f.d(z, x) + t * f.d(z, y);
    tracker.offer(lhs - rhs, tuple_scale(f.d, {&x, &y, &z}), {x, y, z});
  }
  return tracker.finish();
}

CheckReport check_w2(const Space& space, int n, std::uint64_t seed) {
  auto f = space_fns(space);
  Rng g(seed);
  ViolationTracker tracker(GeoProperty::W2, space.tol());
  for (int i = 0; i < n; ++i) {
    Point x = f.sample(g);
    Point y = f.sample(g);
    double t = uniform01(g);
    double t2 = uniform01(g);
    double lhs = f.d(f.w(x, y, t), f.w(x, y, t2));
    double rhs = std::abs(t - t2) * f.d(x, y);
    tracker.offer(std::abs(lhs - rhs), tuple_scale(f.d, {&x, &y}), {x, y});
  }
  return tracker.finish();
}

CheckReport check_w3(const Space& space, int n, std::uint64_t seed) {
  auto f = space_fns(space);
  Rng g(seed);
  ViolationTracker tracker(GeoProperty::W3, space.tol());
  for (int i = 0; i < n; ++i) {
    Point x = f.sample(g);
    Point y = f.sample(g);
    double t = uniform01(g);
    double v = f.d(f.w(x, y, t), f.w(y, x, 1.0 - t));
    tracker.offer(v, tuple_scale(f.d, {&x, &y}), {x, y});
  }
  return tracker.finish();
}

CheckReport check_w4(const Space& space, int n, std::uint64_t seed) {
  auto f = space_fns(space);
  Rng g(seed);
  ViolationTracker tracker(GeoProperty::W4, space.tol());
  for (int i = 0; i < n; ++i) {
    Point x = f.sample(g);
    Point y = f.sample(g);
    Point z = f.sample(g);
    Point u = f.sample(g);
    double t = uniform01(g);
    double lhs = f.d(f.w(x, z, t), f.w(y, u, t));
    double rhs = (1.0 - t) * f.d(x, y) + t * f.d(z, u);
    tracker.offer(lhs - rhs, tuple_scale(f.d, {&x, &y, &z, &u}), {x, y, z, u});
  }
  return tracker.finish();
}

CheckReport check_geodesic_param(const Space& space, int n, std::uint64_t seed) {
  auto f = space_fns(space);
  Rng g(seed);
  ViolationTracker tracker(GeoProperty::GeodesicParam, space.tol());
  for (int i = 0; i < n; ++i) {
    Point x = f.sample(g);
    Point y = f.sample(g);
    double t = uniform01(g);
    Point m = f.w(x, y, t);
    double d = f.d(x, y);
    double v = std::max(std::abs(f.d(x, m) - t * d), std::abs(f.d(y, m) - (1.0 - t) * d));
    tracker.offer(v, d, {x, y, m});
  }
  return tracker.finish();
}

CheckReport check_convex_metric(const Space& space, int n, std::uint64_t seed) {
  auto f = space_fns(space);
  return engines::convex_metric(f.d, f.w, f.sample, n, seed, space.tol());
}

CheckReport check_busemann(const Space& space, int n, std::uint64_t seed) {
  auto f = space_fns(space);
  Rng g(seed);
  ViolationTracker tracker(GeoProperty::Busemann, space.tol());
  const double t_grid[] = {0.1, 0.25, 0.5, 0.75, 0.9};
  int quads = std::max(1, n / static_cast<int>(std::size(t_grid)));
  for (int i = 0; i < quads; ++i) {
    Point a0 = f.sample(g);
    Point a1 = f.sample(g);
    Point b0 = f.sample(g);
    Point b1 = f.sample(g);
    double scale = tuple_scale(f.d, {&a0, &a1, &b0, &b1});
    for (double t : t_grid) {
      double lhs = f.d(f.w(a0, a1, t), f.w(b0, b1, t));
      double rhs = (1.0 - t) * f.d(a0, b0) + t * f.d(a1, b1);
      tracker.offer(lhs - rhs, scale, {a0, a1, b0, b1});
    }
  }
  return tracker.finish();
}

CheckReport check_cn_inequality(const Space& space, int n, std::uint64_t seed) {
  auto f = space_fns(space);
  return engines::cn_inequality(f.d, f.w, f.sample, n, seed, space.tol());
}

CheckReport check_ptolemy(const Space& space, int n, std::uint64_t seed) {
  auto f = space_fns(space);
  Rng g(seed);
  ViolationTracker tracker(GeoProperty::Ptolemy, space.tol());
  for (int i = 0; i < n; ++i) {
    Point x = f.sample(g);
    Point y = f.sample(g);
    Point z = f.sample(g);
    Point u = f.sample(g);
    double lhs = f.d(x, z) * f.d(y, u);
    double rhs = f.d(x, y) * f.d(z, u) + f.d(x, u) * f.d(y, z);
    double scale = tuple_scale(f.d, {&x, &y, &z, &u});
    tracker.offer(lhs - rhs, scale * scale, {x, y, z, u});
  }
  return tracker.finish();
}

namespace {

// Constructed betweenness configurations: four points along one geodesic
// with pairwise separation bounded below. Measure-zero hypotheses cannot be
// hit by rejection sampling.
struct BetweennessSample {
  Point x, y, z, w;
  bool ok = false;
};

BetweennessSample sample_betweenness(const SpaceFns& f, Rng& g) {
  BetweennessSample s;
  for (int attempt = 0; attempt < 32; ++attempt) {
    Point x = f.sample(g);
    Point w = f.sample(g);
    if (f.d(x, w) < 1e-2) continue;
    double t1 = uniform_in(g, 0.2, 0.4);
    double t2 = uniform_in(g, 0.6, 0.8);
    s.x = std::move(x);
    s.y = f.w(s.x, w, t1);
    s.z = f.w(s.x, w, t2);
    s.w = std::move(w);
    s.ok = true;
    return s;
  }
  return s;
}

}  // namespace

CheckReport check_betweenness_property(const Space& space, int n, std::uint64_t seed) {
  auto f = space_fns(space);
  Rng g(seed);
  ViolationTracker tracker(GeoProperty::Betweenness, 1e-8);
  for (int i = 0; i < n; ++i) {
    auto s = sample_betweenness(f, g);
    if (!s.ok) continue;
    // hypothesis: y between x and z, z between y and w; conclusion: both lie
    // between x and w (additive identities)
    double dxw = f.d(s.x, s.w);
    double hyp1 = std::abs(f.d(s.x, s.z) - (f.d(s.x, s.y) + f.d(s.y, s.z)));
    double hyp2 = std::abs(f.d(s.y, s.w) - (f.d(s.y, s.z) + f.d(s.z, s.w)));
    double con1 = std::abs(dxw - (f.d(s.x, s.y) + f.d(s.y, s.w)));
    double con2 = std::abs(dxw - (f.d(s.x, s.z) + f.d(s.z, s.w)));
    double v = std::max({hyp1, hyp2, con1, con2});
    tracker.offer(v, dxw, {s.x, s.y, s.z, s.w});
  }
  return tracker.finish();
}

CheckReport check_weak_betweenness(const Space& space, int n, std::uint64_t seed) {
  auto f = space_fns(space);
  Rng g(seed);
  ViolationTracker tracker(GeoProperty::WeakBetweenness, 1e-8);
  for (int i = 0; i < n; ++i) {
    auto s = sample_betweenness(f, g);
    if (!s.ok) continue;
    double dxw = f.d(s.x, s.w);
    // forward hypothesis: y between x,z and z between x,w
    double fw1 = std::abs(f.d(s.x, s.z) - (f.d(s.x, s.y) + f.d(s.y, s.z)));
    double fw2 = std::abs(dxw - (f.d(s.x, s.z) + f.d(s.z, s.w)));
    // equivalent form: y between x,w and z between y,w
    double bw1 = std::abs(dxw - (f.d(s.x, s.y) + f.d(s.y, s.w)));
    double bw2 = std::abs(f.d(s.y, s.w) - (f.d(s.y, s.z) + f.d(s.z, s.w)));
    double v = std::max({fw1, fw2, bw1, bw2});
    tracker.offer(v, dxw, {s.x, s.y, s.z, s.w});
  }
  return tracker.finish();
}

CheckReport check_uniform_convexity(const Space& space, int n, std::uint64_t seed) {
  auto f = space_fns(space);
  Rng g(seed);
  ViolationTracker tracker(GeoProperty::UniformConvexity, space.tol());
  const auto& modulus = space.modulus();
  for (int i = 0; i < n; ++i) {
    Point a = f.sample(g);
    Point x = f.sample(g);
    Point y = f.sample(g);
    double r = std::max(f.d(x, a), f.d(y, a));
    if (r < 1e-6) continue;
    double eps = std::min(2.0, f.d(x, y) / r);
    if (eps < 0.01) continue;  // degenerate pair, hypothesis d(x,y) >= eps r unmet
    double delta = modulus.eval(r, eps);
    Point m = f.w(x, y, 0.5);
    double v = f.d(m, a) - (1.0 - delta) * r;
    tracker.offer(v, r, {a, x, y});
  }
  return tracker.finish();
}

CheckReport run_check(const Space& space, GeoProperty property, int n, std::uint64_t seed) {
  switch (property) {
    case GeoProperty::W1:
      return check_w1(space, n, seed);
    case GeoProperty::W2:
      return check_w2(space, n, seed);
    case GeoProperty::W3:
      return check_w3(space, n, seed);
    case GeoProperty::W4:
      return check_w4(space, n, seed);
    case GeoProperty::GeodesicParam:
      return check_geodesic_param(space, n, seed);
    case GeoProperty::ConvexMetric:
      return check_convex_metric(space, n, seed);
    case GeoProperty::Busemann:
      return check_busemann(space, n, seed);
    case GeoProperty::CN:
      return check_cn_inequality(space, n, seed);
    case GeoProperty::Ptolemy:
      return check_ptolemy(space, n, seed);
    case GeoProperty::Betweenness:
      return check_betweenness_property(space, n, seed);
    case GeoProperty::WeakBetweenness:
      return check_weak_betweenness(space, n, seed);
    case GeoProperty::UniformConvexity:
      return check_uniform_convexity(space, n, seed);
  }
  throw DomainError("unknown property");
}

std::vector<CheckReport> run_checks(const Space& space, const std::vector<GeoProperty>& properties,
                                    int n, std::uint64_t seed) {
  std::vector<CheckReport> out;
  out.reserve(properties.size());
  std::uint64_t k = 0;
  for (GeoProperty p : properties) {
    out.push_back(run_check(space, p, n, seed + 1000003 * k++));
  }
  return out;
}

}  // namespace geofix
