#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "geofix/geometry.hpp"
#include "geofix/sampling.hpp"

namespace geofix {

enum class GeoProperty {
  W1,
  W2,
  W3,
  W4,
  GeodesicParam,
  ConvexMetric,
  Busemann,
  CN,
  Ptolemy,
  Betweenness,
  WeakBetweenness,
  UniformConvexity,
};

const char* property_name(GeoProperty p);
std::optional<GeoProperty> parse_property(const std::string& name);
// Expands group aliases ("w-axioms") and throws ConfigError on unknown names.
std::vector<GeoProperty> parse_property_list(const std::string& csv);

struct CheckReport {
  GeoProperty property = GeoProperty::W1;
  int samples_tested = 0;
  double max_violation = 0.0;  // scale-normalized
  double tolerance = 0.0;
  std::vector<Point> witness;  // empty when no violating sample was seen
  bool passed = true;
};

// Generic engines over (distance, combination, sampler) callables; the Space
// overloads below forward to these. Exposed so test fixtures can drive the
// same machinery with synthetic metrics.
using DistanceFn = std::function<double(const Point&, const Point&)>;
using CombineFn = std::function<Point(const Point&, const Point&, double)>;
using PointSamplerFn = std::function<Point(Rng&)>;

namespace engines {
CheckReport convex_metric(const DistanceFn& d, const CombineFn& w, const PointSamplerFn& sample,
                          int n, std::uint64_t seed, double tol);
CheckReport cn_inequality(const DistanceFn& d, const CombineFn& w, const PointSamplerFn& sample,
                          int n, std::uint64_t seed, double tol);
}  // namespace engines

CheckReport check_w1(const Space& space, int n, std::uint64_t seed);
CheckReport check_w2(const Space& space, int n, std::uint64_t seed);
CheckReport check_w3(const Space& space, int n, std::uint64_t seed);
CheckReport check_w4(const Space& space, int n, std::uint64_t seed);
CheckReport check_geodesic_param(const Space& space, int n, std::uint64_t seed);
CheckReport check_convex_metric(const Space& space, int n, std::uint64_t seed);
CheckReport check_busemann(const Space& space, int n, std::uint64_t seed);
CheckReport check_cn_inequality(const Space& space, int n, std::uint64_t seed);
CheckReport check_ptolemy(const Space& space, int n, std::uint64_t seed);
CheckReport check_betweenness_property(const Space& space, int n, std::uint64_t seed);
CheckReport check_weak_betweenness(const Space& space, int n, std::uint64_t seed);
CheckReport check_uniform_convexity(const Space& space, int n, std::uint64_t seed);

CheckReport run_check(const Space& space, GeoProperty property, int n, std::uint64_t seed);
std::vector<CheckReport> run_checks(const Space& space, const std::vector<GeoProperty>& properties,
                                    int n, std::uint64_t seed);

}  // namespace geofix
