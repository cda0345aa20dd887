#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geofix/mappings.hpp"

namespace geofix {

enum class Scheme { Picard, AlternatingProjection, Parallel };

const char* scheme_name(Scheme s);

// Finite orbit record. Gaps are kept in full; points are thinned to every
// k-th step once the configured cap is exceeded (the final point is always
// kept).
struct OrbitTrace {
  Scheme scheme = Scheme::Picard;
  std::vector<double> gaps;        // gaps[n] = d(x_n, x_{n+1})
  std::vector<Point> points;       // stored subset of the orbit
  std::vector<std::int64_t> point_steps;
  bool reached = false;            // gap <= eps_stop was observed
  double eps_stop = 0.0;
  std::string config_digest;

  std::int64_t steps() const noexcept { return static_cast<std::int64_t>(gaps.size()); }
};

OrbitTrace picard_orbit(const Space& space, const Mapping& m, const Point& x0, std::int64_t n_max,
                        double eps_stop, std::size_t point_cap = 10000);

OrbitTrace alternating_projections(const Space& space, const ConvexSet& a, const ConvexSet& b,
                                   const Point& x0, std::int64_t n_max, double eps_stop,
                                   std::size_t point_cap = 10000);

// Least n with gaps[n] <= eps; nullopt when never reached.
std::optional<std::int64_t> regularity_index(const OrbitTrace& trace, double eps);

// Last recorded gap: an anytime upper estimate of the minimal displacement.
double minimal_displacement_estimate(const OrbitTrace& trace);

// Last-quarter stored points, the finite surrogate for the orbit tail.
std::vector<Point> trace_tail(const OrbitTrace& trace);

struct CenterSearch {
  double step = 1e-3;
  // per-coordinate bounds; derived from the tail when absent
  std::optional<std::vector<double>> lo;
  std::optional<std::vector<double>> hi;
  std::size_t max_candidates = 20'000'000;
};

struct CenterResult {
  Point center;
  double radius = 0.0;
};

// Brute-force minimizer of max_n d(c, x_n) over a candidate grid.
CenterResult asymptotic_center(const Space& space, std::span<const Point> tail,
                               const CenterSearch& search);

struct PeriodicHit {
  std::int64_t start_step = 0;
  std::int64_t period = 0;
  double gap_at_start = 0.0;
};

struct PeriodicProbeReport {
  std::vector<PeriodicHit> hits;
  std::int64_t pairs_scanned = 0;
  bool clean() const noexcept { return hits.empty(); }
};

// Flags near-coincident points x_n ~ x_{n+k} (k >= 2) whose gap has not yet
// collapsed; any hit would be a periodic-but-not-fixed configuration.
PeriodicProbeReport periodic_point_probe(const Space& space, const OrbitTrace& trace, double tol);

struct DescentReport {
  bool holds = true;
  double worst_violation = 0.0;
  std::int64_t at_step = -1;
  std::int64_t checks = 0;
};

// gaps[n+1] <= gaps[n] + tol
DescentReport gaps_monotone(const OrbitTrace& trace, double tol);

// d(x_{n+1}, p) <= d(x_n, p) + tol along the stored subsequence
DescentReport fejer_descent(const Space& space, const OrbitTrace& trace, const Point& p, double tol);

// gaps[n]^2 <= d(x_n,p)^2 - d(x_{n+1},p)^2 + tol on stored consecutive steps
DescentReport quadratic_projection_descent(const Space& space, const OrbitTrace& trace,
                                           const Point& p, double tol);

// n g_i <= d(x_i, x_{i+n}) + n (1 + ((1+l)/l)^n)(g_i - g_{i+n}) + tol for
// sampled i and n; n is capped so (1 + 1/l)^n stays below 1e15.
DescentReport firmly_orbit_inequality(const Space& space, const OrbitTrace& trace, double lambda,
                                      double tol);

}  // namespace geofix
