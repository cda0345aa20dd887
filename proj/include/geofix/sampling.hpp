#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "geofix/geometry.hpp"

namespace geofix {

using Rng = std::mt19937_64;

// Raw-engine mappings only: std distributions are implementation-defined,
// these are reproducible everywhere.
inline double uniform01(Rng& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
inline double uniform_in(Rng& g, double lo, double hi) { return lo + (hi - lo) * uniform01(g); }
double gaussian(Rng& g);

// Space-aware point sampler: ball of radius `scale` around the origin for
// vector spaces, the Euclidean-radius-0.9 disk, edge-uniform on trees.
Point sample_point(const Space& space, Rng& g, double scale = 1.0);

std::vector<Point> sample_points(const Space& space, int n, std::uint64_t seed, double scale = 1.0);
std::vector<std::pair<Point, Point>> sample_pairs(const Space& space, int n, std::uint64_t seed,
                                                  double scale = 1.0);

}  // namespace geofix
