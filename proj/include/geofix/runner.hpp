#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "geofix/serialize.hpp"

namespace geofix {

// A fully resolved run: space, scheme, operands, stopping rule, the
// tolerances to certify, and the bound inputs.
struct RunConfig {
  Space space = Space::euclidean(1);
  std::string scheme = "picard";  // picard | ap | parallel
  std::vector<ConvexSet> sets;
  std::optional<Mapping> mapping;
  Point x0;
  std::vector<double> eps;
  std::int64_t n_max = 1000;
  double eps_stop = 0.0;
  std::size_t point_cap = 10000;
  std::uint64_t seed = 0;
  std::optional<double> b;
  std::optional<Point> common_point;
  std::vector<double> lambdas;  // parallel scheme
  std::vector<double> weights;  // parallel scheme
  std::optional<RateFormula> formula;
  double rate_lambda = 0.5;  // averaged/firmly formulas
  double gamma = 0.0;
  json raw;  // canonical config payload, carries the digest
};

// Throws ConfigError on invalid payloads. `seed_override` models the
// GEOFIX_SEED environment variable and lands in the digest-bearing payload.
RunConfig parse_run_config(const json& j, std::optional<std::uint64_t> seed_override = std::nullopt);

struct RunOutcome {
  OrbitTrace trace;
  std::vector<RegularityCertificate> certificates;
  json reports;
  std::string digest;
  bool certificates_pass = true;
};

RunOutcome execute_run(const RunConfig& config);

// trace.csv, trace.json, certificates.json, reports.json
void write_run_outputs(const RunOutcome& outcome, const std::filesystem::path& out_dir);

}  // namespace geofix
