#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geofix/bignum.hpp"
#include "geofix/geometry.hpp"
#include "geofix/iteration.hpp"

namespace geofix {

// Exact nonnegative integer, or a saturation flag once the log-domain
// estimate passes 10^300 (the bound is then astronomically large and is
// reported only by magnitude).
struct ExtendedCount {
  std::optional<BigUint> value;
  double log10_magnitude = 0.0;

  bool saturated() const noexcept { return !value.has_value(); }
  bool admits(std::int64_t observed_index) const;  // observed <= bound
  std::string str() const;

  static ExtendedCount exact(BigUint v);
  static ExtendedCount saturated_at(double log10_estimate);
};

// Exponential regularity bound for averaged mappings:
// K M ceil(2 b e^{K(M+1)}) with K = max(ceil(1/l), ceil(1/(1-l))) and
// M = ceil(l (1 + 2b) / eps).
ExtendedCount averaged_rate(double eps, double b, double lambda);

// Exponential bound for l-firmly nonexpansive mappings:
// M ceil(2 b (1 + e^{K M}) / eps) with K = ceil(1/l), M = ceil(4b / eps).
ExtendedCount firmly_rate(double eps, double b, double lambda);

// floor(b^2 / eps^2) for eps < 2b, else 0.
ExtendedCount ap_rate(double eps, double b);

// floor(b / (eps K delta(b, eps/b))) for eps < 2b with
// K = min_i alpha_i lambda_i (1 - lambda_i); 0 otherwise.
ExtendedCount parallel_rate(double eps, double b, const ModulusOfConvexity& modulus,
                            std::span<const double> lambdas, std::span<const double> alphas);

using ModulusTilde = std::function<double(double r, double eps)>;

// Refinement for moduli of the form delta(r, eps) >= eps * delta~(r, eps)
// with delta~ increasing in eps: floor(b / (2 eps K delta~(b, eps/b))).
ExtendedCount parallel_rate_refined(double eps, double b, const ModulusTilde& modulus_tilde,
                                    std::span<const double> lambdas,
                                    std::span<const double> alphas);

ModulusTilde cat0_modulus_tilde();        // eps / 8
ModulusTilde lp_modulus_tilde(double p);  // (p-1) eps / 8  or  eps^{p-1} / (p 2^p)

enum class RateFormula { Averaged, Firmly, AlternatingProjection, Parallel, ParallelRefined };

const char* rate_formula_name(RateFormula f);
std::optional<RateFormula> parse_rate_formula(const std::string& name);

struct RateInputs {
  double epsilon = 0.0;
  double b = 0.0;
  std::vector<double> lambdas;  // one entry for averaged/firmly
  std::vector<double> alphas;   // parallel schemes
  std::optional<ModulusOfConvexity> modulus;
  ModulusTilde modulus_tilde;
  // Residual displacement of the comparison point in the firmly-rate
  // certificate (gap must fall below gamma + eps); 0 targets fixed points.
  double gamma = 0.0;
};

ExtendedCount rate_bound(const RateInputs& inputs, RateFormula formula);

struct RegularityCertificate {
  double epsilon = 0.0;
  std::optional<std::int64_t> observed_index;
  ExtendedCount bound;
  RateFormula formula = RateFormula::AlternatingProjection;
  bool passes = false;
};

// Pairs the observed regularity index of a trace with the matching bound.
// The formula must match the trace's scheme.
RegularityCertificate certify(const OrbitTrace& trace, const RateInputs& inputs,
                              RateFormula formula);

}  // namespace geofix
