#include "geofix/rates.hpp"

#include <cmath>

#include "geofix/errors.hpp"

namespace geofix {

namespace {

constexpr double kLog10Saturation = 300.0;
constexpr double kLog10E = 0.43429448190325176;
constexpr std::size_t kFracBits = 1280;

BigRational rat(double x) { return BigRational::from_double_decimal(x); }

// Integer extraction with a boundary snap: inputs are doubles standing in
// for intended real values, so a value within relative 1e-12 of an integer
// is treated as that integer. The snap moves a result by at most one, which
// keeps large bounds intact; anything further from the boundary is exact.
constexpr std::uint64_t kNudgeDen = 1000000000000ull;

BigUint floor_up(const BigRational& q) {
  BigUint plain = q.floor();
  BigUint nudged = BigRational{q.num * BigUint(kNudgeDen + 1), q.den * BigUint(kNudgeDen)}.floor();
  if (nudged == plain + BigUint(1)) return nudged;
  return plain;
}

BigUint ceil_down(const BigRational& q) {
  BigUint plain = q.ceil();
  BigUint nudged = BigRational{q.num * BigUint(kNudgeDen - 1), q.den * BigUint(kNudgeDen)}.ceil();
  if (plain == nudged + BigUint(1)) return nudged;
  return plain;
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(what) + " must be positive and finite");
}

void require_open_unit(double l, const char* what) {
  if (!(l > 0.0 && l < 1.0)) throw DomainError(std::string(what) + " must lie in (0, 1)");
}

ExtendedCount from_value(BigUint v) {
  ExtendedCount c;
  c.log10_magnitude = v.log10_approx();
  c.value = std::move(v);
  return c;
}

// 1 + e^x as an exact rational upper bound, x a nonnegative integer
BigRational one_plus_exp_upper(std::uint64_t x) {
  BigUint e = exp_upper_fixed(x, kFracBits);
  return BigRational{e + BigUint::pow2(kFracBits), BigUint::pow2(kFracBits)};
}

BigRational exp_upper(std::uint64_t x) {
  return BigRational{exp_upper_fixed(x, kFracBits), BigUint::pow2(kFracBits)};
}

}  // namespace

ExtendedCount ExtendedCount::exact(BigUint v) { return from_value(std::move(v)); }

ExtendedCount ExtendedCount::saturated_at(double log10_estimate) {
  ExtendedCount c;
  c.log10_magnitude = log10_estimate;
  return c;
}

bool ExtendedCount::admits(std::int64_t observed_index) const {
  if (saturated()) return true;
  if (observed_index < 0) return true;
  return BigUint(static_cast<std::uint64_t>(observed_index)) <= *value;
}

std::string ExtendedCount::str() const {
  if (saturated()) {
    return "saturated(~10^" + std::to_string(static_cast<long long>(std::llround(log10_magnitude))) + ")";
  }
  return value->to_decimal();
}

ExtendedCount averaged_rate(double eps, double b, double lambda) {
  require_positive(eps, "eps");
  require_positive(b, "b");
  require_open_unit(lambda, "lambda");
  // K = max(ceil(1/l), ceil(1/(1-l)))
  BigUint k1 = ceil_down(BigRational::ratio(rat(1.0), rat(lambda)));
  BigUint k2 = ceil_down(BigRational::ratio(rat(1.0), rat(1.0 - lambda)));
  BigUint k = std::max(k1, k2);
  // M = ceil(l (1 + 2b) / eps)
  BigRational m_rat = BigRational::ratio(rat(lambda) * (rat(1.0) + rat(2.0) * rat(b)), rat(eps));
  BigUint m = ceil_down(m_rat);
  // exponent n = K (M + 1)
  BigUint n = k * (m + BigUint(1));
  double estimate = k.log10_approx() + m.log10_approx() + std::log10(2.0 * b) +
                    n.to_double() * kLog10E;
  if (!(estimate <= kLog10Saturation)) return ExtendedCount::saturated_at(estimate);
  BigRational inner = rat(2.0) * rat(b) * exp_upper(n.to_uint64());
  return ExtendedCount::exact(k * m * ceil_down(inner));
}

ExtendedCount firmly_rate(double eps, double b, double lambda) {
  require_positive(eps, "eps");
  require_positive(b, "b");
  require_open_unit(lambda, "lambda");
  BigUint k = ceil_down(BigRational::ratio(rat(1.0), rat(lambda)));
  BigUint m = ceil_down(BigRational::ratio(rat(4.0) * rat(b), rat(eps)));
  BigUint n = k * m;
  double estimate = m.log10_approx() + std::log10(2.0 * b / eps) + n.to_double() * kLog10E;
  if (!(estimate <= kLog10Saturation)) return ExtendedCount::saturated_at(estimate);
  BigRational inner = BigRational::ratio(rat(2.0) * rat(b) * one_plus_exp_upper(n.to_uint64()), rat(eps));
  return ExtendedCount::exact(m * ceil_down(inner));
}

ExtendedCount ap_rate(double eps, double b) {
  require_positive(eps, "eps");
  require_positive(b, "b");
  if (!(eps < 2.0 * b)) return ExtendedCount::exact(BigUint(0));
  BigRational q = BigRational::ratio(rat(b) * rat(b), rat(eps) * rat(eps));
  return ExtendedCount::exact(floor_up(q));
}

namespace {

// exact min over i of alpha_i lambda_i (1 - lambda_i)
BigRational min_weight_product(std::span<const double> lambdas, std::span<const double> alphas) {
  if (lambdas.size() != alphas.size() || lambdas.size() < 2) {
    throw DomainError("parallel rate needs matching lambda/alpha lists of length >= 2");
  }
  double sum = 0.0;
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("weights must lie in (0, 1)");
    sum += a;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw DomainError("weights must sum to 1");
  std::optional<BigRational> best;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    require_open_unit(lambdas[i], "lambda");
    BigRational cur = rat(alphas[i]) * rat(lambdas[i]) * rat(1.0 - lambdas[i]);
    if (!best || BigRational::compare(cur, *best) < 0) best = std::move(cur);
  }
  return *best;
}

}  // namespace

ExtendedCount parallel_rate(double eps, double b, const ModulusOfConvexity& modulus,
                            std::span<const double> lambdas, std::span<const double> alphas) {
  require_positive(eps, "eps");
  require_positive(b, "b");
  if (!modulus.eval) throw DomainError("parallel rate needs a modulus");
  BigRational kmin = min_weight_product(lambdas, alphas);
  if (!(eps < 2.0 * b)) return ExtendedCount::exact(BigUint(0));
  double delta = modulus.eval(b, eps / b);
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("modulus value outside (0, 1]");
  BigRational denom = rat(eps) * kmin * rat(delta);
  return ExtendedCount::exact(floor_up(BigRational::ratio(rat(b), denom)));
}

ExtendedCount parallel_rate_refined(double eps, double b, const ModulusTilde& modulus_tilde,
                                    std::span<const double> lambdas,
                                    std::span<const double> alphas) {
  require_positive(eps, "eps");
  require_positive(b, "b");
  if (!modulus_tilde) throw DomainError("refined parallel rate needs a modulus factor");
  BigRational kmin = min_weight_product(lambdas, alphas);
  if (!(eps < 2.0 * b)) return ExtendedCount::exact(BigUint(0));
  double delta_t = modulus_tilde(b, eps / b);
  if (!(delta_t > 0.0)) throw DomainError("modulus factor must be positive");
  BigRational denom = rat(2.0) * rat(eps) * kmin * rat(delta_t);
  return ExtendedCount::exact(floor_up(BigRational::ratio(rat(b), denom)));
}

ModulusTilde cat0_modulus_tilde() {
  return [](double /*r*/, double eps) { return eps / 8.0; };
}

ModulusTilde lp_modulus_tilde(double p) {
  if (!(p > 1.0)) throw DomainError("lp modulus needs p > 1");
  if (p <= 2.0) {
    return [p](double /*r*/, double eps) { return (p - 1.0) * eps / 8.0; };
  }
  return [p](double /*r*/, double eps) { return std::pow(eps, p - 1.0) / (p * std::pow(2.0, p)); };
}

const char* rate_formula_name(RateFormula f) {
  switch (f) {
    case RateFormula::Averaged:
      return "averaged";
    case RateFormula::Firmly:
      return "firmly";
    case RateFormula::AlternatingProjection:
      return "ap";
    case RateFormula::Parallel:
      return "parallel";
    case RateFormula::ParallelRefined:
      return "parallel-refined";
  }
  return "?";
}

std::optional<RateFormula> parse_rate_formula(const std::string& name) {
  if (name == "averaged") return RateFormula::Averaged;
  if (name == "firmly") return RateFormula::Firmly;
  if (name == "ap") return RateFormula::AlternatingProjection;
  if (name == "parallel") return RateFormula::Parallel;
  if (name == "parallel-refined" || name == "parallel_refined") return RateFormula::ParallelRefined;
  return std::nullopt;
}

ExtendedCount rate_bound(const RateInputs& inputs, RateFormula formula) {
  switch (formula) {
    case RateFormula::Averaged:
      if (inputs.lambdas.size() != 1) throw DomainError("averaged rate needs exactly one lambda");
      return averaged_rate(inputs.epsilon, inputs.b, inputs.lambdas[0]);
    case RateFormula::Firmly:
      if (inputs.lambdas.size() != 1) throw DomainError("firmly rate needs exactly one lambda");
      return firmly_rate(inputs.epsilon, inputs.b, inputs.lambdas[0]);
    case RateFormula::AlternatingProjection:
      return ap_rate(inputs.epsilon, inputs.b);
    case RateFormula::Parallel:
      if (!inputs.modulus) throw DomainError("parallel rate needs a modulus");
      return parallel_rate(inputs.epsilon, inputs.b, *inputs.modulus, inputs.lambdas, inputs.alphas);
    case RateFormula::ParallelRefined:
      if (!inputs.modulus_tilde) throw DomainError("refined parallel rate needs a modulus factor");
      return parallel_rate_refined(inputs.epsilon, inputs.b, inputs.modulus_tilde, inputs.lambdas,
                                   inputs.alphas);
  }
  throw DomainError("unknown rate formula");
}

RegularityCertificate certify(const OrbitTrace& trace, const RateInputs& inputs,
                              RateFormula formula) {
  const bool scheme_ok =
      (formula == RateFormula::AlternatingProjection && trace.scheme == Scheme::AlternatingProjection) ||
      ((formula == RateFormula::Parallel || formula == RateFormula::ParallelRefined) &&
       trace.scheme == Scheme::Parallel) ||
      ((formula == RateFormula::Averaged || formula == RateFormula::Firmly) &&
       trace.scheme == Scheme::Picard);
  if (!scheme_ok) {
    throw DomainError(std::string("formula ") + rate_formula_name(formula) +
                      " does not match trace scheme " + scheme_name(trace.scheme));
  }
  RegularityCertificate cert;
  cert.epsilon = inputs.epsilon;
  cert.formula = formula;
  cert.bound = rate_bound(inputs, formula);
  double eps_eff = inputs.epsilon + (formula == RateFormula::Firmly ? inputs.gamma : 0.0);
  cert.observed_index = regularity_index(trace, eps_eff);
  cert.passes = cert.bound.saturated() ||
                (cert.observed_index.has_value() && cert.bound.admits(*cert.observed_index));
  return cert;
}

}  // namespace geofix
