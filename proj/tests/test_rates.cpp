#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "geofix/errors.hpp"
#include "geofix/rates.hpp"

using namespace geofix;

namespace {

// Independent long-double evaluation of the printed formulas; valid while
// the magnitudes stay inside the 64-bit mantissa.
std::uint64_t averaged_oracle(long double eps, long double b, long double lambda) {
  auto k = static_cast<std::uint64_t>(
      std::max(std::ceil(1.0L / lambda), std::ceil(1.0L / (1.0L - lambda))));
  auto m = static_cast<std::uint64_t>(std::ceil(lambda * (1.0L + 2.0L * b) / eps));
  auto inner = static_cast<std::uint64_t>(std::ceil(2.0L * b * std::exp(static_cast<long double>(k * (m + 1)))));
  return k * m * inner;
}

std::uint64_t firmly_oracle(long double eps, long double b, long double lambda) {
  auto k = static_cast<std::uint64_t>(std::ceil(1.0L / lambda));
  auto m = static_cast<std::uint64_t>(std::ceil(4.0L * b / eps));
  auto inner = static_cast<std::uint64_t>(
      std::ceil(2.0L * b * (1.0L + std::exp(static_cast<long double>(k * m))) / eps));
  return m * inner;
}

bool equals(const ExtendedCount& c, std::uint64_t v) {
  return !c.saturated() && *c.value == BigUint(v);
}

}  // namespace

TEST_CASE("averaged rate reproduces the pinned values") {
  CHECK(averaged_oracle(1, 1, 0.5) == 3228);
  CHECK(equals(averaged_rate(1, 1, 0.5), 3228));
  CHECK(averaged_oracle(10, 1, 0.5) == 220);
  CHECK(equals(averaged_rate(10, 1, 0.5), 220));
}

TEST_CASE("averaged rate survives big-integer territory") {
  // eps 0.01: K=2, M=150, exponent 302 -- about 134 decimal digits
  auto c = averaged_rate(0.01, 1, 0.5);
  REQUIRE_FALSE(c.saturated());
  std::string dec = c.value->to_decimal();
  CHECK(dec.size() == 134);
  // two-sided certification of ceil(2 e^302) via the lower/upper brackets
  BigUint lo = exp_lower_fixed(302, 1280);
  BigUint up = exp_upper_fixed(302, 1280);
  BigUint ceil_lo = BigRational{BigUint(2) * lo, BigUint::pow2(1280)}.ceil();
  BigUint ceil_up = BigRational{BigUint(2) * up, BigUint::pow2(1280)}.ceil();
  REQUIRE(ceil_lo == ceil_up);
  CHECK(*c.value == BigUint(300) * ceil_up);
}

TEST_CASE("firmly rate reproduces the pinned values") {
  CHECK(firmly_oracle(1, 1, 0.5) == 23856);
  CHECK(equals(firmly_rate(1, 1, 0.5), 23856));
  CHECK(firmly_oracle(2, 1, 0.5) == 112);
  CHECK(equals(firmly_rate(2, 1, 0.5), 112));
  CHECK(firmly_oracle(4, 1, 0.5) == 5);
  CHECK(equals(firmly_rate(4, 1, 0.5), 5));
}

TEST_CASE("ap rate branches") {
  CHECK(equals(ap_rate(0.1, 1), 100));
  CHECK(equals(ap_rate(3, 1), 0));
  CHECK(equals(ap_rate(0.5, 2), 16));
  CHECK_THROWS_AS(ap_rate(0.0, 1), DomainError);
  CHECK_THROWS_AS(ap_rate(0.1, -1), DomainError);
}

TEST_CASE("parallel rate and its refinement reproduce the pinned values") {
  const double lambdas[] = {0.5, 0.5};
  const double alphas[] = {0.5, 0.5};
  CHECK(equals(parallel_rate(0.5, 1, cat0_modulus(), lambdas, alphas), 512));
  CHECK(equals(parallel_rate(2.5, 1, cat0_modulus(), lambdas, alphas), 0));
  const double skew_alphas[] = {0.9, 0.1};
  CHECK(equals(parallel_rate(0.5, 1, cat0_modulus(), lambdas, skew_alphas), 2560));

  CHECK(equals(parallel_rate_refined(0.5, 1, cat0_modulus_tilde(), lambdas, alphas), 128));
  CHECK(equals(parallel_rate_refined(0.5, 1, lp_modulus_tilde(4.0), lambdas, alphas), 4096));
  CHECK(equals(parallel_rate_refined(1.0, 1, lp_modulus_tilde(1.5), lambdas, alphas), 64));
}

TEST_CASE("rates are monotone: nonincreasing in eps, nondecreasing in b") {
  const double eps_grid[] = {0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 4.0};
  const double b_grid[] = {0.5, 1.0, 2.0};
  const double l_grid[] = {0.1, 0.3, 0.5, 0.7, 0.9};
  const double lambdas[] = {0.5, 0.25};
  const double alphas[] = {0.5, 0.5};

  auto leq = [](const ExtendedCount& a, const ExtendedCount& b) {
    if (a.saturated() || b.saturated()) return b.saturated();
    return *a.value <= *b.value;
  };
  for (double b : b_grid) {
    for (double l : l_grid) {
      for (std::size_t i = 0; i + 1 < std::size(eps_grid); ++i) {
        CHECK(leq(averaged_rate(eps_grid[i + 1], b, l), averaged_rate(eps_grid[i], b, l)));
        CHECK(leq(firmly_rate(eps_grid[i + 1], b, l), firmly_rate(eps_grid[i], b, l)));
        CHECK(leq(ap_rate(eps_grid[i + 1], b), ap_rate(eps_grid[i], b)));
        CHECK(leq(parallel_rate(eps_grid[i + 1], b, cat0_modulus(), lambdas, alphas),
                  parallel_rate(eps_grid[i], b, cat0_modulus(), lambdas, alphas)));
      }
    }
  }
  for (double eps : eps_grid) {
    for (double l : l_grid) {
      for (std::size_t i = 0; i + 1 < std::size(b_grid); ++i) {
        CHECK(leq(averaged_rate(eps, b_grid[i], l), averaged_rate(eps, b_grid[i + 1], l)));
        CHECK(leq(firmly_rate(eps, b_grid[i], l), firmly_rate(eps, b_grid[i + 1], l)));
        CHECK(leq(ap_rate(eps, b_grid[i]), ap_rate(eps, b_grid[i + 1])));
      }
    }
  }
}

TEST_CASE("branch consistency and refined dominance") {
  const double lambdas[] = {0.3, 0.6, 0.5};
  const double alphas[] = {0.25, 0.35, 0.4};
  for (double b : {0.5, 1.0, 2.0}) {
    for (double eps : {0.05, 0.2, 0.8, 1.5}) {
      if (!(eps < 2 * b)) {
        CHECK(equals(ap_rate(eps, b), 0));
        CHECK(equals(parallel_rate(eps, b, cat0_modulus(), lambdas, alphas), 0));
        continue;
      }
      auto plain = parallel_rate(eps, b, cat0_modulus(), lambdas, alphas);
      auto refined = parallel_rate_refined(eps, b, cat0_modulus_tilde(), lambdas, alphas);
      REQUIRE_FALSE(plain.saturated());
      REQUIRE_FALSE(refined.saturated());
      CHECK(*refined.value <= *plain.value);
    }
  }
}

TEST_CASE("exact path agrees with float evaluation on binary-friendly grids") {
  for (double eps : {0.25, 0.5, 1.0, 2.0}) {
    for (double b : {0.5, 1.0, 2.0}) {
      auto c = firmly_rate(eps, b, 0.5);
      auto f = firmly_oracle(eps, b, 0.5);
      if (!c.saturated() && c.value->bit_length() <= 53) CHECK(equals(c, f));
      auto a = averaged_rate(eps, b, 0.5);
      auto fa = averaged_oracle(eps, b, 0.5);
      if (!a.saturated() && a.value->bit_length() <= 53) CHECK(equals(a, fa));
    }
  }
}

TEST_CASE("saturation at astronomically small eps") {
  auto c = averaged_rate(1e-6, 1, 0.5);
  CHECK(c.saturated());
  CHECK(c.log10_magnitude > 300);
  CHECK(c.str().rfind("saturated(~10^", 0) == 0);
  auto f = firmly_rate(1e-9, 1, 0.5);
  CHECK(f.saturated());
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(averaged_rate(1, 1, 0.0), DomainError);
  CHECK_THROWS_AS(averaged_rate(1, 1, 1.0), DomainError);
  CHECK_THROWS_AS(firmly_rate(1, 0, 0.5), DomainError);
  const double lam[] = {0.5, 0.5};
  const double bad_alpha[] = {0.6, 0.6};
  CHECK_THROWS_AS(parallel_rate(0.5, 1, cat0_modulus(), lam, bad_alpha), DomainError);
}

TEST_CASE("certify pairs observed indices with bounds") {
  OrbitTrace ap;
  ap.scheme = Scheme::AlternatingProjection;
  ap.gaps = {1.2, 0.8, 0.0, 0.0};
  RateInputs inputs;
  inputs.epsilon = 0.1;
  inputs.b = std::sqrt(2.0);
  auto cert = certify(ap, inputs, RateFormula::AlternatingProjection);
  REQUIRE(cert.observed_index.has_value());
  CHECK(*cert.observed_index == 2);
  REQUIRE_FALSE(cert.bound.saturated());
  CHECK(*cert.bound.value == BigUint(200));
  CHECK(cert.passes);

  // identity-style picard trace passes any formula with observed 0
  OrbitTrace pic;
  pic.scheme = Scheme::Picard;
  pic.gaps = {0.0};
  RateInputs fin;
  fin.epsilon = 0.5;
  fin.b = 1.0;
  fin.lambdas = {0.5};
  auto fcert = certify(pic, fin, RateFormula::Firmly);
  CHECK(*fcert.observed_index == 0);
  CHECK(fcert.passes);

  // scheme/formula mismatch
  CHECK_THROWS_AS(certify(pic, inputs, RateFormula::AlternatingProjection), DomainError);

  // unreachable index fails the certificate unless the bound is saturated
  OrbitTrace stall;
  stall.scheme = Scheme::AlternatingProjection;
  stall.gaps = {1.0, 1.0, 1.0};
  RateInputs si;
  si.epsilon = 0.5;
  si.b = 1.0;
  auto scert = certify(stall, si, RateFormula::AlternatingProjection);
  CHECK_FALSE(scert.observed_index.has_value());
  CHECK_FALSE(scert.passes);
}

TEST_CASE("certificates on synthetic non-monotone traces still compute") {
  OrbitTrace t;
  t.scheme = Scheme::AlternatingProjection;
  t.gaps = {0.3, 0.2, 0.6, 0.05};
  RateInputs inputs;
  inputs.epsilon = 0.1;
  inputs.b = 1.0;
  auto cert = certify(t, inputs, RateFormula::AlternatingProjection);
  CHECK(*cert.observed_index == 3);
  CHECK(cert.passes);
  // monotonicity violations are a separate report, not a certificate concern
  CHECK_FALSE(gaps_monotone(t, 1e-9).holds);
}

TEST_CASE("bound str prints exact decimals") {
  CHECK(ap_rate(0.1, 1).str() == "100");
  CHECK(firmly_rate(1, 1, 0.5).str() == "23856");
}

TEST_CASE("firmly certificate offsets the target gap by gamma") {
  OrbitTrace pic;
  pic.scheme = Scheme::Picard;
  pic.gaps = {0.5, 0.3, 0.15, 0.1};
  RateInputs inputs;
  inputs.epsilon = 0.1;
  inputs.b = 1.0;
  inputs.lambdas = {0.5};
  inputs.gamma = 0.05;
  auto cert = certify(pic, inputs, RateFormula::Firmly);
  REQUIRE(cert.observed_index.has_value());
  CHECK(*cert.observed_index == 2);  // first gap <= eps + gamma = 0.15
  inputs.gamma = 0.0;
  auto plain = certify(pic, inputs, RateFormula::Firmly);
  CHECK(*plain.observed_index == 3);
}
