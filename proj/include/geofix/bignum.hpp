#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace geofix {

struct BigUintDiv;

// Arbitrary-precision unsigned integer. 32-bit limbs, little-endian, no
// sign. Sized for rate-bound arithmetic (a few thousand bits), so all
// algorithms are the simple schoolbook ones.
class BigUint {
 public:
  BigUint() = default;
  BigUint(std::uint64_t v);  // NOLINT: implicit by design

  static BigUint pow2(std::size_t bits);

  bool is_zero() const noexcept { return limbs_.empty(); }
  std::size_t bit_length() const noexcept;

  static int compare(const BigUint& a, const BigUint& b) noexcept;
  friend bool operator==(const BigUint& a, const BigUint& b) { return compare(a, b) == 0; }
  friend bool operator!=(const BigUint& a, const BigUint& b) { return compare(a, b) != 0; }
  friend bool operator<(const BigUint& a, const BigUint& b) { return compare(a, b) < 0; }
  friend bool operator<=(const BigUint& a, const BigUint& b) { return compare(a, b) <= 0; }
  friend bool operator>(const BigUint& a, const BigUint& b) { return compare(a, b) > 0; }
  friend bool operator>=(const BigUint& a, const BigUint& b) { return compare(a, b) >= 0; }

  BigUint& operator+=(const BigUint& rhs);
  BigUint& operator-=(const BigUint& rhs);  // requires *this >= rhs
  friend BigUint operator+(BigUint a, const BigUint& b) {
    a += b;
    return a;
  }
  friend BigUint operator-(BigUint a, const BigUint& b) {
    a -= b;
    return a;
  }
  friend BigUint operator*(const BigUint& a, const BigUint& b);

  BigUint& operator<<=(std::size_t bits);
  friend BigUint operator<<(BigUint a, std::size_t bits) {
    a <<= bits;
    return a;
  }
  BigUint& operator>>=(std::size_t bits);

  // Shift-subtract long division; den must be nonzero.
  static BigUintDiv divmod(const BigUint& num, const BigUint& den);

  std::string to_decimal() const;
  // Approximate value; +inf when above double range.
  double to_double() const noexcept;
  std::uint64_t to_uint64() const;  // requires bit_length() <= 64
  double log10_approx() const noexcept;

 private:
  std::vector<std::uint32_t> limbs_;
  void trim() noexcept;
  bool bit(std::size_t i) const noexcept;
};

struct BigUintDiv {
  BigUint quot;
  BigUint rem;
};

BigUint floor_div(const BigUint& num, const BigUint& den);
BigUint ceil_div(const BigUint& num, const BigUint& den);

// Nonnegative exact rational; never reduced (operand sizes stay small here).
struct BigRational {
  BigUint num;
  BigUint den = 1;

  static BigRational from_double(double x);  // exact binary value, x finite and >= 0
  // Exact value of the shortest decimal that round-trips to x: doubles that
  // were written as decimal literals get their literal meaning back.
  static BigRational from_double_decimal(double x);
  static BigRational from_decimal_string(const std::string& text);
  static BigRational ratio(const BigRational& a, const BigRational& b);  // a/b, b > 0

  friend BigRational operator*(const BigRational& a, const BigRational& b);
  friend BigRational operator+(const BigRational& a, const BigRational& b);

  static int compare(const BigRational& a, const BigRational& b);
  BigUint floor() const;
  BigUint ceil() const;
  double to_double() const noexcept;
};

// Fixed-point upper bound on e^n: result / 2^frac_bits >= e^n, with relative
// slack well below 2^-(frac_bits - 64). Rounding is directed up at every
// step so the bound can never dip under the true value.
BigUint exp_upper_fixed(std::uint64_t n, std::size_t frac_bits);

// Companion lower bound (floor-directed rounding, truncated series).
BigUint exp_lower_fixed(std::uint64_t n, std::size_t frac_bits);

}  // namespace geofix
