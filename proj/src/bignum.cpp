#include "geofix/bignum.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "geofix/errors.hpp"

namespace geofix {

namespace {
constexpr std::uint64_t kLimbBase = 1ull << 32;
}

BigUint::BigUint(std::uint64_t v) {
  while (v != 0) {
    limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    v >>= 32;
  }
}

BigUint BigUint::pow2(std::size_t bits) {
  BigUint r;
  r.limbs_.assign(bits / 32 + 1, 0);
  r.limbs_.back() = static_cast<std::uint32_t>(1u) << (bits % 32);
  r.trim();
  return r;
}

void BigUint::trim() noexcept {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

std::size_t BigUint::bit_length() const noexcept {
  if (limbs_.empty()) return 0;
  std::uint32_t top = limbs_.back();
  std::size_t n = (limbs_.size() - 1) * 32;
  while (top != 0) {
    ++n;
    top >>= 1;
  }
  return n;
}

bool BigUint::bit(std::size_t i) const noexcept {
  std::size_t limb = i / 32;
  if (limb >= limbs_.size()) return false;
  return (limbs_[limb] >> (i % 32)) & 1u;
}

int BigUint::compare(const BigUint& a, const BigUint& b) noexcept {
  if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
  for (std::size_t i = a.limbs_.size(); i-- > 0;) {
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
  }
  return 0;
}

BigUint& BigUint::operator+=(const BigUint& rhs) {
  limbs_.resize(std::max(limbs_.size(), rhs.limbs_.size()) + 1, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t sum = carry + limbs_[i];
    if (i < rhs.limbs_.size()) sum += rhs.limbs_[i];
    limbs_[i] = static_cast<std::uint32_t>(sum & 0xffffffffu);
    carry = sum >> 32;
  }
  trim();
  return *this;
}

BigUint& BigUint::operator-=(const BigUint& rhs) {
  if (compare(*this, rhs) < 0) throw DomainError("BigUint subtraction underflow");
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::int64_t diff = static_cast<std::int64_t>(limbs_[i]) - borrow;
    if (i < rhs.limbs_.size()) diff -= rhs.limbs_[i];
    if (diff < 0) {
      diff += static_cast<std::int64_t>(kLimbBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    limbs_[i] = static_cast<std::uint32_t>(diff);
  }
  trim();
  return *this;
}

BigUint operator*(const BigUint& a, const BigUint& b) {
  BigUint r;
  if (a.is_zero() || b.is_zero()) return r;
  r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    std::uint64_t ai = a.limbs_[i];
    for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
      std::uint64_t cur = r.limbs_[i + j] + ai * b.limbs_[j] + carry;
      r.limbs_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    std::size_t k = i + b.limbs_.size();
    while (carry != 0) {
      std::uint64_t cur = r.limbs_[k] + carry;
      r.limbs_[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  r.trim();
  return r;
}

BigUint& BigUint::operator<<=(std::size_t bits) {
  if (is_zero() || bits == 0) return *this;
  std::size_t limb_shift = bits / 32;
  std::size_t bit_shift = bits % 32;
  limbs_.insert(limbs_.begin(), limb_shift, 0);
  if (bit_shift != 0) {
    std::uint32_t carry = 0;
    for (std::size_t i = limb_shift; i < limbs_.size(); ++i) {
      std::uint64_t cur = (static_cast<std::uint64_t>(limbs_[i]) << bit_shift) | carry;
      limbs_[i] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = static_cast<std::uint32_t>(cur >> 32);
    }
    if (carry != 0) limbs_.push_back(carry);
  }
  return *this;
}

BigUint& BigUint::operator>>=(std::size_t bits) {
  std::size_t limb_shift = bits / 32;
  std::size_t bit_shift = bits % 32;
  if (limb_shift >= limbs_.size()) {
    limbs_.clear();
    return *this;
  }
  limbs_.erase(limbs_.begin(), limbs_.begin() + static_cast<std::ptrdiff_t>(limb_shift));
  if (bit_shift != 0) {
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      std::uint64_t cur = limbs_[i] >> bit_shift;
      if (i + 1 < limbs_.size()) {
        cur |= static_cast<std::uint64_t>(limbs_[i + 1]) << (32 - bit_shift);
      }
      limbs_[i] = static_cast<std::uint32_t>(cur & 0xffffffffu);
    }
  }
  trim();
  return *this;
}

BigUintDiv BigUint::divmod(const BigUint& num, const BigUint& den) {
  if (den.is_zero()) throw DomainError("BigUint division by zero");
  BigUintDiv out;
  if (compare(num, den) < 0) {
    out.rem = num;
    return out;
  }
  std::size_t nbits = num.bit_length();
  out.quot.limbs_.assign(num.limbs_.size(), 0);
  BigUint rem;
  for (std::size_t i = nbits; i-- > 0;) {
    rem <<= 1;
    if (num.bit(i)) {
      if (rem.limbs_.empty()) rem.limbs_.push_back(0);
      rem.limbs_[0] |= 1u;
    }
    if (compare(rem, den) >= 0) {
      rem -= den;
      std::size_t limb = i / 32;
      out.quot.limbs_[limb] |= (static_cast<std::uint32_t>(1u) << (i % 32));
    }
  }
  out.quot.trim();
  out.rem = std::move(rem);
  return out;
}

BigUint floor_div(const BigUint& num, const BigUint& den) { return BigUint::divmod(num, den).quot; }

BigUint ceil_div(const BigUint& num, const BigUint& den) {
  auto d = BigUint::divmod(num, den);
  if (!d.rem.is_zero()) d.quot += BigUint(1);
  return d.quot;
}

std::string BigUint::to_decimal() const {
  if (is_zero()) return "0";
  std::vector<std::uint32_t> scratch(limbs_.rbegin(), limbs_.rend());  // big-endian
  std::string digits;
  while (!scratch.empty()) {
    std::uint64_t rem = 0;
    for (auto& limb : scratch) {
      std::uint64_t cur = (rem << 32) | limb;
      limb = static_cast<std::uint32_t>(cur / 1000000000ull);
      rem = cur % 1000000000ull;
    }
    while (!scratch.empty() && scratch.front() == 0) scratch.erase(scratch.begin());
    for (int k = 0; k < 9; ++k) {
      digits.push_back(static_cast<char>('0' + rem % 10));
      rem /= 10;
      if (scratch.empty() && rem == 0) break;
    }
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  return {digits.rbegin(), digits.rend()};
}

double BigUint::to_double() const noexcept {
  std::size_t bits = bit_length();
  if (bits == 0) return 0.0;
  if (bits > 1024) return std::numeric_limits<double>::infinity();
  double top = 0.0;
  std::size_t got = 0;
  for (std::size_t i = limbs_.size(); i-- > 0 && got < 4;) {
    top = top * 4294967296.0 + static_cast<double>(limbs_[i]);
    ++got;
  }
  // value ~= top * 2^(32 * dropped_limbs)
  int shift = static_cast<int>(32 * (limbs_.size() - got));
  return std::ldexp(top, shift);
}

std::uint64_t BigUint::to_uint64() const {
  if (bit_length() > 64) throw DomainError("BigUint does not fit in 64 bits");
  std::uint64_t v = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) v = (v << 32) | limbs_[i];
  return v;
}

double BigUint::log10_approx() const noexcept {
  std::size_t bits = bit_length();
  if (bits == 0) return -std::numeric_limits<double>::infinity();
  if (bits <= 1020) return std::log10(to_double());
  return static_cast<double>(bits) * 0.30102999566398120;
}

BigRational BigRational::from_double(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("rational conversion needs a finite nonnegative value");
  BigRational r;
  if (x == 0.0) {
    r.num = 0;
    r.den = 1;
    return r;
  }
  int exp = 0;
  double f = std::frexp(x, &exp);
  auto mant = static_cast<std::uint64_t>(std::ldexp(f, 53));
  exp -= 53;
  r.num = mant;
  r.den = 1;
  if (exp >= 0) {
    r.num <<= static_cast<std::size_t>(exp);
  } else {
    r.den <<= static_cast<std::size_t>(-exp);
  }
  return r;
}

BigRational BigRational::from_decimal_string(const std::string& text) {
  // [digits][.digits][e[sign]digits], nonnegative
  std::size_t pos = 0;
  BigUint mantissa = 0;
  long long frac_digits = 0;
  bool seen_digit = false;
  bool in_frac = false;
  while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
    if (text[pos] == '.') {
      if (in_frac) throw DomainError("malformed decimal: " + text);
      in_frac = true;
    } else {
      mantissa = mantissa * BigUint(10) + BigUint(static_cast<std::uint64_t>(text[pos] - '0'));
      if (in_frac) ++frac_digits;
      seen_digit = true;
    }
    ++pos;
  }
  if (!seen_digit) throw DomainError("malformed decimal: " + text);
  long long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      neg = text[pos] == '-';
      ++pos;
    }
    if (pos == text.size()) throw DomainError("malformed decimal: " + text);
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      exponent = exponent * 10 + (text[pos] - '0');
      ++pos;
    }
    if (neg) exponent = -exponent;
  }
  if (pos != text.size()) throw DomainError("malformed decimal: " + text);
  long long net = exponent - frac_digits;
  BigUint pow10 = 1;
  for (long long i = 0; i < std::llabs(net); ++i) pow10 = pow10 * BigUint(10);
  BigRational r;
  if (net >= 0) {
    r.num = mantissa * pow10;
    r.den = 1;
  } else {
    r.num = std::move(mantissa);
    r.den = std::move(pow10);
  }
  return r;
}

BigRational BigRational::from_double_decimal(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("rational conversion needs a finite nonnegative value");
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return from_decimal_string(std::string(buf, res.ptr));
}

BigRational BigRational::ratio(const BigRational& a, const BigRational& b) {
  if (b.num.is_zero()) throw DomainError("rational division by zero");
  return BigRational{a.num * b.den, a.den * b.num};
}

BigRational operator*(const BigRational& a, const BigRational& b) {
  return BigRational{a.num * b.num, a.den * b.den};
}

BigRational operator+(const BigRational& a, const BigRational& b) {
  return BigRational{a.num * b.den + b.num * a.den, a.den * b.den};
}

int BigRational::compare(const BigRational& a, const BigRational& b) {
  return BigUint::compare(a.num * b.den, b.num * a.den);
}

BigUint BigRational::floor() const { return floor_div(num, den); }

BigUint BigRational::ceil() const { return ceil_div(num, den); }

double BigRational::to_double() const noexcept {
  double n = num.to_double();
  double d = den.to_double();
  if (std::isinf(n) && std::isinf(d)) {
    // fall back to a log-domain ratio for very large operands
    return std::pow(10.0, num.log10_approx() - den.log10_approx());
  }
  return n / d;
}

namespace {

// Series for e at the given scale. Directed up: every division rounds up and
// the truncated tail is covered by an extra ceil(2^{s+1}/(k+1)!)-style pad.
BigUint e_fixed(std::size_t frac_bits, bool upper) {
  const BigUint one = BigUint::pow2(frac_bits);
  BigUint sum;
  BigUint fact = 1;
  std::uint64_t k = 0;
  while (true) {
    BigUint term = upper ? ceil_div(one, fact) : floor_div(one, fact);
    bool last = term <= BigUint(1);
    sum += term;
    if (last) break;
    ++k;
    fact = fact * BigUint(k);
  }
  if (upper) sum += BigUint(2);  // covers the truncated tail
  return sum;
}

BigUint pow_fixed(const BigUint& base, std::uint64_t n, std::size_t frac_bits, bool upper) {
  BigUint result = BigUint::pow2(frac_bits);
  if (n == 0) return result;
  int top = 63;
  while (top > 0 && ((n >> top) & 1ull) == 0) --top;
  const BigUint round_pad = BigUint::pow2(frac_bits) - BigUint(1);
  for (int i = top; i >= 0; --i) {
    BigUint sq = result * result;
    if (upper) sq += round_pad;
    sq >>= frac_bits;
    result = std::move(sq);
    if ((n >> i) & 1ull) {
      BigUint pr = result * base;
      if (upper) pr += round_pad;
      pr >>= frac_bits;
      result = std::move(pr);
    }
  }
  return result;
}

}  // namespace

BigUint exp_upper_fixed(std::uint64_t n, std::size_t frac_bits) {
  return pow_fixed(e_fixed(frac_bits, true), n, frac_bits, true);
}

BigUint exp_lower_fixed(std::uint64_t n, std::size_t frac_bits) {
  return pow_fixed(e_fixed(frac_bits, false), n, frac_bits, false);
}

}  // namespace geofix
