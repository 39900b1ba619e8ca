#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace washprob::exactnum {

using BigInt = boost::multiprecision::cpp_int;
// Nonnegative by contract: every operation below that returns BigNat
// produces a value >= 0 and never overflows.
using BigNat = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// m(m-1)...(m-k+1). Empty product (k = 0) is 1; k > m gives 0, matching
/// the count of injective mappings of k items into m slots.
BigNat falling_factorial(unsigned m, unsigned k);

/// C(m, k); 0 when k > m.
BigNat binomial(unsigned m, unsigned k);

/// Stirling number of the second kind {m, i}: partitions of an m-set into
/// i non-empty blocks. Requires m >= 1 and i >= 1; i > m gives 0.
/// Backed by a growable memo table; safe to call concurrently.
BigNat stirling2(unsigned m, unsigned i);

/// Verifies m^n == sum_{i=1..n} {n,i} * m^(falling i) with exact
/// arithmetic. Requires m >= n >= 1.
bool surjection_identity_check(unsigned n, unsigned m);

/// Rounds a big rational to double through an 80-bit scaled quotient, so
/// values whose numerator/denominator far exceed double range still
/// convert accurately.
double to_double(const Rat& x);

/// Exact decimal rendering, round-half-away-from-zero, zero-padded to
/// `places` digits after the point.
std::string format_decimal(const Rat& x, int places);

/// Fixed-point rendering of a double truncated (not rounded) toward zero.
std::string format_truncated(double x, int places);

/// Parses a plain decimal literal ("0.5", "95.25", "-3.50") into an exact
/// rational. Throws std::invalid_argument on malformed input.
Rat parse_decimal(std::string_view text);

/// Terminating decimal string when the reduced denominator is 2^a*5^b,
/// otherwise "num/den".
std::string rat_to_string(const Rat& x);

/// A probability as an exact rational in [0, 1], kept in lowest terms with
/// a positive denominator. Equality is exact rational equality.
class Prob {
 public:
  Prob() = default;  // zero

  /// Throws std::domain_error unless 0 <= numerator/denominator <= 1.
  Prob(const BigNat& numerator, const BigNat& denominator);

  static Prob zero() { return Prob(); }
  static Prob one();
  static Prob from_rational(const Rat& value);

  BigNat num() const { return boost::multiprecision::numerator(value_); }
  BigNat den() const { return boost::multiprecision::denominator(value_); }
  const Rat& value() const { return value_; }

  Prob complement() const;  // 1 - p

  double to_double() const { return exactnum::to_double(value_); }
  std::string to_decimal(int places) const { return format_decimal(value_, places); }
  std::string to_fraction_string() const;

  friend bool operator==(const Prob& a, const Prob& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Prob& a, const Prob& b) { return a.value_ != b.value_; }
  friend bool operator<(const Prob& a, const Prob& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Prob& a, const Prob& b) { return a.value_ <= b.value_; }
  friend bool operator>(const Prob& a, const Prob& b) { return a.value_ > b.value_; }
  friend bool operator>=(const Prob& a, const Prob& b) { return a.value_ >= b.value_; }

 private:
  Rat value_{};
};

}  // namespace washprob::exactnum
