#include "washprob/exactnum.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace washprob::exactnum {

namespace {

std::mutex g_stirling_mutex;
// g_stirling_rows[m-1][i-1] holds {m, i}; row m has m entries.
std::vector<std::vector<BigNat>> g_stirling_rows;

}  // namespace

BigNat falling_factorial(unsigned m, unsigned k) {
  if (k == 0) return BigNat(1);
  if (k > m) return BigNat(0);
  BigNat result(1);
  for (unsigned x = m; x > m - k; --x) result *= x;
  return result;
}

BigNat binomial(unsigned m, unsigned k) {
  if (k > m) return BigNat(0);
  if (k > m - k) k = m - k;
  BigNat result(1);
  for (unsigned i = 1; i <= k; ++i) {
    result *= (m - k + i);
    result /= i;  // divides exactly at every step
  }
  return result;
}

BigNat stirling2(unsigned m, unsigned i) {
  if (m == 0 || i == 0)
    throw std::invalid_argument("stirling2: both arguments must be >= 1");
  if (i > m) return BigNat(0);
  std::lock_guard<std::mutex> lock(g_stirling_mutex);
  if (g_stirling_rows.empty()) g_stirling_rows.push_back({BigNat(1)});  // {1,1}
  while (g_stirling_rows.size() < m) {
    const auto& prev = g_stirling_rows.back();
    const unsigned row_m = static_cast<unsigned>(g_stirling_rows.size()) + 1;
    std::vector<BigNat> row(row_m);
    row.front() = 1;  // {m,1}
    row.back() = 1;   // {m,m}
    for (unsigned j = 2; j < row_m; ++j)
      row[j - 1] = j * prev[j - 1] + prev[j - 2];
    g_stirling_rows.push_back(std::move(row));
  }
  return g_stirling_rows[m - 1][i - 1];
}

bool surjection_identity_check(unsigned n, unsigned m) {
  if (n < 1 || m < n)
    throw std::invalid_argument("surjection_identity_check: requires m >= n >= 1");
  const BigNat lhs = boost::multiprecision::pow(BigNat(m), n);
  BigNat rhs(0);
  for (unsigned i = 1; i <= n; ++i)
    rhs += stirling2(n, i) * falling_factorial(m, i);
  return lhs == rhs;
}

double to_double(const Rat& x) {
  if (x == 0) return 0.0;
  BigInt num = boost::multiprecision::numerator(x);
  const BigInt& den = boost::multiprecision::denominator(x);
  const bool negative = num < 0;
  if (negative) num = -num;
  const long num_bits = static_cast<long>(boost::multiprecision::msb(num));
  const long den_bits = static_cast<long>(boost::multiprecision::msb(den));
  // Scale so the integer quotient keeps ~80 significant bits.
  const long shift = 80 - (num_bits - den_bits);
  BigInt scaled_num = num;
  BigInt scaled_den = den;
  if (shift > 0)
    scaled_num <<= shift;
  else
    scaled_den <<= -shift;
  const BigInt q = scaled_num / scaled_den;
  const double mant = q.convert_to<double>();
  const double result = std::ldexp(mant, static_cast<int>(-shift));
  return negative ? -result : result;
}

std::string format_decimal(const Rat& x, int places) {
  if (places < 0) throw std::invalid_argument("format_decimal: places must be >= 0");
  BigInt num = boost::multiprecision::numerator(x);
  const BigInt& den = boost::multiprecision::denominator(x);
  const bool negative = num < 0;
  if (negative) num = -num;
  const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(places));
  // floor((v*scale) + 1/2): round half away from zero on the magnitude.
  const BigInt scaled = (2 * num * scale + den) / (2 * den);
  const BigInt whole = scaled / scale;
  std::string out = whole.str();
  if (places > 0) {
    const BigInt rem = scaled % scale;
    std::string frac = rem.str();
    out += '.' + std::string(static_cast<std::size_t>(places) - frac.size(), '0') + frac;
  }
  if (negative && scaled != 0) out.insert(out.begin(), '-');
  return out;
}

std::string format_truncated(double x, int places) {
  if (places < 0) throw std::invalid_argument("format_truncated: places must be >= 0");
  const bool negative = x < 0;
  const double magnitude = std::fabs(x);
  double p10 = 1.0;
  for (int i = 0; i < places; ++i) p10 *= 10.0;
  if (magnitude * p10 >= 9.0e15)
    throw std::invalid_argument("format_truncated: value too large for fixed rendering");
  const auto scaled = static_cast<long long>(std::floor(magnitude * p10));
  const auto ip = scaled / static_cast<long long>(p10);
  std::string out = std::to_string(ip);
  if (places > 0) {
    std::string frac = std::to_string(scaled % static_cast<long long>(p10));
    out += '.' + std::string(static_cast<std::size_t>(places) - frac.size(), '0') + frac;
  }
  if (negative && scaled != 0) out.insert(out.begin(), '-');
  return out;
}

Rat parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  BigInt digits(0);
  std::size_t int_digits = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    digits = digits * 10 + (text[pos] - '0');
    ++int_digits;
    ++pos;
  }
  std::size_t frac_digits = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      digits = digits * 10 + (text[pos] - '0');
      ++frac_digits;
      ++pos;
    }
  }
  if (pos != text.size() || int_digits + frac_digits == 0)
    throw std::invalid_argument("not a decimal literal: '" + std::string(text) + "'");
  Rat value(digits, boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac_digits)));
  return negative ? Rat(-value) : value;
}

std::string rat_to_string(const Rat& x) {
  const BigInt& num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  unsigned twos = 0;
  unsigned fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1)  // non-terminating decimal; fall back to the exact fraction
    return num.str() + "/" + boost::multiprecision::denominator(x).str();
  const unsigned places = std::max(twos, fives);
  BigInt scaled = num * boost::multiprecision::pow(BigInt(2), places - twos) *
                  boost::multiprecision::pow(BigInt(5), places - fives);
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  const BigInt scale = boost::multiprecision::pow(BigInt(10), places);
  const BigInt whole = scaled / scale;
  const BigInt rem = scaled % scale;
  std::string out = whole.str();
  std::string frac = rem.str();
  if (places > 0) frac.insert(frac.begin(), places - frac.size(), '0');
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  if (!frac.empty()) out += '.' + frac;
  if (negative && (scaled != 0)) out.insert(out.begin(), '-');
  return out;
}

Prob::Prob(const BigNat& numerator, const BigNat& denominator) {
  if (denominator == 0) throw std::domain_error("Prob: zero denominator");
  if (numerator < 0 || denominator < 0 || numerator > denominator)
    throw std::domain_error("Prob: value outside [0, 1]");
  value_ = Rat(numerator, denominator);
}

Prob Prob::one() { return Prob(BigNat(1), BigNat(1)); }

Prob Prob::from_rational(const Rat& value) {
  if (value < 0 || value > 1) throw std::domain_error("Prob: value outside [0, 1]");
  Prob p;
  p.value_ = value;
  return p;
}

Prob Prob::complement() const { return from_rational(Rat(1) - value_); }

std::string Prob::to_fraction_string() const {
  return num().str() + "/" + den().str();
}

}  // namespace washprob::exactnum
