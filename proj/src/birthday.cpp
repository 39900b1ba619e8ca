#include "washprob/birthday.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace washprob::birthday {

using exactnum::BigNat;
using exactnum::falling_factorial;
using exactnum::stirling2;
using boost::multiprecision::pow;

unsigned CollisionSpec::population_size() const {
  if (const auto* u = std::get_if<Unlabeled>(&population)) return u->count;
  const auto& bg = std::get<BoyGirl>(population);
  return bg.boys + bg.girls;
}

void CollisionSpec::validate() const {
  if (days < 1) throw std::invalid_argument("collision spec: days must be >= 1");
  if (span < 1) throw std::invalid_argument("collision spec: span must be >= 1");
  if (const auto* u = std::get_if<Unlabeled>(&population)) {
    if (u->count < 1) throw std::invalid_argument("collision spec: population must be >= 1");
  } else {
    const auto& bg = std::get<BoyGirl>(population);
    if (bg.boys < 1 || bg.girls < 1)
      throw std::invalid_argument("collision spec: boys and girls must each be >= 1");
  }
}

CollisionSpec CollisionSpec::unlabeled(unsigned n, unsigned d, unsigned k) {
  CollisionSpec spec{n, d, Unlabeled{k}};
  spec.validate();
  return spec;
}

CollisionSpec CollisionSpec::boy_girl(unsigned n, unsigned d, unsigned b, unsigned g) {
  CollisionSpec spec{n, d, BoyGirl{b, g}};
  spec.validate();
  return spec;
}

namespace {

void require_positive(unsigned value, const char* name) {
  if (value < 1) throw std::invalid_argument(std::string(name) + " must be >= 1");
}

}  // namespace

Prob birthday_prob(unsigned n, unsigned k) {
  require_positive(n, "n");
  require_positive(k, "k");
  const BigNat total = pow(BigNat(n), k);
  return Prob(total - falling_factorial(n, k), total);
}

Prob span_birthday_prob(unsigned n, unsigned d, unsigned k) {
  require_positive(n, "n");
  require_positive(d, "d");
  require_positive(k, "k");
  const std::uint64_t blocked =
      static_cast<std::uint64_t>(k - 1) * (d - 1) + k;
  if (n < blocked) return Prob::one();
  const BigNat total = pow(BigNat(n), k);
  const unsigned base = n - static_cast<unsigned>(static_cast<std::uint64_t>(k - 1) * (d - 1));
  return Prob(total - falling_factorial(base, k), total);
}

Prob boygirl_prob(unsigned n, unsigned b, unsigned g) {
  require_positive(n, "n");
  require_positive(b, "b");
  require_positive(g, "g");
  const BigNat total = pow(BigNat(n), b + g);
  BigNat no_collision(0);
  for (unsigned i = 1; i <= g && i <= n; ++i)
    no_collision += pow(BigNat(n - i), b) * stirling2(g, i) * falling_factorial(n, i);
  return Prob(total - no_collision, total);
}

Prob boygirl_prob_double_sum(unsigned n, unsigned b, unsigned g) {
  require_positive(n, "n");
  require_positive(b, "b");
  require_positive(g, "g");
  const BigNat total = pow(BigNat(n), b + g);
  BigNat no_collision(0);
  for (unsigned i = 1; i <= g; ++i)
    for (unsigned j = 1; j <= b; ++j)
      no_collision += stirling2(b, j) * stirling2(g, i) * falling_factorial(n, i + j);
  return Prob(total - no_collision, total);
}

Prob boygirl_span_prob(unsigned n, unsigned d, unsigned b, unsigned g) {
  require_positive(n, "n");
  require_positive(d, "d");
  require_positive(b, "b");
  require_positive(g, "g");
  const BigNat total = pow(BigNat(n), b + g);
  BigNat no_collision(0);
  for (unsigned i = 1; i <= b; ++i) {
    for (unsigned j = 1; j <= g; ++j) {
      const std::int64_t base = static_cast<std::int64_t>(n) -
                                static_cast<std::int64_t>(i + j - 1) * (d - 1);
      if (base < static_cast<std::int64_t>(i + j)) continue;  // exhausted base: term is 0
      no_collision += stirling2(b, i) * stirling2(g, j) *
                      falling_factorial(static_cast<unsigned>(base), i + j);
    }
  }
  if (no_collision > total) no_collision = total;  // clamp into [0,1]
  return Prob(total - no_collision, total);
}

ThresholdResult min_k_at_least(const Prob& target,
                               const std::function<Prob(unsigned)>& family,
                               unsigned max_k) {
  if (target == Prob::zero())
    throw std::invalid_argument("threshold target must be in (0, 1]");
  Prob below = Prob::zero();
  for (unsigned k = 1; k <= max_k; ++k) {
    Prob p = family(k);
    if (p >= target) return ThresholdResult{k, p, below};
    below = p;
  }
  throw UnattainableTarget("target not attainable by this family (searched k <= " +
                           std::to_string(max_k) + ")");
}

unsigned unlabeled_saturation_k(unsigned n, unsigned d) {
  // smallest k with n < (k-1)(d-1)+k, i.e. k > (n+d-1)/d
  return (n + d - 1) / d + 1;
}

namespace {

unsigned labeled_population_cap(unsigned n, const Prob& target) {
  // P[no collision] <= (1-1/n)^h already for the same-day case, so any
  // target < 1 is reached by h = ceil(log(1-t)/log(1-1/n)) at the latest.
  const double t = target.to_double();
  const double cap = std::log1p(-t) / std::log1p(-1.0 / n);
  return static_cast<unsigned>(cap) + 3;
}

}  // namespace

ThresholdResult min_population_for(const Prob& target, Family family,
                                   unsigned n, unsigned d) {
  require_positive(n, "n");
  require_positive(d, "d");
  switch (family) {
    case Family::birthday:
      return min_k_at_least(target, [n](unsigned k) { return birthday_prob(n, k); },
                            unlabeled_saturation_k(n, 1));
    case Family::span:
      return min_k_at_least(target, [n, d](unsigned k) { return span_birthday_prob(n, d, k); },
                            unlabeled_saturation_k(n, d));
    case Family::boygirl_balanced:
    case Family::boygirl_span_balanced: {
      const unsigned eff_d = family == Family::boygirl_balanced ? 1 : d;
      auto fn = [n, eff_d](unsigned h) { return boygirl_span_prob(n, eff_d, h, h); };
      if (target == Prob::one() && n > eff_d)
        throw UnattainableTarget(
            "boy-girl families never reach probability exactly 1 when n > d");
      if (target == Prob::one()) return min_k_at_least(target, fn, 1);
      return min_k_at_least(target, fn, labeled_population_cap(n, target));
    }
  }
  throw std::logic_error("unknown family");
}

double approx_k_half(unsigned n) {
  require_positive(n, "n");
  return std::sqrt(2.0 * std::log(2.0) * n);
}

double poisson_approx_prob(unsigned n, unsigned k) {
  require_positive(n, "n");
  if (k < 2) throw std::invalid_argument("poisson approximation needs k >= 2");
  const double pairs = 0.5 * static_cast<double>(k) * (k - 1);
  return 1.0 - std::exp(-pairs / n);
}

SpanApprox approx_k_half_span(unsigned n, unsigned d) {
  require_positive(n, "n");
  require_positive(d, "d");
  SpanApprox out;
  if (d >= 5) out.linear = 0.83 * std::sqrt(static_cast<double>(n) / (d - 4));
  out.cyclic = 1.2 * std::sqrt(static_cast<double>(n) / (2.0 * d + 1.0));
  return out;
}

double chernoff_imbalance_bound(unsigned t, double c) {
  require_positive(t, "t");
  if (c <= 0) throw std::invalid_argument("c must be > 0");
  return std::exp(-c * c / (2.0 * t));
}

}  // namespace washprob::birthday
