#include "washprob/lo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "washprob/birthday.hpp"

namespace washprob::lo {

GainMultiset GainMultiset::of(std::initializer_list<std::int64_t> vs) {
  GainMultiset m{std::vector<std::int64_t>(vs)};
  m.validate();
  return m;
}

GainMultiset GainMultiset::parse(std::string_view csv) {
  GainMultiset m;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t comma = csv.find(',', pos);
    if (comma == std::string_view::npos) comma = csv.size();
    const std::string_view token = csv.substr(pos, comma - pos);
    if (token.empty())
      throw std::invalid_argument("gain multiset: empty entry in '" + std::string(csv) + "'");
    std::int64_t value = 0;
    for (char c : token) {
      if (c < '0' || c > '9')
        throw std::invalid_argument("gain multiset: '" + std::string(token) +
                                    "' is not a positive integer");
      value = value * 10 + (c - '0');
      if (value > (std::int64_t{1} << 40))
        throw std::invalid_argument("gain multiset: entry too large");
    }
    m.values.push_back(value);
    if (comma == csv.size()) break;
    pos = comma + 1;
  }
  m.validate();
  return m;
}

GainMultiset GainMultiset::all_ones(std::size_t n) {
  GainMultiset m{std::vector<std::int64_t>(n, 1)};
  m.validate();
  return m;
}

GainMultiset GainMultiset::powers_of_two(std::size_t n) {
  GainMultiset m;
  for (std::size_t i = 0; i < n; ++i) m.values.push_back(std::int64_t{1} << i);
  m.validate();
  return m;
}

std::int64_t GainMultiset::total() const {
  std::int64_t sum = 0;
  for (std::int64_t v : values) sum += v;
  return sum;
}

BigNat GainMultiset::sum_squares() const {
  BigNat sum(0);
  for (std::int64_t v : values) sum += BigNat(v) * v;
  return sum;
}

bool GainMultiset::all_ones_values() const {
  return std::all_of(values.begin(), values.end(),
                     [](std::int64_t v) { return v == 1; });
}

void GainMultiset::validate() const {
  if (values.empty()) throw std::invalid_argument("gain multiset: must be nonempty");
  std::int64_t sum = 0;
  for (std::int64_t v : values) {
    if (v < 1) throw std::invalid_argument("gain multiset: every value must be >= 1");
    sum += v;
    if (sum > (std::numeric_limits<std::int64_t>::max() >> 2))
      throw std::invalid_argument("gain multiset: total out of range");
  }
}

SignedSumDist::SignedSumDist(GainMultiset source,
                             std::vector<std::pair<std::int64_t, BigNat>> counts)
    : source_(std::move(source)), counts_(std::move(counts)) {
  total_ = 0;
  for (const auto& [sum, count] : counts_) total_ += count;
  if (total_ != BigNat(1) << source_.size())
    throw std::logic_error("signed-sum distribution: counts do not total 2^n");
}

BigNat SignedSumDist::count_of(std::int64_t x) const {
  auto it = std::lower_bound(counts_.begin(), counts_.end(), x,
                             [](const auto& entry, std::int64_t key) {
                               return entry.first < key;
                             });
  if (it == counts_.end() || it->first != x) return BigNat(0);
  return it->second;
}

SignedSumDist signed_sum_distribution(const GainMultiset& v) {
  v.validate();
  std::vector<std::pair<std::int64_t, BigNat>> current{{0, BigNat(1)}};
  for (std::int64_t value : v.values) {
    std::vector<std::pair<std::int64_t, BigNat>> next;
    next.reserve(current.size() * 2);
    // merge the two shifted copies of `current`, keys stay sorted
    std::size_t down = 0;
    std::size_t up = 0;
    while (down < current.size() || up < current.size()) {
      const std::int64_t down_key = down < current.size()
                                        ? current[down].first - value
                                        : std::numeric_limits<std::int64_t>::max();
      const std::int64_t up_key = up < current.size()
                                      ? current[up].first + value
                                      : std::numeric_limits<std::int64_t>::max();
      if (down_key < up_key) {
        next.emplace_back(down_key, current[down].second);
        ++down;
      } else if (up_key < down_key) {
        next.emplace_back(up_key, current[up].second);
        ++up;
      } else {
        next.emplace_back(down_key, current[down].second + current[up].second);
        ++down;
        ++up;
      }
    }
    current = std::move(next);
  }
  return SignedSumDist(v, std::move(current));
}

SignedSumDist enumerate_signed_sums(const GainMultiset& v) {
  v.validate();
  const std::size_t n = v.size();
  if (n > 24)
    throw std::length_error("sign-pattern enumeration guard: n must be <= 24");
  std::unordered_map<std::int64_t, std::uint64_t> acc;
  const std::uint64_t distinct_cap =
      std::min<std::uint64_t>(std::uint64_t{1} << n,
                              2 * static_cast<std::uint64_t>(v.total()) + 1);
  acc.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(distinct_cap, 1u << 20)));
  std::vector<std::int8_t> signs(n, 1);
  std::int64_t sum = v.total();
  ++acc[sum];
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const unsigned bit = static_cast<unsigned>(std::countr_zero(mask));
    signs[bit] = static_cast<std::int8_t>(-signs[bit]);
    sum += 2 * static_cast<std::int64_t>(signs[bit]) * v.values[bit];
    ++acc[sum];
  }
  std::vector<std::pair<std::int64_t, BigNat>> counts;
  counts.reserve(acc.size());
  for (const auto& [key, count] : acc) counts.emplace_back(key, BigNat(count));
  std::sort(counts.begin(), counts.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return SignedSumDist(v, std::move(counts));
}

ModalPoint max_point_probability(const SignedSumDist& dist) {
  const BigNat* best_count = nullptr;
  std::int64_t best_x = 0;
  for (const auto& [x, count] : dist.counts()) {
    if (best_count == nullptr || count > *best_count) {
      best_count = &count;
      best_x = x;
      continue;
    }
    if (count == *best_count) {
      const std::int64_t ax = std::llabs(x);
      const std::int64_t abest = std::llabs(best_x);
      if (ax < abest || (ax == abest && x > best_x)) best_x = x;
    }
  }
  return ModalPoint{best_x, Prob(*best_count, dist.total())};
}

Moments mean_and_sigma(const GainMultiset& v) {
  v.validate();
  Moments m;
  m.mean = Rat(0);
  m.sigma_sq = v.sum_squares();
  m.sigma = std::sqrt(exactnum::to_double(Rat(m.sigma_sq)));
  return m;
}

bool has_equal_distinct_sums(const GainMultiset& v) {
  const SignedSumDist dist = signed_sum_distribution(v);
  return std::any_of(dist.counts().begin(), dist.counts().end(),
                     [](const auto& entry) { return entry.second >= 2; });
}

namespace {

void enumerate_subcap_sets(unsigned depth, unsigned n, std::int64_t next_min,
                           std::int64_t budget, std::vector<std::int64_t>& current,
                           MinimalSumReport& report) {
  if (depth == n) {
    ++report.sets_checked;
    GainMultiset m{current};
    if (!has_equal_distinct_sums(m)) report.violations.push_back(current);
    return;
  }
  // values stay strictly increasing; v is feasible only while v plus the
  // minimal ascending tail v+1, ..., v+left still fits the budget
  const std::int64_t left = n - depth - 1;
  for (std::int64_t v = next_min;
       v * (left + 1) + left * (left + 1) / 2 <= budget; ++v) {
    current.push_back(v);
    enumerate_subcap_sets(depth + 1, n, v + 1, budget - v, current, report);
    current.pop_back();
  }
}

}  // namespace

MinimalSumReport verify_minimal_sum_theorem(unsigned n) {
  if (n < 2 || n > 4)
    throw std::invalid_argument("verify_minimal_sum_theorem: n must be in {2, 3, 4}");
  MinimalSumReport report;
  report.n = n;
  report.sum_cap = (std::int64_t{1} << n) - 1;
  std::vector<std::int64_t> current;
  // candidate totals must stay strictly below the cap
  enumerate_subcap_sets(0, n, 1, report.sum_cap - 1, current, report);
  const GainMultiset pow2 = GainMultiset::powers_of_two(n);
  report.pow2_total = pow2.total();
  report.pow2_has_equal_sums = has_equal_distinct_sums(pow2);
  return report;
}

Rat expected_disallowed_loss_pow2(unsigned n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  return Rat((BigInt(1) << n) - 1, BigInt(n));
}

Rat wash_adjusted_mean(const SignedSumDist& dist) {
  if (!dist.source().all_ones_values())
    throw std::invalid_argument(
        "wash-adjusted mean is defined for identical unit gains/losses only");
  const auto n = static_cast<std::int64_t>(dist.n());
  BigInt numer(0);
  for (const auto& [x, count] : dist.counts())
    numer += (BigInt(x) + 1) * BigInt(count);
  numer -= n + 1;  // drop the all-gains pattern s[1] = n, which has no loss
  const BigInt denom = (BigInt(1) << dist.n()) - 1;
  return Rat(numer, denom);
}

double expected_gain_single_wash(unsigned n, unsigned g, unsigned b,
                                 unsigned calendar_n, unsigned d) {
  if (n < 1 || g < 1 || b < 1 || calendar_n < 1 || d < 1)
    throw std::invalid_argument("expected_gain_single_wash: all arguments must be >= 1");
  const Prob collision = birthday::boygirl_span_prob(calendar_n, d, b, g);
  const BigInt pow2m1 = (BigInt(1) << n) - 1;
  const Rat factor(pow2m1 - n, pow2m1);
  return collision.to_double() * exactnum::to_double(factor);
}

double rademacher_tail_bound(double t) {
  if (!(t > 0)) throw std::invalid_argument("t must be > 0");
  return std::exp(-t * t / 2.0);
}

Prob exact_tail_probability(const SignedSumDist& dist, const Rat& t) {
  if (t < 0) throw std::invalid_argument("t must be >= 0");
  const Rat threshold_sq = t * t * Rat(dist.source().sum_squares());
  BigNat tail(0);
  for (const auto& [x, count] : dist.counts()) {
    if (x <= 0) continue;
    if (Rat(BigInt(x) * x) > threshold_sq) tail += count;
  }
  return Prob(tail, dist.total());
}

}  // namespace washprob::lo
