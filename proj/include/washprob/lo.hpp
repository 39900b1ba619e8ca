#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>
#include <utility>
#include <vector>

#include "washprob/exactnum.hpp"

namespace washprob::lo {

using exactnum::BigInt;
using exactnum::BigNat;
using exactnum::Prob;
using exactnum::Rat;

/// Multiset of positive integer gain/loss magnitudes.
struct GainMultiset {
  std::vector<std::int64_t> values;

  static GainMultiset of(std::initializer_list<std::int64_t> vs);
  static GainMultiset parse(std::string_view csv);  // "1,2,4"
  static GainMultiset all_ones(std::size_t n);
  static GainMultiset powers_of_two(std::size_t n);  // {1, 2, ..., 2^(n-1)}

  std::size_t size() const { return values.size(); }
  std::int64_t total() const;
  BigNat sum_squares() const;
  bool all_ones_values() const;
  void validate() const;  // every value >= 1, nonempty, total in range
};

/// Exact distribution of S = sum xi_i * v_i over the 2^n sign patterns:
/// achievable sums with their pattern counts, ascending by sum.
class SignedSumDist {
 public:
  SignedSumDist(GainMultiset source,
                std::vector<std::pair<std::int64_t, BigNat>> counts);

  const GainMultiset& source() const { return source_; }
  const std::vector<std::pair<std::int64_t, BigNat>>& counts() const { return counts_; }
  const BigNat& total() const { return total_; }  // 2^n
  std::size_t n() const { return source_.size(); }
  BigNat count_of(std::int64_t x) const;  // 0 when x is not achievable

 private:
  GainMultiset source_;
  std::vector<std::pair<std::int64_t, BigNat>> counts_;
  BigNat total_;
};

/// Exact counts by convolving one +-v_i at a time; O(n * sum v) work,
/// independent of 2^n.
SignedSumDist signed_sum_distribution(const GainMultiset& v);

/// Same output built by explicit sign-pattern enumeration (Gray-code walk).
/// Guard: n <= 24.
SignedSumDist enumerate_signed_sums(const GainMultiset& v);

struct ModalPoint {
  std::int64_t x = 0;
  Prob probability;
};

/// The modal sum and its exact probability. Ties break toward the smallest
/// |x|, then the positive sign.
ModalPoint max_point_probability(const SignedSumDist& dist);

struct Moments {
  Rat mean;        // always 0
  BigNat sigma_sq; // sum of v_i^2, exact
  double sigma;    // sqrt(sigma_sq)
};

Moments mean_and_sigma(const GainMultiset& v);

/// True iff two distinct sign patterns produce the same sum, i.e. some
/// count in the distribution is >= 2.
bool has_equal_distinct_sums(const GainMultiset& v);

struct MinimalSumReport {
  unsigned n = 0;
  std::int64_t sum_cap = 0;  // 2^n - 1
  std::uint64_t sets_checked = 0;
  // sub-cap sets of distinct positives with all-distinct sums (must stay empty)
  std::vector<std::vector<std::int64_t>> violations;
  bool pow2_has_equal_sums = true;  // must come out false
  std::int64_t pow2_total = 0;      // must equal sum_cap

  bool holds() const {
    return violations.empty() && !pow2_has_equal_sums && pow2_total == sum_cap;
  }
};

/// Checks, by full enumeration, that every set of n distinct positive
/// integers with total below 2^n - 1 has equal distinct sums, and that
/// {1, 2, ..., 2^(n-1)} attains the cap without any. n in {2, 3, 4}.
MinimalSumReport verify_minimal_sum_theorem(unsigned n);

/// (2^n - 1)/n: expected disallowed loss when the washed loss is uniform
/// over the magnitudes {1, 2, ..., 2^(n-1)}.
Rat expected_disallowed_loss_pow2(unsigned n);

/// Mean of (s[j] + 1) over the 2^n - 1 patterns with at least one loss.
/// Defined for all-ones multisets only; equals 1 - n/(2^n - 1).
Rat wash_adjusted_mean(const SignedSumDist& dist);

/// B_d(calendar_n, b, g) * (1 - n/(2^n - 1)): expected gain when a single
/// wash sale erases one of n identical unit losses.
double expected_gain_single_wash(unsigned n, unsigned g, unsigned b,
                                 unsigned calendar_n = 252, unsigned d = 30);

/// exp(-t^2/2): bound on Prob[S > t * sigma] for Rademacher sums.
double rademacher_tail_bound(double t);

/// Exact Prob[S > t * sigma], comparing x^2 against t^2 * sigma^2 so
/// rational t stays exact. Requires t >= 0.
Prob exact_tail_probability(const SignedSumDist& dist, const Rat& t);

}  // namespace washprob::lo
