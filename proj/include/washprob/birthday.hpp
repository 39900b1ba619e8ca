#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <variant>

#include "washprob/exactnum.hpp"

namespace washprob::birthday {

using exactnum::Prob;

struct Unlabeled {
  unsigned count = 0;  // k people, no labels
};

struct BoyGirl {
  unsigned boys = 0;   // buys
  unsigned girls = 0;  // sells
};

/// One collision-problem instance: n days, span width d (collision means
/// strictly fewer than d days apart; d = 1 is the same-day case), and a
/// population that is either k unlabeled people or b boys + g girls.
struct CollisionSpec {
  unsigned days = 0;  // n
  unsigned span = 1;  // d
  std::variant<Unlabeled, BoyGirl> population = Unlabeled{};

  bool labeled() const { return std::holds_alternative<BoyGirl>(population); }
  unsigned population_size() const;
  void validate() const;  // throws std::invalid_argument on a bad instance

  static CollisionSpec unlabeled(unsigned n, unsigned d, unsigned k);
  static CollisionSpec boy_girl(unsigned n, unsigned d, unsigned b, unsigned g);
};

/// Exact B(n,k): probability of at least one shared day among k iid
/// uniform people over n days. Exactly 1 when k > n.
Prob birthday_prob(unsigned n, unsigned k);

/// Exact B_d(n,k): any two of k people land strictly fewer than d days
/// apart. Exactly 1 when n < (k-1)(d-1)+k.
Prob span_birthday_prob(unsigned n, unsigned d, unsigned k);

/// Exact B(n,b,g): some boy and some girl share a day. Single-sum form.
Prob boygirl_prob(unsigned n, unsigned b, unsigned g);

/// Same probability via the double-sum form; equals boygirl_prob exactly.
Prob boygirl_prob_double_sum(unsigned n, unsigned b, unsigned g);

/// Exact B_d(n,g,b): the span analogue of the boy-girl problem. Terms
/// whose falling-factorial base is exhausted contribute 0; the result is
/// clamped into [0,1].
Prob boygirl_span_prob(unsigned n, unsigned d, unsigned b, unsigned g);

struct ThresholdResult {
  unsigned k_star = 0;     // smallest population meeting the target
  Prob prob_at_k_star;
  Prob prob_below;         // probability at k_star - 1 (zero for k_star = 1)
};

/// Raised when a threshold search exhausts its population cap without
/// reaching the target (the family's supremum is below the target).
struct UnattainableTarget : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Linear scan from k = 1 over a family that is monotone nondecreasing in
/// population size. Rejects target = 0; throws UnattainableTarget past
/// max_k.
ThresholdResult min_k_at_least(const Prob& target,
                               const std::function<Prob(unsigned)>& family,
                               unsigned max_k);

enum class Family { birthday, span, boygirl_balanced, boygirl_span_balanced };

/// Threshold search with the population cap / attainability analysis done
/// per family. For the balanced boy-girl families the parameter counts
/// h = b = g.
ThresholdResult min_population_for(const Prob& target, Family family,
                                   unsigned n, unsigned d = 1);

/// Smallest k at which B_d(n,k) saturates at exactly 1.
unsigned unlabeled_saturation_k(unsigned n, unsigned d);

/// sqrt(2 ln 2 * n), the classical half-probability population estimate.
double approx_k_half(unsigned n);

/// 1 - exp(-C(k,2)/n), the Poisson collision-count approximation.
double poisson_approx_prob(unsigned n, unsigned k);

struct SpanApprox {
  std::optional<double> linear;  // 0.83*sqrt(n/(d-4)); empty when d <= 4
  double cyclic = 0.0;           // 1.2*sqrt(n/(2d+1)), cyclic-year variant
};

/// Closed-form half-probability estimates for the span problem.
SpanApprox approx_k_half_span(unsigned n, unsigned d);

/// exp(-c^2/(2t)): Chernoff bound on Prob[eta_1+...+eta_t > c] for
/// Rademacher buy/sell signs.
double chernoff_imbalance_bound(unsigned t, double c);

}  // namespace washprob::birthday
