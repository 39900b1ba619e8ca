#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "washprob/birthday.hpp"

using namespace washprob::birthday;
using washprob::exactnum::BigNat;
using washprob::exactnum::Prob;

namespace {

// Brute-force oracles over all n^pop assignments, written against the bare
// collision definitions rather than any library code.

Prob brute_force_unlabeled(unsigned n, unsigned d, unsigned k) {
  std::vector<unsigned> days(k, 1);
  std::uint64_t total = 1;
  for (unsigned i = 0; i < k; ++i) total *= n;
  std::uint64_t hits = 0;
  for (std::uint64_t a = 0; a < total; ++a) {
    bool collide = false;
    for (unsigned i = 0; i < k && !collide; ++i)
      for (unsigned j = i + 1; j < k && !collide; ++j) {
        const unsigned diff = days[i] > days[j] ? days[i] - days[j] : days[j] - days[i];
        collide = diff < d;
      }
    hits += collide;
    for (unsigned p = 0; p < k; ++p) {
      if (days[p] < n) {
        ++days[p];
        break;
      }
      days[p] = 1;
    }
  }
  return Prob(BigNat(hits), BigNat(total));
}

// The event the span boy-girl closed form counts: a day occupied by both
// labels collides, and any two distinct occupied days fewer than d apart
// collide; a day shared by one label alone does not.
Prob brute_force_boygirl(unsigned n, unsigned d, unsigned b, unsigned g) {
  const unsigned pop = b + g;
  std::vector<unsigned> days(pop, 1);
  std::uint64_t total = 1;
  for (unsigned i = 0; i < pop; ++i) total *= n;
  std::uint64_t hits = 0;
  for (std::uint64_t a = 0; a < total; ++a) {
    bool collide = false;
    for (unsigned i = 0; i < pop && !collide; ++i)
      for (unsigned j = i + 1; j < pop && !collide; ++j) {
        const unsigned diff = days[i] > days[j] ? days[i] - days[j] : days[j] - days[i];
        if (diff == 0)
          collide = (i < b) != (j < b);
        else
          collide = diff < d;
      }
    hits += collide;
    for (unsigned p = 0; p < pop; ++p) {
      if (days[p] < n) {
        ++days[p];
        break;
      }
      days[p] = 1;
    }
  }
  return Prob(BigNat(hits), BigNat(total));
}

}  // namespace

TEST_CASE("standard birthday probability") {
  CHECK(birthday_prob(365, 23).to_decimal(4) == "0.5073");
  CHECK(birthday_prob(365, 22) < Prob(BigNat(1), BigNat(2)));
  CHECK(birthday_prob(365, 23) >= Prob(BigNat(1), BigNat(2)));
  for (unsigned n : {1u, 5u, 365u}) CHECK(birthday_prob(n, 1) == Prob::zero());
  CHECK(birthday_prob(5, 6) == Prob::one());
  CHECK(birthday_prob(2, 2) == Prob(BigNat(1), BigNat(2)));
  CHECK_THROWS_AS(birthday_prob(0, 3), std::invalid_argument);
}

TEST_CASE("span probability reduces to the standard problem at d=1") {
  for (unsigned n = 1; n <= 40; ++n)
    for (unsigned k = 1; k <= 10; ++k)
      CHECK(span_birthday_prob(n, 1, k) == birthday_prob(n, k));
}

TEST_CASE("span probability saturation and brute force") {
  CHECK(span_birthday_prob(10, 4, 4) == Prob::one());  // n < (k-1)(d-1)+k
  for (unsigned k = 2; k <= 6; ++k)
    for (unsigned d = 2; d <= 6; ++d) {
      const unsigned need = (k - 1) * (d - 1) + k;
      CHECK(span_birthday_prob(need - 1, d, k) == Prob::one());
      CHECK(span_birthday_prob(need, d, k) < Prob::one());
    }
  CHECK(span_birthday_prob(8, 2, 3) == Prob(BigNat(49), BigNat(64)));
  CHECK(span_birthday_prob(8, 2, 3) == brute_force_unlabeled(8, 2, 3));
  for (unsigned n = 2; n <= 7; ++n)
    for (unsigned d = 1; d <= 3; ++d)
      for (unsigned k = 1; k <= 3; ++k)
        CHECK(span_birthday_prob(n, d, k) == brute_force_unlabeled(n, d, k));
}

TEST_CASE("boy-girl single-sum values") {
  CHECK(boygirl_prob(252, 13, 13).to_decimal(4) == "0.4891");
  CHECK(boygirl_prob(252, 14, 14).to_decimal(4) == "0.5410");
  CHECK(boygirl_prob(365, 1, 1) == Prob(BigNat(1), BigNat(365)));
  CHECK(boygirl_prob(1, 3, 2) == Prob::one());
  CHECK(boygirl_prob(7, 3, 2) == brute_force_boygirl(7, 1, 3, 2));
}

TEST_CASE("boy-girl double-sum form agrees exactly") {
  CHECK(boygirl_prob_double_sum(252, 13, 13) == boygirl_prob(252, 13, 13));
  CHECK(boygirl_prob_double_sum(9, 1, 1) == Prob(BigNat(1), BigNat(9)));
  for (unsigned n = 1; n <= 25; n += 3)
    for (unsigned b = 1; b <= 6; ++b)
      for (unsigned g = 1; g <= 6; ++g)
        CHECK(boygirl_prob_double_sum(n, b, g) == boygirl_prob(n, b, g));
}

TEST_CASE("boy-girl symmetry in b and g") {
  for (unsigned n : {5u, 17u, 252u})
    for (unsigned b = 1; b <= 5; ++b)
      for (unsigned g = b; g <= 5; ++g) {
        CHECK(boygirl_prob(n, b, g) == boygirl_prob(n, g, b));
        CHECK(boygirl_span_prob(n, 3, b, g) == boygirl_span_prob(n, 3, g, b));
      }
}

TEST_CASE("boy-girl span values") {
  CHECK(boygirl_span_prob(252, 30, 1, 1) == Prob(BigNat(2333), BigNat(10584)));
  CHECK(boygirl_span_prob(252, 30, 1, 1).to_decimal(3) == "0.220");
  for (unsigned n = 1; n <= 40; n += 3)
    for (unsigned b = 1; b <= 6; ++b)
      for (unsigned g = 1; g <= 6; ++g)
        CHECK(boygirl_span_prob(n, 1, b, g) == boygirl_prob(n, b, g));
  CHECK(boygirl_span_prob(6, 2, 2, 2) == Prob(BigNat(307), BigNat(324)));
  CHECK(boygirl_span_prob(6, 2, 2, 2) == brute_force_boygirl(6, 2, 2, 2));
  for (unsigned n = 2; n <= 7; ++n)
    for (unsigned d = 1; d <= 3; ++d)
      for (unsigned b = 1; b <= 2; ++b)
        for (unsigned g = 1; g <= 2; ++g)
          CHECK(boygirl_span_prob(n, d, b, g) == brute_force_boygirl(n, d, b, g));
}

TEST_CASE("families are monotone in population size") {
  for (unsigned n = 1; n <= 40; n += 3) {
    for (unsigned d = 1; d <= 5; ++d) {
      Prob prev = Prob::zero();
      for (unsigned k = 1; k <= 8; ++k) {
        const Prob p = span_birthday_prob(n, d, k);
        CHECK(p >= prev);
        prev = p;
      }
      prev = Prob::zero();
      for (unsigned h = 1; h <= 4; ++h) {
        const Prob p = boygirl_span_prob(n, d, h, h);
        CHECK(p >= prev);
        prev = p;
      }
      prev = Prob::zero();
      for (unsigned b = 1; b <= 8; ++b) {
        const Prob p = boygirl_span_prob(n, d, b, 2);
        CHECK(p >= prev);
        prev = p;
      }
    }
  }
}

TEST_CASE("threshold searches") {
  const Prob half(BigNat(1), BigNat(2));
  const auto r1 = min_population_for(half, Family::birthday, 365);
  CHECK(r1.k_star == 23);
  CHECK(r1.prob_below < half);
  CHECK(r1.prob_at_k_star >= half);

  const auto r2 = min_population_for(half, Family::boygirl_balanced, 252);
  CHECK(r2.k_star == 14);
  CHECK(r2.prob_below.to_decimal(4) == "0.4891");
  CHECK(r2.prob_at_k_star.to_decimal(4) == "0.5410");

  const auto r3 = min_population_for(Prob::one(), Family::birthday, 365);
  CHECK(r3.k_star == 366);
  CHECK(r3.prob_at_k_star == Prob::one());

  const auto r4 = min_population_for(Prob::one(), Family::span, 10, 4);
  CHECK(span_birthday_prob(10, 4, r4.k_star) == Prob::one());
  CHECK(span_birthday_prob(10, 4, r4.k_star - 1) < Prob::one());

  CHECK_THROWS_AS(min_population_for(Prob::zero(), Family::birthday, 365),
                  std::invalid_argument);
  CHECK_THROWS_AS(min_population_for(Prob::one(), Family::boygirl_balanced, 2),
                  UnattainableTarget);
  const auto r5 = min_population_for(Prob::one(), Family::boygirl_span_balanced, 5, 6);
  CHECK(r5.k_star == 1);  // n <= d saturates immediately
}

TEST_CASE("min_k_at_least over a custom family") {
  const Prob half(BigNat(1), BigNat(2));
  const auto family = [](unsigned k) { return birthday_prob(100, k); };
  const auto r = min_k_at_least(half, family, 101);
  CHECK(r.k_star == 13);  // B(100,12) < 1/2 <= B(100,13)
  CHECK(r.prob_below == birthday_prob(100, 12));
  CHECK(r.prob_at_k_star == birthday_prob(100, 13));
  CHECK_THROWS_AS(min_k_at_least(Prob::one(), family, 5), UnattainableTarget);
  CHECK_THROWS_AS(min_k_at_least(Prob::zero(), family, 101), std::invalid_argument);
}

TEST_CASE("closed-form approximations") {
  CHECK(approx_k_half(365) == doctest::Approx(22.494).epsilon(1e-3));
  CHECK(approx_k_half(252) == doctest::Approx(18.69).epsilon(1e-2));
  CHECK(approx_k_half(1) == doctest::Approx(std::sqrt(2.0 * std::log(2.0))));

  CHECK(poisson_approx_prob(365, 23) ==
        doctest::Approx(birthday_prob(365, 23).to_double()).epsilon(0.01));
  CHECK(poisson_approx_prob(252, 14) == doctest::Approx(1.0 - std::exp(-91.0 / 252.0)));
  // first-order behaviour for a single potential pair
  CHECK(std::fabs(poisson_approx_prob(1000000, 2) - 1e-6) < 1e-11);

  const auto s1 = approx_k_half_span(365, 30);
  REQUIRE(s1.linear.has_value());
  CHECK(*s1.linear == doctest::Approx(3.1098).epsilon(1e-3));
  const auto s2 = approx_k_half_span(365, 5);
  CHECK(*s2.linear == doctest::Approx(0.83 * std::sqrt(365.0)));
  const auto s3 = approx_k_half_span(252, 30);
  CHECK(s3.cyclic == doctest::Approx(2.439).epsilon(1e-3));
  CHECK_FALSE(approx_k_half_span(365, 4).linear.has_value());
  CHECK(approx_k_half_span(365, 4).cyclic > 0);
}

TEST_CASE("chernoff imbalance bound") {
  CHECK(washprob::exactnum::format_truncated(chernoff_imbalance_bound(10, 1.0), 3) == "0.951");
  CHECK(chernoff_imbalance_bound(10, 1.0) == doctest::Approx(0.951229).epsilon(1e-5));
  CHECK(chernoff_imbalance_bound(50, 1.0) == doctest::Approx(0.990050).epsilon(1e-5));
  CHECK(chernoff_imbalance_bound(10, 1e-9) == doctest::Approx(1.0));
  CHECK_THROWS_AS(chernoff_imbalance_bound(10, 0.0), std::invalid_argument);
}
