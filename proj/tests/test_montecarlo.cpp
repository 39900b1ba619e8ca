#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdint>

#include "washprob/birthday.hpp"
#include "washprob/montecarlo.hpp"

using namespace washprob::montecarlo;
using washprob::birthday::CollisionSpec;
using washprob::exactnum::BigNat;
using washprob::exactnum::Prob;
using washprob::exactnum::Rat;

TEST_CASE("SplitMix64 matches the published sequence from seed 0") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xe220a8397b1dcdafULL);
  CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(rng.next() == 0x06c45d188009454fULL);
}

TEST_CASE("uniform_below stays in range and is deterministic") {
  SplitMix64 a(123);
  SplitMix64 b(123);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t va = a.uniform_below(365);
    CHECK(va < 365);
    CHECK(va == b.uniform_below(365));
  }
}

TEST_CASE("collision predicate distinguishes labeled and unlabeled events") {
  using detail::has_qualifying_collision;
  // two boys sharing a day is not a labeled collision
  const std::array<unsigned, 3> same_label_share{4, 4, 9};
  CHECK_FALSE(has_qualifying_collision(same_label_share, 2, true, 3));
  // a boy and a girl sharing a day is
  const std::array<unsigned, 2> cross_share{4, 4};
  CHECK(has_qualifying_collision(cross_share, 1, true, 1));
  // distinct occupied days closer than d collide regardless of labels
  const std::array<unsigned, 2> near_boys{4, 5};
  CHECK(has_qualifying_collision(near_boys, 2, true, 2));
  CHECK_FALSE(has_qualifying_collision(near_boys, 2, true, 1));
  // unlabeled: sharing a day always collides
  CHECK(has_qualifying_collision(cross_share, 2, false, 1));
}

TEST_CASE("simulation is deterministic and handles the forced-collision case") {
  const SimConfig config{CollisionSpec::unlabeled(1, 1, 2), 50, 9};
  const SimResult r1 = simulate_collision(config);
  const SimResult r2 = simulate_collision(config);
  CHECK(r1.hits == r2.hits);
  CHECK(r1.estimate == 1.0);
  CHECK(r1.trials == 50);

  const SimConfig labeled{CollisionSpec::boy_girl(252, 30, 1, 1), 2000, 7};
  CHECK(simulate_collision(labeled).hits == simulate_collision(labeled).hits);
  CHECK_THROWS_AS(simulate_collision({CollisionSpec::unlabeled(5, 1, 2), 0, 1}),
                  std::invalid_argument);
}

TEST_CASE("simulation estimates agree with the exact values") {
  {
    const SimResult r = simulate_collision({CollisionSpec::unlabeled(365, 1, 23), 100000, 1});
    const double exact = washprob::birthday::birthday_prob(365, 23).to_double();
    CHECK(std::fabs(r.estimate - exact) <= 3.0 * r.ci99_halfwidth);
  }
  {
    const SimResult r = simulate_collision({CollisionSpec::boy_girl(252, 30, 1, 1), 100000, 1});
    const double exact = washprob::birthday::boygirl_span_prob(252, 30, 1, 1).to_double();
    CHECK(std::fabs(r.estimate - exact) <= 3.0 * r.ci99_halfwidth);
  }
  {
    const SimResult r = simulate_collision({CollisionSpec::boy_girl(40, 3, 3, 2), 100000, 5});
    const double exact = washprob::birthday::boygirl_span_prob(40, 3, 3, 2).to_double();
    CHECK(std::fabs(r.estimate - exact) <= 3.0 * r.ci99_halfwidth);
  }
}

TEST_CASE("a 100-seed battery stays inside three confidence halfwidths") {
  {
    const double exact = washprob::birthday::birthday_prob(365, 23).to_double();
    unsigned inside = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const SimResult r =
          simulate_collision({CollisionSpec::unlabeled(365, 1, 23), 20000, seed});
      if (std::fabs(r.estimate - exact) <= 3.0 * r.ci99_halfwidth) ++inside;
    }
    CHECK(inside >= 99);
  }
  {
    const double exact = washprob::birthday::boygirl_span_prob(40, 3, 3, 2).to_double();
    unsigned inside = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const SimResult r =
          simulate_collision({CollisionSpec::boy_girl(40, 3, 3, 2), 20000, seed});
      if (std::fabs(r.estimate - exact) <= 3.0 * r.ci99_halfwidth) ++inside;
    }
    CHECK(inside >= 99);
  }
}

TEST_CASE("exhaustive oracle on pinned instances") {
  CHECK(exhaustive_collision_prob(CollisionSpec::unlabeled(2, 1, 2)) ==
        Prob(BigNat(1), BigNat(2)));
  CHECK(exhaustive_collision_prob(CollisionSpec::boy_girl(6, 2, 2, 2)) ==
        washprob::birthday::boygirl_span_prob(6, 2, 2, 2));
  CHECK(exhaustive_collision_prob(CollisionSpec::unlabeled(8, 2, 3)) ==
        washprob::birthday::span_birthday_prob(8, 2, 3));
}

TEST_CASE("exhaustive oracle equals the closed forms on a small grid") {
  for (unsigned n = 1; n <= 6; ++n)
    for (unsigned d = 1; d <= 3; ++d) {
      for (unsigned k = 1; k <= 3; ++k)
        CHECK(exhaustive_collision_prob(CollisionSpec::unlabeled(n, d, k)) ==
              washprob::birthday::span_birthday_prob(n, d, k));
      for (unsigned b = 1; b <= 2; ++b)
        for (unsigned g = 1; g <= 2; ++g)
          CHECK(exhaustive_collision_prob(CollisionSpec::boy_girl(n, d, b, g)) ==
                washprob::birthday::boygirl_span_prob(n, d, b, g));
    }
}

TEST_CASE("exhaustive oracle refuses oversized instances") {
  CHECK_THROWS_AS(exhaustive_collision_prob(CollisionSpec::unlabeled(365, 1, 23)),
                  std::length_error);
  CHECK_THROWS_AS(exhaustive_collision_prob(CollisionSpec::unlabeled(10, 1, 5), 99),
                  std::length_error);
  CHECK_NOTHROW(exhaustive_collision_prob(CollisionSpec::unlabeled(10, 1, 5), 100000));
}

TEST_CASE("trade sign paths") {
  const TradeSignPath pin = simulate_trade_signs(8, 42);
  const std::array<std::int8_t, 8> expected{1, -1, -1, -1, -1, 1, -1, 1};
  REQUIRE(pin.signs.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) CHECK(pin.signs[i] == expected[i]);
  CHECK(pin.buys == 3);
  CHECK(pin.sells == 5);
  CHECK(pin.sum() == -2);

  const TradeSignPath single = simulate_trade_signs(1, 77);
  CHECK(std::abs(single.sum()) == 1);

  const TradeSignPath a = simulate_trade_signs(500, 3);
  const TradeSignPath b = simulate_trade_signs(500, 3);
  CHECK(a.signs == b.signs);
  CHECK(a.buys + a.sells == 500);
  CHECK_THROWS_AS(simulate_trade_signs(0, 1), std::invalid_argument);
}

TEST_CASE("trade-sign imbalance stays under the exponential bound") {
  const std::uint64_t t = 10000;
  for (const double c : {50.0, 100.0}) {
    unsigned exceed = 0;
    const unsigned seeds = 1000;
    for (std::uint64_t seed = 1; seed <= seeds; ++seed)
      if (static_cast<double>(simulate_trade_signs(t, seed).sum()) > c) ++exceed;
    const double freq = static_cast<double>(exceed) / seeds;
    const double bound = std::exp(-c * c / (2.0 * static_cast<double>(t)));
    const double noise = 3.0 * std::sqrt(bound * (1.0 - bound) / seeds);
    CHECK(freq <= bound + noise);
  }
}

TEST_CASE("expected trades per asset") {
  CHECK(expected_trades_per_asset(100, Rat(1), Rat(4)) == Rat(25));
  CHECK(expected_trades_per_asset(77, Rat(5), Rat(5)) == Rat(77));
  CHECK(expected_trades_per_asset(252, Rat(3), Rat(7)) == Rat(108));
  CHECK_THROWS_AS(expected_trades_per_asset(10, Rat(1), Rat(0)), std::invalid_argument);
  CHECK_THROWS_AS(expected_trades_per_asset(10, Rat(9), Rat(7)), std::invalid_argument);
}
