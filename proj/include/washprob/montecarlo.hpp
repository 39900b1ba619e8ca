#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "washprob/birthday.hpp"
#include "washprob/exactnum.hpp"

namespace washprob::montecarlo {

using birthday::CollisionSpec;
using exactnum::Prob;
using exactnum::Rat;

/// SplitMix64 (Steele/Lea/Flood; Vigna's reference constants). The state
/// advances by the golden gamma and the output is a bit-mixed hash of it,
/// so any implementation language reproduces identical streams from
/// identical seeds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Unbiased draw from [0, n): rejects raw values below 2^64 mod n, then
  /// reduces. Requires n >= 1.
  std::uint64_t uniform_below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::uint64_t state_;
};

struct SimConfig {
  CollisionSpec spec;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

struct SimResult {
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double estimate = 0.0;
  double ci99_halfwidth = 0.0;  // 2.576 * sqrt(est*(1-est)/trials)
};

inline constexpr std::uint64_t kDefaultExhaustiveGuard = 10'000'000;

namespace detail {

/// The collision event the closed forms count. Unlabeled: any two people
/// strictly fewer than `span` days apart (sharing a day included). Labeled
/// (first `boys` entries are boys, the rest girls): a day shared by both
/// labels collides, and any two distinct occupied days strictly fewer than
/// `span` days apart collide; a day shared by one label only does not by
/// itself collide.
bool has_qualifying_collision(std::span<const unsigned> days, unsigned boys,
                              bool labeled, unsigned span);

}  // namespace detail

/// Draws `trials` independent instances of the given population as iid
/// uniform days in [1, n] and counts qualifying collisions. Trial i uses
/// the substream SplitMix64(seed XOR i); within a trial, boys are drawn
/// before girls, each person in index order. Bit-identical results for
/// identical configs.
SimResult simulate_collision(const SimConfig& config);

/// Iterates all n^population day assignments and returns the exact
/// qualifying-collision probability. Refuses instances with more than
/// `guard` assignments (std::length_error).
Prob exhaustive_collision_prob(const CollisionSpec& spec,
                               std::uint64_t guard = kDefaultExhaustiveGuard);

struct TradeSignPath {
  std::vector<std::int8_t> signs;  // +1 buy, -1 sell
  std::uint64_t buys = 0;
  std::uint64_t sells = 0;

  std::int64_t sum() const {
    return static_cast<std::int64_t>(buys) - static_cast<std::int64_t>(sells);
  }
};

/// t iid Rademacher draws (sign = top bit of each SplitMix64 output);
/// deterministic per seed.
TradeSignPath simulate_trade_signs(std::uint64_t t, std::uint64_t seed);

/// T * |a_i| / |Pi|, the asset-weighted expected trade count, exact.
Rat expected_trades_per_asset(std::uint64_t total_trades, const Rat& asset_value,
                              const Rat& portfolio_value);

}  // namespace washprob::montecarlo
