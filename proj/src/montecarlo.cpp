#include "washprob/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace washprob::montecarlo {

using exactnum::BigNat;

namespace detail {

bool has_qualifying_collision(std::span<const unsigned> days, unsigned boys,
                              bool labeled, unsigned span) {
  for (std::size_t i = 0; i < days.size(); ++i) {
    for (std::size_t j = i + 1; j < days.size(); ++j) {
      const unsigned diff = days[i] > days[j] ? days[i] - days[j] : days[j] - days[i];
      if (labeled && diff == 0) {
        if ((i < boys) != (j < boys)) return true;
      } else if (diff < span) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace detail

namespace {

// Sorted-scan version of the qualifying-collision predicate: any two
// distinct occupied days closer than `span` collide; a shared day collides
// unless the population is labeled and only one label occupies it.
bool collides_sorted(std::vector<std::pair<unsigned, bool>>& people, unsigned span,
                     bool labeled) {
  std::sort(people.begin(), people.end());
  unsigned run_day = people.front().first;
  bool run_has_boy = !people.front().second;
  bool run_has_girl = people.front().second;
  for (std::size_t i = 1; i < people.size(); ++i) {
    const auto [day, is_girl] = people[i];
    if (day == run_day) {
      if (!labeled) return true;  // shared day always collides unlabeled
      run_has_boy = run_has_boy || !is_girl;
      run_has_girl = run_has_girl || is_girl;
      if (run_has_boy && run_has_girl) return true;
    } else {
      if (day - run_day < span) return true;
      run_day = day;
      run_has_boy = !is_girl;
      run_has_girl = is_girl;
    }
  }
  return false;
}

}  // namespace

SimResult simulate_collision(const SimConfig& config) {
  config.spec.validate();
  if (config.trials == 0) throw std::invalid_argument("trials must be >= 1");
  const unsigned n = config.spec.days;
  const unsigned d = config.spec.span;
  const bool labeled = config.spec.labeled();
  unsigned boys = 0;
  unsigned girls = 0;
  if (labeled) {
    const auto& bg = std::get<birthday::BoyGirl>(config.spec.population);
    boys = bg.boys;
    girls = bg.girls;
  } else {
    boys = std::get<birthday::Unlabeled>(config.spec.population).count;
  }
  const unsigned pop = labeled ? boys + girls : boys;

  std::uint64_t hits = 0;
  if (d == 1) {
    // Day-occupancy stamps keyed by trial id avoid clearing between trials.
    std::vector<std::uint64_t> stamp(n + 1, 0);
    for (std::uint64_t t = 0; t < config.trials; ++t) {
      SplitMix64 rng(config.seed ^ t);
      const std::uint64_t mark = t + 1;
      bool hit = false;
      if (!labeled) {
        for (unsigned p = 0; p < pop; ++p) {
          const auto day = static_cast<unsigned>(1 + rng.uniform_below(n));
          if (stamp[day] == mark) {
            hit = true;
            break;
          }
          stamp[day] = mark;
        }
      } else {
        for (unsigned p = 0; p < boys; ++p)
          stamp[1 + rng.uniform_below(n)] = mark;
        for (unsigned p = 0; p < girls && !hit; ++p)
          hit = stamp[1 + rng.uniform_below(n)] == mark;
      }
      hits += hit;
    }
  } else {
    std::vector<std::pair<unsigned, bool>> people(pop);
    for (std::uint64_t t = 0; t < config.trials; ++t) {
      SplitMix64 rng(config.seed ^ t);
      for (unsigned p = 0; p < pop; ++p)
        people[p] = {static_cast<unsigned>(1 + rng.uniform_below(n)),
                     labeled && p >= boys};
      hits += collides_sorted(people, d, labeled);
    }
  }

  SimResult result;
  result.hits = hits;
  result.trials = config.trials;
  result.estimate = static_cast<double>(hits) / static_cast<double>(config.trials);
  result.ci99_halfwidth =
      2.576 * std::sqrt(result.estimate * (1.0 - result.estimate) /
                        static_cast<double>(config.trials));
  return result;
}

Prob exhaustive_collision_prob(const CollisionSpec& spec, std::uint64_t guard) {
  spec.validate();
  const unsigned n = spec.days;
  const unsigned pop = spec.population_size();
  std::uint64_t total = 1;
  for (unsigned i = 0; i < pop; ++i) {
    if (total > guard / n)
      throw std::length_error("exhaustive oracle: n^population exceeds the guard of " +
                              std::to_string(guard) + " assignments");
    total *= n;
  }

  const bool labeled = spec.labeled();
  const unsigned boys =
      labeled ? std::get<birthday::BoyGirl>(spec.population).boys : pop;

  std::vector<unsigned> days(pop, 1);
  std::uint64_t hits = 0;
  for (std::uint64_t a = 0; a < total; ++a) {
    hits += detail::has_qualifying_collision(days, boys, labeled, spec.span);
    for (unsigned p = 0; p < pop; ++p) {  // mixed-radix increment
      if (days[p] < n) {
        ++days[p];
        break;
      }
      days[p] = 1;
    }
  }
  return Prob(BigNat(hits), BigNat(total));
}

TradeSignPath simulate_trade_signs(std::uint64_t t, std::uint64_t seed) {
  if (t == 0) throw std::invalid_argument("t must be >= 1");
  TradeSignPath path;
  path.signs.reserve(t);
  SplitMix64 rng(seed);
  for (std::uint64_t i = 0; i < t; ++i) {
    const bool buy = (rng.next() >> 63) != 0;
    path.signs.push_back(buy ? 1 : -1);
    if (buy)
      ++path.buys;
    else
      ++path.sells;
  }
  return path;
}

Rat expected_trades_per_asset(std::uint64_t total_trades, const Rat& asset_value,
                              const Rat& portfolio_value) {
  if (total_trades == 0) throw std::invalid_argument("total trades must be >= 1");
  if (portfolio_value <= 0) throw std::invalid_argument("portfolio value must be > 0");
  if (asset_value <= 0 || asset_value > portfolio_value)
    throw std::invalid_argument("asset value must satisfy 0 < asset <= portfolio");
  return Rat(total_trades) * asset_value / portfolio_value;
}

}  // namespace washprob::montecarlo
