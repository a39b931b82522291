#pragma once

#include <random>

#include "klat/game.hpp"

namespace klat::testing {

// Zero-sum coin matching: player 1 wins on agreement, player 2 on
// disagreement. Has no pure equilibrium.
inline FiniteGame matching_pennies() {
  std::vector<Rational> p1 = {1, -1, -1, 1};
  std::vector<Rational> p2 = {-1, 1, 1, -1};
  return FiniteGame::make({2, 2}, {p1, p2});
}

inline FiniteGame random_game(std::mt19937_64& rng, int min_players = 2,
                              int max_players = 4, int min_strategies = 2,
                              int max_strategies = 3) {
  std::uniform_int_distribution<int> players(min_players, max_players);
  std::uniform_int_distribution<int> strategies(min_strategies, max_strategies);
  std::uniform_int_distribution<long long> numerator(-12, 12);
  std::uniform_int_distribution<long long> denominator(1, 4);
  const int n = players(rng);
  std::vector<int> counts;
  long long total = 1;
  for (int i = 0; i < n; ++i) {
    counts.push_back(strategies(rng));
    total *= counts.back();
  }
  std::vector<std::vector<Rational>> payoffs(static_cast<std::size_t>(n));
  for (auto& tensor : payoffs) {
    tensor.reserve(static_cast<std::size_t>(total));
    for (long long e = 0; e < total; ++e)
      tensor.emplace_back(numerator(rng), denominator(rng));
  }
  return FiniteGame::make(std::move(counts), std::move(payoffs));
}

}  // namespace klat::testing
