#include "klat/gallery.hpp"

#include <stdexcept>

#include "klat/errors.hpp"

namespace klat {

FiniteGame date_dilemma() {
  std::vector<Rational> row = {3, 0, 0, 5};
  return FiniteGame::make({2, 2}, {row, row}, {{"C", "A"}, {"C", "A"}});
}

int elected_leader(int num_players, const std::vector<int>& votes) {
  std::vector<int> count(static_cast<std::size_t>(num_players) + 1, 0);
  for (int v : votes) {
    if (v < 1 || v > num_players)
      throw std::invalid_argument("vote out of range");
    ++count[static_cast<std::size_t>(v)];
  }
  int winner = 1;
  for (int c = 2; c <= num_players; ++c)
    if (count[static_cast<std::size_t>(c)] > count[static_cast<std::size_t>(winner)])
      winner = c;
  return winner;
}

FiniteGame majority_voting(int n, long long budget) {
  if (n < 1) throw std::invalid_argument("majority voting needs n >= 1");
  const int players = 2 * n + 1;
  long long total = 1;
  for (int i = 0; i < players; ++i) {
    total *= players;
    if (total > budget)
      throw BudgetError("majority voting tensor exceeds budget: " +
                        std::to_string(players) + "^" +
                        std::to_string(players) + " profiles > budget " +
                        std::to_string(budget));
  }
  std::vector<std::vector<Rational>> payoffs(
      static_cast<std::size_t>(players),
      std::vector<Rational>(static_cast<std::size_t>(total)));
  std::vector<int> votes(static_cast<std::size_t>(players), 1);
  for (long long flat = 0; flat < total; ++flat) {
    long long rest = flat;
    for (int i = players - 1; i >= 0; --i) {
      votes[static_cast<std::size_t>(i)] = static_cast<int>(rest % players) + 1;
      rest /= players;
    }
    int leader = elected_leader(players, votes);
    payoffs[static_cast<std::size_t>(leader - 1)]
           [static_cast<std::size_t>(flat)] = Rational(1);
  }
  return FiniteGame::make(std::vector<int>(static_cast<std::size_t>(players),
                                           players),
                          std::move(payoffs));
}

FiniteGame inspection_game(const Rational& w, const Rational& g,
                           const Rational& h, const Rational& v) {
  if (!(Rational(0) < g && g < w) || !(Rational(0) < h && h < w))
    throw std::invalid_argument("require 0 < g < w and 0 < h < w");
  // Row-major with the boss's column varying fastest.
  std::vector<Rational> employee = {Rational(0), w, w - g, w - g};
  std::vector<Rational> boss = {-h, -w, v - w - h, v - w};
  return FiniteGame::make({2, 2}, {employee, boss},
                          {{"notwork", "work"}, {"inspect", "noinspect"}});
}

ContinuousGame truncated_projection_game(int n_players) {
  if (n_players < 2)
    throw std::invalid_argument("the projection game needs at least 2 players");
  ContinuousGame cg;
  cg.num_players = n_players;
  cg.intervals.assign(static_cast<std::size_t>(n_players), {0.0, 1.0});
  std::string others = "max(";
  for (int i = 2; i <= n_players; ++i) {
    if (i > 2) others += ", ";
    others += "x" + std::to_string(i);
  }
  others += ")";
  cg.payoffs.push_back(parse_expr("ite(x1 + " + others + " < 1, x1, 0)"));
  for (int i = 2; i <= n_players; ++i)
    cg.payoffs.push_back(parse_expr("x" + std::to_string(i)));
  return cg;
}

DiscretizedGame witness_game(int n_players, int grid_m, long long budget) {
  return discretize(truncated_projection_game(n_players), grid_m, budget);
}

}  // namespace klat
