#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "klat/expr.hpp"
#include "klat/game.hpp"

namespace klat {

// Scalar-strategy game on intervals: every player picks a number from
// [lo_i, hi_i] and payoffs are expression trees over x1..xN (and optional
// family parameters b1..bM bound in `parameters`).
struct ContinuousGame {
  int num_players = 0;
  std::vector<std::pair<double, double>> intervals;
  std::vector<ExprPtr> payoffs;
  std::vector<double> parameters;
};

std::vector<std::string> validate(const ContinuousGame& game);

// A finite float-payoff game obtained by sampling each interval on a uniform
// grid, plus the grid coordinates so profiles map back to strategy values.
struct DiscretizedGame {
  GridGame game;
  std::vector<std::vector<double>> coordinates;  // [player][grid index]

  std::vector<double> profile_point(const PureProfile& x) const {
    std::vector<double> point(x.choices.size());
    for (std::size_t i = 0; i < x.choices.size(); ++i)
      point[i] = coordinates[i][static_cast<std::size_t>(x.choices[i] - 1)];
    return point;
  }
};

// Grid payoff tabulation; OpenMP kernel over nodes.
DiscretizedGame discretize(const ContinuousGame& game, int m,
                           long long budget = 1'000'000);

// Reference tabulation kept for testing the kernel.
DiscretizedGame discretize_serial(const ContinuousGame& game, int m,
                                  long long budget = 1'000'000);

// Closed-form duopoly analysis for p(x) = intercept - slope * (x1 + x2) with
// costs c1 = 5 x1 and c2 = x2^2 / 2. Both best responses are linear; the
// equilibrium solves the 2x2 system.
struct CournotReport {
  // best reply of player 1: x1 = br1_intercept + br1_slope * x2; same shape
  // for player 2 as a function of x1.
  double br1_intercept, br1_slope;
  double br2_intercept, br2_slope;
  std::array<double, 2> equilibrium;
  double price;
  std::array<double, 2> profits;
  std::array<double, 2> deviation;  // the pair move that breaks bilaterality
  double deviation_profit;          // player 1's profit at that pair move
};

CournotReport cournot_analysis(double price_intercept = 100.0,
                               double price_slope = 0.5);

// The same duopoly as parsed payoff expressions on [0, cap]^2. Best replies
// are bounded well below the default cap, so the truncation keeps every
// equilibrium of the unbounded game.
ContinuousGame cournot_game(double price_intercept = 100.0,
                            double price_slope = 0.5, double cap = 200.0);

}  // namespace klat
