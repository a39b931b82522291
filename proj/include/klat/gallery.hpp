#pragma once

#include "klat/continuous.hpp"
#include "klat/game.hpp"

namespace klat {

// Two friends choosing between camping (C) and an amusement park (A); both
// prefer agreeing, and both prefer the park.
FiniteGame date_dilemma();

// 2n+1 voters electing a leader among themselves; ties go to the smallest
// label. Payoff 1 for being elected, 0 otherwise.
FiniteGame majority_voting(int n, long long budget = 1'000'000);

// Winner of a vote vector under the smallest-label tie break.
int elected_leader(int num_players, const std::vector<int>& votes);

// Boss/employee inspection game. Rows: employee not working / working;
// columns: boss inspecting / not inspecting.
FiniteGame inspection_game(const Rational& w, const Rational& g,
                           const Rational& h, const Rational& v);

// Player A against B_1..B_{n-1} on [0,1]: each B_i earns its own choice,
// while A earns a only below the truncation threshold
// a + max{b_1,...,b_{n-1}} < 1.
ContinuousGame truncated_projection_game(int n_players);

// The same game on an m-step grid per player.
DiscretizedGame witness_game(int n_players, int grid_m,
                             long long budget = 1'000'000);

}  // namespace klat
