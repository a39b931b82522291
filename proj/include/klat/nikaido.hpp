#pragma once

#include <algorithm>
#include <exception>
#include <optional>
#include <vector>

#include "klat/equilibrium.hpp"

namespace klat {

// Classical Nikaido-Isoda function: the summed unilateral deviation gain
// Psi_c(x,y) = sum_i (theta_i(y_i, x_{-i}) - theta_i(x)).
template <class Payoff>
Payoff psi_classical(const TensorGame<Payoff>& game, const PureProfile& x,
                     const PureProfile& y) {
  check_profile(game, x);
  check_profile(game, y);
  Payoff total{};
  for (int i = 1; i <= game.num_players; ++i) {
    PartialProfile yi;
    yi.coalition = Coalition::of({i}, game.num_players);
    yi.choices = {y.choices[i - 1]};
    total += payoff(game, i, compose(game, x, yi)) - payoff(game, i, x);
  }
  return total;
}

// k-lateral Nikaido-Isoda function: the largest single-member gain over all
// size-k coalitions reading only the y_I block of y.
template <class Payoff>
Payoff psi_k(const TensorGame<Payoff>& game, int k, const PureProfile& x,
             const PureProfile& y) {
  detail::check_k(game, k);
  check_profile(game, x);
  check_profile(game, y);
  std::optional<Payoff> best;
  for (const auto& I : all_coalitions(game.num_players, k)) {
    PureProfile shifted = compose(game, x, restrict_profile(y, I));
    for (int p : I.members) {
      Payoff gain = payoff(game, p, shifted) - payoff(game, p, x);
      if (!best || gain > *best) best = gain;
    }
  }
  return *best;
}

// V_k(x) = max over pure y of Psi_k(x, y). Because Psi_k reads only the y_I
// block per coalition, the maximum over (coalition, member, joint deviation)
// triples coincides with the maximum over full profiles y. OpenMP kernel;
// the reduction is an exact max, so results do not depend on the schedule.
template <class Payoff>
Payoff v_k(const TensorGame<Payoff>& game, int k, const PureProfile& x,
           long long budget = kDefaultBudget) {
  detail::check_k(game, k);
  check_profile(game, x);
  long long work = detail::deviation_work(game, k);
  if (work > budget)
    throw BudgetError("deviation budget exceeded: " + std::to_string(work) +
                      " joint deviations > budget " + std::to_string(budget));

  const auto coalitions = all_coalitions(game.num_players, k);
  std::vector<Payoff> theta_x(game.num_players);
  {
    long long flat = flat_index(game, x);
    for (int i = 0; i < game.num_players; ++i)
      theta_x[i] = game.payoffs[i][flat];
  }

  std::vector<Payoff> per_coalition(coalitions.size());
  std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic, 1)
  for (long long c = 0; c < static_cast<long long>(coalitions.size()); ++c) {
    try {
      const Coalition& I = coalitions[static_cast<std::size_t>(c)];
      std::optional<Payoff> best;
      detail::for_each_deviation(game, I, x,
                                 [&](long long flat, const std::vector<int>&) {
                                   for (int p : I.members) {
                                     Payoff gain = game.payoffs[p - 1][flat] -
                                                   theta_x[p - 1];
                                     if (!best || gain > *best) best = gain;
                                   }
                                 });
      per_coalition[static_cast<std::size_t>(c)] = *best;
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  Payoff best = per_coalition.front();
  for (const auto& v : per_coalition)
    if (v > best) best = v;
  return best;
}

// Reference implementation of V_k by literal maximization of Psi_k over all
// pure profiles; kept for testing the kernel above.
template <class Payoff>
Payoff v_k_serial(const TensorGame<Payoff>& game, int k, const PureProfile& x,
                  long long budget = kDefaultBudget) {
  detail::check_k(game, k);
  const long long total = game.profile_count();
  if (total > budget)
    throw BudgetError("enumeration budget exceeded: " + std::to_string(total) +
                      " profiles > budget " + std::to_string(budget));
  std::optional<Payoff> best;
  for (long long idx = 0; idx < total; ++idx) {
    Payoff value = psi_k(game, k, x, profile_from_flat(game, idx));
    if (!best || value > *best) best = value;
  }
  return *best;
}

// Fixed-point test through the Nikaido-Isoda best reply R_k:
// y in R_k(x) iff Psi_k(x,y) attains V_k(x).
template <class Payoff>
bool r_k_contains(const TensorGame<Payoff>& game, int k, const PureProfile& x,
                  const PureProfile& y, long long budget = kDefaultBudget,
                  PayoffCmp<Payoff> cmp = {}) {
  return cmp.equal(psi_k(game, k, x, y), v_k(game, k, x, budget));
}

// V_c(x) = max over pure y of Psi_c(x, y).
template <class Payoff>
Payoff v_classical(const TensorGame<Payoff>& game, const PureProfile& x,
                   long long budget = kDefaultBudget) {
  check_profile(game, x);
  const long long total = game.profile_count();
  if (total > budget)
    throw BudgetError("enumeration budget exceeded: " + std::to_string(total) +
                      " profiles > budget " + std::to_string(budget));
  std::optional<Payoff> best;
  for (long long idx = 0; idx < total; ++idx) {
    Payoff value = psi_classical(game, x, profile_from_flat(game, idx));
    if (!best || value > *best) best = value;
  }
  return *best;
}

// Checks that the Nikaido-Isoda best reply R_c(x) coincides with the product
// best-reply correspondence Phi_1(x) x ... x Phi_N(x). Both sets are built
// independently and compared as sorted profile lists.
template <class Payoff>
bool check_classical_equivalence(const TensorGame<Payoff>& game,
                                 const PureProfile& x,
                                 long long budget = kDefaultBudget,
                                 PayoffCmp<Payoff> cmp = {}) {
  check_profile(game, x);
  const long long total = game.profile_count();
  if (total > budget)
    throw BudgetError("enumeration budget exceeded: " + std::to_string(total) +
                      " profiles > budget " + std::to_string(budget));

  Payoff vc = v_classical(game, x, budget);
  std::vector<PureProfile> r_c;
  for (long long idx = 0; idx < total; ++idx) {
    PureProfile y = profile_from_flat(game, idx);
    if (cmp.equal(psi_classical(game, x, y), vc)) r_c.push_back(std::move(y));
  }

  // Per-player argmax sets, then their product.
  std::vector<std::vector<int>> argmax(game.num_players);
  for (int i = 1; i <= game.num_players; ++i) {
    Coalition self = Coalition::of({i}, game.num_players);
    auto replies = best_reply_set(game, self, x, cmp);
    for (const auto& r : replies) argmax[i - 1].push_back(r.choices.front());
  }
  std::vector<PureProfile> product;
  PureProfile cursor;
  cursor.choices.assign(game.num_players, 0);
  std::vector<std::size_t> pos(game.num_players, 0);
  for (;;) {
    for (int i = 0; i < game.num_players; ++i)
      cursor.choices[i] = argmax[i][pos[i]];
    product.push_back(cursor);
    int level = game.num_players - 1;
    while (level >= 0) {
      if (++pos[level] < argmax[level].size()) break;
      pos[level] = 0;
      --level;
    }
    if (level < 0) break;
  }
  std::sort(product.begin(), product.end());
  std::sort(r_c.begin(), r_c.end());
  return product == r_c;
}

}  // namespace klat
