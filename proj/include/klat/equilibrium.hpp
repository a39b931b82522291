#pragma once

#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <vector>

#include "klat/errors.hpp"
#include "klat/game.hpp"
#include "klat/kneser.hpp"

namespace klat {

inline constexpr long long kDefaultBudget = 1'000'000;

// Payoff comparisons. Finite games compare exactly; discretized games carry
// an absolute tolerance.
template <class Payoff>
struct PayoffCmp;

template <>
struct PayoffCmp<Rational> {
  bool improves(const Rational& candidate, const Rational& incumbent) const {
    return candidate > incumbent;
  }
  bool equal(const Rational& a, const Rational& b) const { return a == b; }
};

template <>
struct PayoffCmp<double> {
  double eps = 1e-9;
  bool improves(double candidate, double incumbent) const {
    return candidate > incumbent + eps;
  }
  bool equal(double a, double b) const { return std::abs(a - b) <= eps; }
};

namespace detail {

// Visits every joint deviation y_I of coalition I against the fixed
// complement x_{-I}, in lexicographic order over the members' strategies.
// The visitor receives the flat tensor index of (y_I, x_{-I}) and the
// member-aligned choices.
template <class Payoff, class Visitor>
void for_each_deviation(const TensorGame<Payoff>& game, const Coalition& I,
                        const PureProfile& x, Visitor&& visit) {
  const auto strides = game.strides();
  const int k = I.size();
  long long base = flat_index(game, x);
  for (int j = 0; j < k; ++j)
    base -= static_cast<long long>(x.choices[I.members[j] - 1] - 1) *
            strides[I.members[j] - 1];
  std::vector<int> y(k, 1);
  std::vector<int> dims(k);
  std::vector<long long> member_stride(k);
  for (int j = 0; j < k; ++j) {
    dims[j] = game.strategy_counts[I.members[j] - 1];
    member_stride[j] = strides[I.members[j] - 1];
  }
  for (;;) {
    long long flat = base;
    for (int j = 0; j < k; ++j)
      flat += static_cast<long long>(y[j] - 1) * member_stride[j];
    visit(flat, y);
    int pos = k - 1;
    while (pos >= 0) {
      if (++y[pos] <= dims[pos]) break;
      y[pos] = 1;
      --pos;
    }
    if (pos < 0) break;
  }
}

template <class Payoff>
void check_coalition(const TensorGame<Payoff>& game, const Coalition& I) {
  if (I.members.empty())
    throw std::invalid_argument("coalition must be nonempty");
  for (std::size_t j = 0; j < I.members.size(); ++j) {
    if (I.members[j] < 1 || I.members[j] > game.num_players)
      throw std::invalid_argument("coalition member out of range");
    if (j > 0 && I.members[j - 1] >= I.members[j])
      throw std::invalid_argument("coalition members must strictly increase");
  }
}

template <class Payoff>
void check_k(const TensorGame<Payoff>& game, int k) {
  if (k < 1 || k > game.num_players)
    throw std::invalid_argument("coalition size k out of range");
}

// Joint deviation work for one profile: sum over coalitions of |E_I|.
template <class Payoff>
long long deviation_work(const TensorGame<Payoff>& game, int k) {
  long long total = 0;
  for (const auto& I : all_coalitions(game.num_players, k)) {
    long long block = 1;
    for (int p : I.members) block *= game.strategy_counts[p - 1];
    total += block;
  }
  return total;
}

}  // namespace detail

// phi_I(x): for each coalition member, the exact maximum payoff attainable
// by a joint deviation of I against the fixed complement x_{-I}.
template <class Payoff>
std::map<int, Payoff> marginal_values(const TensorGame<Payoff>& game,
                                      const Coalition& I, const PureProfile& x,
                                      PayoffCmp<Payoff> cmp = {}) {
  detail::check_coalition(game, I);
  check_profile(game, x);
  std::map<int, Payoff> best;
  detail::for_each_deviation(game, I, x,
                             [&](long long flat, const std::vector<int>&) {
                               for (int p : I.members) {
                                 const Payoff& v = game.payoffs[p - 1][flat];
                                 auto it = best.find(p);
                                 if (it == best.end())
                                   best.emplace(p, v);
                                 else if (cmp.improves(v, it->second))
                                   it->second = v;
                               }
                             });
  return best;
}

// Phi_I(x): joint deviations attaining every member's marginal value
// simultaneously. May be empty when the members' interests conflict.
template <class Payoff>
std::vector<PartialProfile> best_reply_set(const TensorGame<Payoff>& game,
                                           const Coalition& I,
                                           const PureProfile& x,
                                           PayoffCmp<Payoff> cmp = {}) {
  auto phi = marginal_values(game, I, x, cmp);
  std::vector<PartialProfile> replies;
  detail::for_each_deviation(
      game, I, x, [&](long long flat, const std::vector<int>& y) {
        for (int p : I.members)
          if (!cmp.equal(game.payoffs[p - 1][flat], phi.at(p))) return;
        PartialProfile reply;
        reply.coalition = I;
        reply.choices = y;
        replies.push_back(std::move(reply));
      });
  return replies;
}

// Definition check: x is k-lateral iff no coalition of size k has a joint
// deviation that strictly improves any of its members.
template <class Payoff>
bool is_k_lateral(const TensorGame<Payoff>& game, int k, const PureProfile& x,
                  PayoffCmp<Payoff> cmp = {}) {
  detail::check_k(game, k);
  check_profile(game, x);
  std::vector<Payoff> theta_x(game.num_players);
  {
    long long flat = flat_index(game, x);
    for (int i = 0; i < game.num_players; ++i)
      theta_x[i] = game.payoffs[i][flat];
  }
  for (const auto& I : all_coalitions(game.num_players, k)) {
    bool improved = false;
    detail::for_each_deviation(game, I, x,
                               [&](long long flat, const std::vector<int>&) {
                                 if (improved) return;
                                 for (int p : I.members) {
                                   if (cmp.improves(game.payoffs[p - 1][flat],
                                                    theta_x[p - 1])) {
                                     improved = true;
                                     return;
                                   }
                                 }
                               });
    if (improved) return false;
  }
  return true;
}

// Exhaustive search for NE_k over all pure profiles; OpenMP kernel.
// Profiles come back in lexicographic order regardless of schedule.
template <class Payoff>
std::vector<PureProfile> enumerate_k_lateral(const TensorGame<Payoff>& game,
                                             int k,
                                             long long budget = kDefaultBudget,
                                             PayoffCmp<Payoff> cmp = {}) {
  detail::check_k(game, k);
  const long long total = game.profile_count();
  if (total > budget)
    throw BudgetError("enumeration budget exceeded: " + std::to_string(total) +
                      " profiles > budget " + std::to_string(budget));
  std::vector<std::uint8_t> flags(static_cast<std::size_t>(total), 0);
  std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic, 64)
  for (long long idx = 0; idx < total; ++idx) {
    try {
      flags[static_cast<std::size_t>(idx)] =
          is_k_lateral(game, k, profile_from_flat(game, idx), cmp) ? 1 : 0;
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<PureProfile> out;
  for (long long idx = 0; idx < total; ++idx)
    if (flags[static_cast<std::size_t>(idx)])
      out.push_back(profile_from_flat(game, idx));
  return out;
}

// Straight-line reference for the OpenMP kernel above; kept for testing.
template <class Payoff>
std::vector<PureProfile> enumerate_k_lateral_serial(
    const TensorGame<Payoff>& game, int k, long long budget = kDefaultBudget,
    PayoffCmp<Payoff> cmp = {}) {
  detail::check_k(game, k);
  const long long total = game.profile_count();
  if (total > budget)
    throw BudgetError("enumeration budget exceeded: " + std::to_string(total) +
                      " profiles > budget " + std::to_string(budget));
  std::vector<PureProfile> out;
  for (long long idx = 0; idx < total; ++idx) {
    PureProfile x = profile_from_flat(game, idx);
    if (is_k_lateral(game, k, x, cmp)) out.push_back(std::move(x));
  }
  return out;
}

// The descending chain NE_1 contains NE_2 contains ... contains NE_N.
struct Filtration {
  std::vector<std::vector<PureProfile>> sets;  // sets[k-1] = NE_k, lex order
};

template <class Payoff>
Filtration filtration(const TensorGame<Payoff>& game,
                      long long budget = kDefaultBudget,
                      PayoffCmp<Payoff> cmp = {}) {
  Filtration f;
  f.sets.reserve(game.num_players);
  for (int k = 1; k <= game.num_players; ++k)
    f.sets.push_back(enumerate_k_lateral(game, k, budget, cmp));
  for (int k = 0; k + 1 < game.num_players; ++k) {
    if (!std::includes(f.sets[k].begin(), f.sets[k].end(),
                       f.sets[k + 1].begin(), f.sets[k + 1].end()))
      throw std::logic_error("filtration nesting violated");
  }
  return f;
}

// Coincidence criterion: x is k-lateral iff its own projection x_I lies in
// every coalition's best-reply set.
template <class Payoff>
bool check_fg_criterion(const TensorGame<Payoff>& game, int k,
                        const PureProfile& x, PayoffCmp<Payoff> cmp = {}) {
  detail::check_k(game, k);
  check_profile(game, x);
  for (const auto& I : all_coalitions(game.num_players, k)) {
    auto phi = marginal_values(game, I, x, cmp);
    PureProfile same = x;  // theta_i(x_I, x_{-I}) = theta_i(x)
    for (int p : I.members)
      if (!cmp.equal(payoff(game, p, same), phi.at(p))) return false;
  }
  return true;
}

// Membership in the modified correspondence: candidate in Phi-bar_I(x): the
// candidate's I-block is a best reply while its other coordinates are free.
template <class Payoff>
bool modified_best_reply_contains(const TensorGame<Payoff>& game,
                                  const Coalition& I, const PureProfile& x,
                                  const PureProfile& candidate,
                                  PayoffCmp<Payoff> cmp = {}) {
  detail::check_coalition(game, I);
  check_profile(game, x);
  check_profile(game, candidate);
  auto phi = marginal_values(game, I, x, cmp);
  PureProfile shifted = compose(game, x, restrict_profile(candidate, I));
  for (int p : I.members)
    if (!cmp.equal(payoff(game, p, shifted), phi.at(p))) return false;
  return true;
}

// Simultaneous fixed point of all modified correspondences Phi-bar_I.
template <class Payoff>
bool check_simultaneous_fixed_point(const TensorGame<Payoff>& game, int k,
                                    const PureProfile& x,
                                    PayoffCmp<Payoff> cmp = {}) {
  detail::check_k(game, k);
  for (const auto& I : all_coalitions(game.num_players, k))
    if (!modified_best_reply_contains(game, I, x, x, cmp)) return false;
  return true;
}

// Grouped criterion: x must be a fixed point of the intersection
// correspondence of every class of a clique cover of the k-subsets.
template <class Payoff>
bool check_grouped_criterion(const TensorGame<Payoff>& game, int k,
                             const PureProfile& x, const KneserCover& cover,
                             PayoffCmp<Payoff> cmp = {}) {
  detail::check_k(game, k);
  if (cover.n != game.num_players || cover.k != k)
    throw std::invalid_argument("cover shape does not match game and k");
  auto issues = validate_cover(cover);
  if (!issues.empty())
    throw std::invalid_argument("invalid cover: " + issues.front());
  for (const auto& cls : cover.classes)
    for (const auto& I : cls)
      if (!modified_best_reply_contains(game, I, x, x, cmp)) return false;
  return true;
}

}  // namespace klat
