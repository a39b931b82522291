#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "klat/rational.hpp"

namespace klat {

// One pure strategy choice per player; entries are 1-based.
struct PureProfile {
  std::vector<int> choices;

  friend bool operator==(const PureProfile& a, const PureProfile& b) {
    return a.choices == b.choices;
  }
  friend bool operator<(const PureProfile& a, const PureProfile& b) {
    return a.choices < b.choices;
  }
};

// A set of players allowed to deviate jointly. Members are 1-based,
// strictly increasing.
struct Coalition {
  std::vector<int> members;

  int size() const { return static_cast<int>(members.size()); }
  bool contains(int player) const {
    return std::binary_search(members.begin(), members.end(), player);
  }

  // Sorts the given players into canonical order; duplicates or players
  // outside 1..num_players are rejected.
  static Coalition of(std::vector<int> players, int num_players);

  friend bool operator==(const Coalition& a, const Coalition& b) {
    return a.members == b.members;
  }
  friend bool operator<(const Coalition& a, const Coalition& b) {
    return a.members < b.members;
  }
};

// A joint deviation y_I: one strategy index per coalition member, aligned
// with the coalition's member order.
struct PartialProfile {
  Coalition coalition;
  std::vector<int> choices;

  friend bool operator==(const PartialProfile& a, const PartialProfile& b) {
    return a.coalition == b.coalition && a.choices == b.choices;
  }
  friend bool operator<(const PartialProfile& a, const PartialProfile& b) {
    if (a.coalition.members != b.coalition.members)
      return a.coalition.members < b.coalition.members;
    return a.choices < b.choices;
  }
};

// Normal-form game with one payoff tensor per player, stored row-major with
// the last player's strategy index varying fastest. The payoff type is exact
// (Rational) for finite games and double for discretized ones.
template <class Payoff>
struct TensorGame {
  int num_players = 0;
  std::vector<int> strategy_counts;
  std::vector<std::vector<Payoff>> payoffs;
  // Optional display names, one list per player; empty means unlabeled.
  std::vector<std::vector<std::string>> strategy_labels;

  long long profile_count() const {
    long long total = 1;
    for (int d : strategy_counts) total *= d;
    return total;
  }

  // strides[i] = number of flat slots one step of player i+1 spans.
  std::vector<long long> strides() const {
    std::vector<long long> s(strategy_counts.size(), 1);
    for (int i = static_cast<int>(strategy_counts.size()) - 2; i >= 0; --i)
      s[i] = s[i + 1] * strategy_counts[i + 1];
    return s;
  }

  // Checked constructor; rejects malformed shapes including empty games.
  static TensorGame make(std::vector<int> counts,
                         std::vector<std::vector<Payoff>> tensors,
                         std::vector<std::vector<std::string>> labels = {});
};

using FiniteGame = TensorGame<Rational>;
using GridGame = TensorGame<double>;

// Returns human-readable descriptions of every invariant violation; empty
// means the game is well formed. A strategy count of zero is reported as the
// empty game.
template <class Payoff>
std::vector<std::string> validate(const TensorGame<Payoff>& game) {
  std::vector<std::string> issues;
  const int n = game.num_players;
  if (n < 1) issues.push_back("num_players must be at least 1");
  if (static_cast<int>(game.strategy_counts.size()) != n)
    issues.push_back("strategy_counts length does not match num_players");
  if (static_cast<int>(game.payoffs.size()) != n)
    issues.push_back("payoff tensor count does not match num_players");
  long long total = 1;
  bool empty_game = false;
  for (std::size_t i = 0; i < game.strategy_counts.size(); ++i) {
    if (game.strategy_counts[i] < 1) {
      issues.push_back("player " + std::to_string(i + 1) +
                       " has no strategies: the empty game is rejected");
      empty_game = true;
    } else {
      total *= game.strategy_counts[i];
    }
  }
  if (!empty_game) {
    for (std::size_t i = 0; i < game.payoffs.size(); ++i) {
      if (static_cast<long long>(game.payoffs[i].size()) != total)
        issues.push_back("player " + std::to_string(i + 1) + " tensor has " +
                         std::to_string(game.payoffs[i].size()) +
                         " entries, expected " + std::to_string(total));
    }
  }
  if (!game.strategy_labels.empty()) {
    if (static_cast<int>(game.strategy_labels.size()) != n) {
      issues.push_back("strategy_labels length does not match num_players");
    } else {
      for (int i = 0; i < n && i < static_cast<int>(game.strategy_counts.size());
           ++i) {
        if (static_cast<int>(game.strategy_labels[i].size()) !=
            game.strategy_counts[i])
          issues.push_back("player " + std::to_string(i + 1) +
                           " label count does not match its strategy count");
      }
    }
  }
  return issues;
}

template <class Payoff>
TensorGame<Payoff> TensorGame<Payoff>::make(
    std::vector<int> counts, std::vector<std::vector<Payoff>> tensors,
    std::vector<std::vector<std::string>> labels) {
  TensorGame<Payoff> g;
  g.num_players = static_cast<int>(counts.size());
  g.strategy_counts = std::move(counts);
  g.payoffs = std::move(tensors);
  g.strategy_labels = std::move(labels);
  auto issues = validate(g);
  if (!issues.empty()) {
    std::string what = "invalid game:";
    for (const auto& s : issues) what += " " + s + ";";
    throw std::invalid_argument(what);
  }
  return g;
}

template <class Payoff>
void check_profile(const TensorGame<Payoff>& game, const PureProfile& x) {
  if (static_cast<int>(x.choices.size()) != game.num_players)
    throw std::invalid_argument("profile length does not match player count");
  for (int i = 0; i < game.num_players; ++i)
    if (x.choices[i] < 1 || x.choices[i] > game.strategy_counts[i])
      throw std::invalid_argument("strategy index out of range for player " +
                                  std::to_string(i + 1));
}

template <class Payoff>
long long flat_index(const TensorGame<Payoff>& game, const PureProfile& x) {
  check_profile(game, x);
  auto s = game.strides();
  long long idx = 0;
  for (int i = 0; i < game.num_players; ++i)
    idx += static_cast<long long>(x.choices[i] - 1) * s[i];
  return idx;
}

template <class Payoff>
PureProfile profile_from_flat(const TensorGame<Payoff>& game, long long idx) {
  PureProfile x;
  x.choices.resize(game.num_players);
  for (int i = game.num_players - 1; i >= 0; --i) {
    x.choices[i] = static_cast<int>(idx % game.strategy_counts[i]) + 1;
    idx /= game.strategy_counts[i];
  }
  return x;
}

// theta_player(x), read from the player's tensor.
template <class Payoff>
const Payoff& payoff(const TensorGame<Payoff>& game, int player,
                     const PureProfile& x) {
  if (player < 1 || player > game.num_players)
    throw std::invalid_argument("player index out of range");
  return game.payoffs[player - 1][flat_index(game, x)];
}

// Validates a partial profile against the game shape.
template <class Payoff>
void check_partial(const TensorGame<Payoff>& game, const PartialProfile& y) {
  const auto& members = y.coalition.members;
  if (members.empty() || y.choices.size() != members.size())
    throw std::invalid_argument("partial profile shape mismatch");
  for (std::size_t j = 0; j < members.size(); ++j) {
    int p = members[j];
    if (p < 1 || p > game.num_players)
      throw std::invalid_argument("coalition member out of range");
    if (j > 0 && members[j - 1] >= p)
      throw std::invalid_argument("coalition members must strictly increase");
    if (y.choices[j] < 1 || y.choices[j] > game.strategy_counts[p - 1])
      throw std::invalid_argument("deviation strategy out of range for player " +
                                  std::to_string(p));
  }
}

// (y_I, x_{-I}): coordinates in I replaced by y's choices, the rest copied
// from x. Validated against the given strategy counts.
PureProfile compose(const std::vector<int>& strategy_counts,
                    const PureProfile& x, const PartialProfile& y);

template <class Payoff>
PureProfile compose(const TensorGame<Payoff>& game, const PureProfile& x,
                    const PartialProfile& y) {
  return compose(game.strategy_counts, x, y);
}

// x_I, the restriction of a profile to a coalition.
PartialProfile restrict_profile(const PureProfile& x, const Coalition& I);

std::string profile_to_string(const PureProfile& x);
template <class Payoff>
std::string profile_to_string(const TensorGame<Payoff>& game,
                              const PureProfile& x) {
  if (game.strategy_labels.empty()) return profile_to_string(x);
  std::string out = "(";
  for (int i = 0; i < game.num_players; ++i) {
    if (i) out += ",";
    out += game.strategy_labels[i][x.choices[i] - 1];
  }
  out += ")";
  return out;
}

// --- small combinatorics shared by coalition enumeration and Kneser covers

long long binomial(int n, int k);

// All k-element coalitions of {1..n} in lexicographic order.
std::vector<Coalition> all_coalitions(int n, int k);

}  // namespace klat
