#include "klat/mixed.hpp"

#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>

#include "klat/equilibrium.hpp"

namespace klat {

std::vector<std::string> validate(const FiniteGame& game, const MixedProfile& m,
                                  double sum_tol) {
  std::vector<std::string> issues;
  if (static_cast<int>(m.weights.size()) != game.num_players) {
    issues.push_back("mixed profile has wrong number of players");
    return issues;
  }
  for (int i = 0; i < game.num_players; ++i) {
    const auto& w = m.weights[i];
    if (static_cast<int>(w.size()) != game.strategy_counts[i]) {
      issues.push_back("player " + std::to_string(i + 1) +
                       " weight vector has wrong length");
      continue;
    }
    double sum = 0.0;
    for (double p : w) {
      if (p < 0.0)
        issues.push_back("player " + std::to_string(i + 1) +
                         " has a negative weight");
      sum += p;
    }
    if (std::abs(sum - 1.0) > sum_tol)
      issues.push_back("player " + std::to_string(i + 1) +
                       " weights sum to " + std::to_string(sum));
  }
  return issues;
}

namespace {

void require_valid(const FiniteGame& game, const MixedProfile& m) {
  auto issues = validate(game, m);
  if (!issues.empty()) throw std::invalid_argument(issues.front());
}

}  // namespace

MixedProfile degenerate_profile(const FiniteGame& game, const PureProfile& x) {
  check_profile(game, x);
  MixedProfile m;
  m.weights.resize(game.num_players);
  for (int i = 0; i < game.num_players; ++i) {
    m.weights[i].assign(game.strategy_counts[i], 0.0);
    m.weights[i][x.choices[i] - 1] = 1.0;
  }
  return m;
}

double mixed_payoff(const FiniteGame& game, int player, const MixedProfile& m) {
  if (player < 1 || player > game.num_players)
    throw std::invalid_argument("player index out of range");
  require_valid(game, m);
  const long long total = game.profile_count();
  double sum = 0.0;
  std::vector<int> idx(game.num_players, 0);
  for (long long flat = 0; flat < total; ++flat) {
    double weight = 1.0;
    for (int i = 0; i < game.num_players; ++i) weight *= m.weights[i][idx[i]];
    if (weight != 0.0)
      sum += weight * game.payoffs[player - 1][flat].to_double();
    int pos = game.num_players - 1;
    while (pos >= 0) {
      if (++idx[pos] < game.strategy_counts[pos]) break;
      idx[pos] = 0;
      --pos;
    }
  }
  return sum;
}

double mixed_v_k(const FiniteGame& game, int k, const MixedProfile& m) {
  if (k < 1 || k > game.num_players)
    throw std::invalid_argument("coalition size k out of range");
  require_valid(game, m);
  std::vector<double> theta(game.num_players);
  for (int i = 1; i <= game.num_players; ++i)
    theta[i - 1] = mixed_payoff(game, i, m);

  std::optional<double> best;
  for (const auto& I : all_coalitions(game.num_players, k)) {
    // Iterate pure y_I blocks.
    std::vector<int> y(I.members.size(), 1);
    for (;;) {
      MixedProfile deviated = m;
      for (std::size_t j = 0; j < I.members.size(); ++j) {
        int p = I.members[j];
        deviated.weights[p - 1].assign(game.strategy_counts[p - 1], 0.0);
        deviated.weights[p - 1][y[j] - 1] = 1.0;
      }
      for (int p : I.members) {
        double gain = mixed_payoff(game, p, deviated) - theta[p - 1];
        if (!best || gain > *best) best = gain;
      }
      int pos = static_cast<int>(I.members.size()) - 1;
      while (pos >= 0) {
        if (++y[pos] <= game.strategy_counts[I.members[pos] - 1]) break;
        y[pos] = 1;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  return *best;
}

bool is_k_lateral_mixed(const FiniteGame& game, int k, const MixedProfile& m,
                        double tol) {
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  return mixed_v_k(game, k, m) <= tol;
}

MixedProfile inspection_equilibrium(const Rational& w, const Rational& g,
                                    const Rational& h, const Rational& v) {
  (void)v;  // the equilibrium point does not depend on the value of the work
  if (!(Rational(0) < g && g < w) || !(Rational(0) < h && h < w))
    throw std::invalid_argument("require 0 < g < w and 0 < h < w");
  MixedProfile m;
  double shirk = (h / w).to_double();
  double inspect = (g / w).to_double();
  m.weights = {{shirk, 1.0 - shirk}, {inspect, 1.0 - inspect}};
  return m;
}

FiniteGame game_from_triple(const TensorTriple& t) {
  std::vector<std::vector<Rational>> payoffs(3);
  for (int p = 0; p < 3; ++p)
    payoffs[p].assign(t.tensors[p].begin(), t.tensors[p].end());
  return FiniteGame::make({2, 2, 2}, std::move(payoffs));
}

TensorTriple delta_triple() {
  TensorTriple t{};
  for (int p = 0; p < 3; ++p) t.tensors[p][7] = Rational(1);
  return t;
}

namespace {

// One row of the bilateral system at the pure profile (2,2,2): the gain of a
// deviating pair is
//   -T(q1) u1 v1 - T(q2) u1 v2 - T(q3) u2 v1 + T(2,2,2) (1 - u2 v2)
// with u2 = 1-u1, v2 = 1-v1 and (u1, v1) ranging over [0,1]^2.
struct Ineq02Row {
  int tensor;                 // 0=A, 1=B, 2=C
  std::array<int, 3> q1, q2, q3;
};

constexpr std::array<Ineq02Row, 6> kIneq02Rows{{
    {0, {1, 1, 2}, {1, 2, 2}, {2, 1, 2}},
    {1, {1, 1, 2}, {1, 2, 2}, {2, 1, 2}},
    {0, {1, 2, 1}, {1, 2, 2}, {2, 2, 1}},
    {2, {1, 2, 1}, {1, 2, 2}, {2, 2, 1}},
    {1, {2, 1, 1}, {2, 1, 2}, {2, 2, 1}},
    {2, {2, 1, 1}, {2, 1, 2}, {2, 2, 1}},
}};

Rational row_value(const TensorTriple& t, const Ineq02Row& row, int u1,
                   int v1) {
  int u2 = 1 - u1;
  int v2 = 1 - v1;
  auto entry = [&](const std::array<int, 3>& q) {
    return t.at(row.tensor, q[0], q[1], q[2]);
  };
  Rational value;
  value -= entry(row.q1) * Rational(u1 * v1);
  value -= entry(row.q2) * Rational(u1 * v2);
  value -= entry(row.q3) * Rational(u2 * v1);
  value += t.at(row.tensor, 2, 2, 2) * Rational(1 - u2 * v2);
  return value;
}

}  // namespace

bool verify_ineq02(const TensorTriple& t) {
  for (const auto& row : kIneq02Rows)
    for (int u1 = 0; u1 <= 1; ++u1)
      for (int v1 = 0; v1 <= 1; ++v1)
        if (row_value(t, row, u1, v1) < Rational(0)) return false;
  return true;
}

TensorTriple find_2lateral_witness(unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-6, 6);
  std::uniform_int_distribution<int> corner(0, 8);
  std::uniform_int_distribution<int> den(1, 2);

  for (int attempt = 0; attempt < 100000; ++attempt) {
    TensorTriple t{};
    for (int p = 0; p < 3; ++p) {
      for (int slot = 0; slot < 7; ++slot)
        t.tensors[p][static_cast<std::size_t>(slot)] =
            Rational(entry(rng), den(rng));
      t.tensors[p][7] = Rational(corner(rng), den(rng));
    }
    if (!verify_ineq02(t)) continue;
    bool strict = false;
    for (const auto& row : kIneq02Rows)
      for (int u1 = 0; u1 <= 1 && !strict; ++u1)
        for (int v1 = 0; v1 <= 1 && !strict; ++v1)
          if (row_value(t, row, u1, v1) > Rational(0)) strict = true;
    if (!strict) continue;
    // Independent confirmation through the mixed extension.
    FiniteGame g = game_from_triple(t);
    PureProfile corner_profile{{2, 2, 2}};
    if (mixed_v_k(g, 2, degenerate_profile(g, corner_profile)) > 1e-9)
      continue;
    return t;
  }
  return delta_triple();
}

bool argmax_convexity_probe(const FiniteGame& game, int player,
                            const MixedProfile& m, int samples, double tol,
                            unsigned long long seed) {
  if (samples < 1) throw std::invalid_argument("samples must be at least 1");
  if (player < 1 || player > game.num_players)
    throw std::invalid_argument("player index out of range");
  require_valid(game, m);

  const int d = game.strategy_counts[player - 1];
  std::vector<double> value(d);
  for (int j = 1; j <= d; ++j) {
    MixedProfile pure = m;
    pure.weights[player - 1].assign(d, 0.0);
    pure.weights[player - 1][j - 1] = 1.0;
    value[j - 1] = mixed_payoff(game, player, pure);
  }
  double opt = *std::max_element(value.begin(), value.end());
  std::vector<int> face;
  for (int j = 0; j < d; ++j)
    if (value[j] >= opt - tol) face.push_back(j);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_best_reply = [&]() {
    std::vector<double> raw(face.size());
    double sum = 0.0;
    for (auto& r : raw) {
      r = unit(rng) + 1e-9;
      sum += r;
    }
    MixedProfile reply = m;
    reply.weights[player - 1].assign(d, 0.0);
    for (std::size_t i = 0; i < face.size(); ++i)
      reply.weights[player - 1][face[i]] = raw[i] / sum;
    return reply;
  };

  for (int s = 0; s < samples; ++s) {
    MixedProfile a = random_best_reply();
    MixedProfile b = random_best_reply();
    MixedProfile mid = m;
    mid.weights[player - 1].assign(d, 0.0);
    for (int j = 0; j < d; ++j)
      mid.weights[player - 1][j] = 0.5 * (a.weights[player - 1][j] +
                                          b.weights[player - 1][j]);
    if (mixed_payoff(game, player, mid) < opt - tol) return false;
  }
  return true;
}

}  // namespace klat
