#include "klat/continuous.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

#include "klat/errors.hpp"

namespace klat {

std::vector<std::string> validate(const ContinuousGame& game) {
  std::vector<std::string> issues;
  if (game.num_players < 1) issues.push_back("num_players must be at least 1");
  if (static_cast<int>(game.intervals.size()) != game.num_players)
    issues.push_back("interval count does not match num_players");
  if (static_cast<int>(game.payoffs.size()) != game.num_players)
    issues.push_back("payoff count does not match num_players");
  for (std::size_t i = 0; i < game.intervals.size(); ++i)
    if (!(game.intervals[i].first <= game.intervals[i].second))
      issues.push_back("interval " + std::to_string(i + 1) + " is empty");
  for (std::size_t i = 0; i < game.payoffs.size(); ++i) {
    if (!game.payoffs[i]) {
      issues.push_back("payoff " + std::to_string(i + 1) + " is missing");
      continue;
    }
    if (max_var_index(game.payoffs[i], 'x') > game.num_players)
      issues.push_back("payoff " + std::to_string(i + 1) +
                       " references an undeclared strategy variable");
    if (max_var_index(game.payoffs[i], 'b') >
        static_cast<int>(game.parameters.size()))
      issues.push_back("payoff " + std::to_string(i + 1) +
                       " references an unbound parameter");
  }
  return issues;
}

namespace {

DiscretizedGame discretize_impl(const ContinuousGame& cg, int m,
                                long long budget, bool parallel) {
  auto issues = validate(cg);
  if (!issues.empty()) throw std::invalid_argument(issues.front());
  if (m < 1) throw std::invalid_argument("grid resolution must be >= 1");

  const int n = cg.num_players;
  long long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= m + 1;
    if (total > budget)
      throw BudgetError("grid budget exceeded: (" + std::to_string(m) +
                        "+1)^" + std::to_string(n) + " nodes > budget " +
                        std::to_string(budget));
  }

  DiscretizedGame out;
  out.coordinates.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto [lo, hi] = cg.intervals[static_cast<std::size_t>(i)];
    auto& axis = out.coordinates[static_cast<std::size_t>(i)];
    axis.resize(static_cast<std::size_t>(m) + 1);
    for (int t = 0; t <= m; ++t)
      axis[static_cast<std::size_t>(t)] = lo + (hi - lo) * t / m;
  }

  GridGame& g = out.game;
  g.num_players = n;
  g.strategy_counts.assign(static_cast<std::size_t>(n), m + 1);
  g.payoffs.assign(static_cast<std::size_t>(n),
                   std::vector<double>(static_cast<std::size_t>(total)));

  std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(static) if (parallel)
  for (long long flat = 0; flat < total; ++flat) {
    try {
      Bindings env;
      env.bs = cg.parameters;
      env.xs.resize(static_cast<std::size_t>(n));
      long long rest = flat;
      for (int i = n - 1; i >= 0; --i) {
        env.xs[static_cast<std::size_t>(i)] =
            out.coordinates[static_cast<std::size_t>(i)]
                           [static_cast<std::size_t>(rest % (m + 1))];
        rest /= m + 1;
      }
      for (int i = 0; i < n; ++i)
        g.payoffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(flat)] =
            eval_expr(cg.payoffs[static_cast<std::size_t>(i)], env);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace

DiscretizedGame discretize(const ContinuousGame& game, int m, long long budget) {
  return discretize_impl(game, m, budget, true);
}

DiscretizedGame discretize_serial(const ContinuousGame& game, int m,
                                  long long budget) {
  return discretize_impl(game, m, budget, false);
}

CournotReport cournot_analysis(double price_intercept, double price_slope) {
  const double a = price_intercept;
  const double s = price_slope;
  if (!(s > 0))
    throw std::invalid_argument("degenerate parameters: price slope must be positive");

  CournotReport r{};
  // First-order conditions of
  //   theta_1 = (a - 5) x1 - s x1^2 - s x1 x2
  //   theta_2 = a x2 - s x1 x2 - (s + 1/2) x2^2
  r.br1_intercept = (a - 5.0) / (2.0 * s);
  r.br1_slope = -0.5;
  r.br2_intercept = a / (2.0 * s + 1.0);
  r.br2_slope = -s / (2.0 * s + 1.0);

  // x1 = br1_intercept + br1_slope x2, x2 = br2_intercept + br2_slope x1.
  double det = 1.0 - r.br1_slope * r.br2_slope;
  if (std::abs(det) < 1e-12)
    throw std::invalid_argument("degenerate parameters: best responses are parallel");
  double x1 = (r.br1_intercept + r.br1_slope * r.br2_intercept) / det;
  double x2 = r.br2_intercept + r.br2_slope * x1;
  r.equilibrium = {x1, x2};
  r.price = a - s * (x1 + x2);
  r.profits = {x1 * r.price - 5.0 * x1, x2 * r.price - 0.5 * x2 * x2};

  // Player 1's most profitable pair move has player 2 idle.
  r.deviation = {(a - 5.0) / (2.0 * s), 0.0};
  r.deviation_profit = (a - 5.0) * (a - 5.0) / (4.0 * s);
  return r;
}

ContinuousGame cournot_game(double price_intercept, double price_slope,
                            double cap) {
  ContinuousGame cg;
  cg.num_players = 2;
  cg.intervals = {{0.0, cap}, {0.0, cap}};
  std::string price = "(" + std::to_string(price_intercept) + " - " +
                      std::to_string(price_slope) + "*(x1 + x2))";
  cg.payoffs = {
      parse_expr("x1*" + price + " - 5*x1"),
      parse_expr("x2*" + price + " - 0.5*x2^2"),
  };
  return cg;
}

}  // namespace klat
