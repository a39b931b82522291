#include "klat/family.hpp"

#include <exception>
#include <memory>
#include <stdexcept>

namespace klat {

std::size_t grid_index(const GameFamily& family, const ParameterPoint& b) {
  for (std::size_t i = 0; i < family.grid.size(); ++i)
    if (family.grid[i] == b) return i;
  throw std::invalid_argument("parameter point is not on the family grid");
}

Fiber fiber(const GameFamily& family, const ParameterPoint& b) {
  std::size_t i = grid_index(family, b);
  if (family.kind == GameFamily::Kind::Finite) return family.finite_fiber(i);
  return family.continuous_fiber(i);
}

ScanResult scan(const GameFamily& family, int k, double tol,
                long long budget) {
  if (family.grid.empty())
    throw std::invalid_argument("family grid is empty");
  ScanResult result;
  result.k = k;
  result.points.resize(family.grid.size());

  std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < static_cast<long long>(family.grid.size()); ++i) {
    try {
      PointScan point;
      point.index = static_cast<std::size_t>(i);
      if (family.kind == GameFamily::Kind::Finite) {
        FiniteGame g = family.finite_fiber(point.index);
        point.equilibria = enumerate_k_lateral(g, k, budget);
      } else {
        ContinuousGame cg = family.continuous_fiber(point.index);
        DiscretizedGame dg = discretize(cg, family.grid_m, budget);
        point.equilibria =
            enumerate_k_lateral(dg.game, k, budget, PayoffCmp<double>{tol});
        if (!point.equilibria.empty())
          point.witness_point = dg.profile_point(point.equilibria.front());
      }
      if (!point.equilibria.empty()) point.witness = point.equilibria.front();
      result.points[point.index] = std::move(point);
    } catch (const BudgetError& e) {
#pragma omp critical
      if (!failure)
        failure = std::make_exception_ptr(
            BudgetError(std::string(e.what()) + " (fiber " +
                        std::to_string(i) + ")"));
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

bool fiberwise_fixed_point_check(const GameFamily& family, int k,
                                 long long budget) {
  if (family.kind != GameFamily::Kind::Finite)
    throw std::invalid_argument(
        "fiberwise fixed-point check requires finite fibers");
  if (family.grid.empty())
    throw std::invalid_argument("family grid is empty");
  for (std::size_t i = 0; i < family.grid.size(); ++i) {
    FiniteGame g = family.finite_fiber(i);
    long long total = g.profile_count();
    if (total > budget)
      throw BudgetError("enumeration budget exceeded on fiber " +
                        std::to_string(i));
    for (long long idx = 0; idx < total; ++idx)
      if (check_simultaneous_fixed_point(g, k, profile_from_flat(g, idx)))
        return true;
  }
  return false;
}

GameFamily cournot_family(std::vector<double> intercepts, int grid_m,
                          double price_slope, double cap) {
  GameFamily family;
  family.kind = GameFamily::Kind::Continuous;
  family.grid_m = grid_m;
  for (double a : intercepts) {
    ParameterPoint p;
    p.coordinates = {a};
    p.label = "intercept=" + std::to_string(a);
    family.grid.push_back(std::move(p));
  }
  auto values = std::make_shared<std::vector<double>>(std::move(intercepts));
  family.continuous_fiber = [values, price_slope, cap](std::size_t i) {
    return cournot_game((*values)[i], price_slope, cap);
  };
  return family;
}

GameFamily segment_family(FiniteGame g0, FiniteGame g1, int steps) {
  if (steps < 1) throw std::invalid_argument("segment needs at least one step");
  if (g0.num_players != g1.num_players ||
      g0.strategy_counts != g1.strategy_counts)
    throw std::invalid_argument("segment endpoints must share one shape");

  GameFamily family;
  family.kind = GameFamily::Kind::Finite;
  for (int j = 0; j <= steps; ++j) {
    ParameterPoint p;
    p.coordinates = {static_cast<double>(j) / steps};
    p.label = "t=" + Rational(j, steps).str();
    family.grid.push_back(std::move(p));
  }
  auto a = std::make_shared<FiniteGame>(std::move(g0));
  auto b = std::make_shared<FiniteGame>(std::move(g1));
  family.finite_fiber = [a, b, steps](std::size_t j) {
    Rational t(static_cast<long long>(j), steps);
    Rational s = Rational(1) - t;
    FiniteGame g = *a;
    for (int p = 0; p < g.num_players; ++p)
      for (std::size_t e = 0; e < g.payoffs[p].size(); ++e)
        g.payoffs[p][e] = s * a->payoffs[p][e] + t * b->payoffs[p][e];
    return g;
  };
  return family;
}

}  // namespace klat
