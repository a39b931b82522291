#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "klat/continuous.hpp"
#include "klat/equilibrium.hpp"

namespace klat {

struct ParameterPoint {
  std::vector<double> coordinates;
  std::string label;

  friend bool operator==(const ParameterPoint& a, const ParameterPoint& b) {
    return a.coordinates == b.coordinates;
  }
};

// Finite parameter grid plus a generator producing the game at each point.
// All fibers share the player count and strategy shape. Continuous fibers
// are bridged to the finite machinery through a fixed grid resolution.
struct GameFamily {
  enum class Kind { Finite, Continuous };

  Kind kind = Kind::Finite;
  int grid_m = 1;  // discretization for continuous fibers
  std::vector<ParameterPoint> grid;
  std::function<FiniteGame(std::size_t)> finite_fiber;
  std::function<ContinuousGame(std::size_t)> continuous_fiber;
};

using Fiber = std::variant<FiniteGame, ContinuousGame>;

// Index of an exactly matching grid point; unknown points are rejected.
std::size_t grid_index(const GameFamily& family, const ParameterPoint& b);

Fiber fiber(const GameFamily& family, const ParameterPoint& b);

struct PointScan {
  std::size_t index = 0;
  std::vector<PureProfile> equilibria;                 // NE_k, lex order
  std::optional<PureProfile> witness;                  // first equilibrium
  std::optional<std::vector<double>> witness_point;    // continuous fibers
};

struct ScanResult {
  int k = 0;
  std::vector<PointScan> points;

  bool any_nonempty() const {
    for (const auto& p : points)
      if (!p.equilibria.empty()) return true;
    return false;
  }
};

// Per-point equilibrium enumeration over the whole grid; fibers are
// independent, so the scan parallelizes across them.
ScanResult scan(const GameFamily& family, int k, double tol = 1e-9,
                long long budget = kDefaultBudget);

// True iff some fiber holds a simultaneous fixed point of all modified
// best-reply correspondences; decided without enumerating equilibrium sets.
// Finite-kind families only.
bool fiberwise_fixed_point_check(const GameFamily& family, int k,
                                 long long budget = kDefaultBudget);

// Duopoly family varying the demand intercept.
GameFamily cournot_family(std::vector<double> intercepts, int grid_m = 400,
                          double price_slope = 0.5, double cap = 200.0);

// Entrywise-affine interpolation between two games of the same shape over
// t = 0, 1/steps, ..., 1. Interpolation weights are exact rationals.
GameFamily segment_family(FiniteGame g0, FiniteGame g1, int steps = 10);

}  // namespace klat
