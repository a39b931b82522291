#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "klat/family.hpp"
#include "klat/mixed.hpp"

using namespace klat;

namespace {

FiniteGame negate_game(const FiniteGame& g) {
  FiniteGame out = g;
  for (auto& tensor : out.payoffs)
    for (auto& v : tensor) v = -v;
  return out;
}

GameFamily delta_segment_family() {
  FiniteGame g0 = game_from_triple(delta_triple());
  return segment_family(g0, negate_game(g0), 10);
}

}  // namespace

TEST_CASE("segment family endpoints and midpoint") {
  FiniteGame g0 = game_from_triple(delta_triple());
  FiniteGame g1 = negate_game(g0);
  GameFamily family = segment_family(g0, g1, 10);
  REQUIRE(family.grid.size() == 11);

  auto at0 = std::get<FiniteGame>(fiber(family, family.grid[0]));
  CHECK(at0.payoffs == g0.payoffs);
  auto at1 = std::get<FiniteGame>(fiber(family, family.grid[10]));
  CHECK(at1.payoffs == g1.payoffs);
  auto mid = std::get<FiniteGame>(fiber(family, family.grid[5]));
  for (int p = 0; p < 3; ++p)
    for (std::size_t e = 0; e < 8; ++e)
      CHECK(mid.payoffs[p][e] ==
            (g0.payoffs[p][e] + g1.payoffs[p][e]) * Rational(1, 2));

  ParameterPoint outside;
  outside.coordinates = {0.05};
  CHECK_THROWS_AS(fiber(family, outside), std::invalid_argument);
}

TEST_CASE("segment scan for bilateral equilibria includes t=0") {
  GameFamily family = delta_segment_family();
  ScanResult result = scan(family, 2);
  REQUIRE(result.points.size() == 11);
  CHECK(!result.points[0].equilibria.empty());
  CHECK(result.any_nonempty());
  PureProfile corner{{2, 2, 2}};
  CHECK(std::find(result.points[0].equilibria.begin(),
                  result.points[0].equilibria.end(),
                  corner) != result.points[0].equilibria.end());
  REQUIRE(result.points[0].witness.has_value());

  CHECK_THROWS_AS(scan(family, 4), std::invalid_argument);
}

TEST_CASE("scan results are deterministic") {
  GameFamily family = delta_segment_family();
  ScanResult a = scan(family, 2);
  ScanResult b = scan(family, 2);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i)
    CHECK(a.points[i].equilibria == b.points[i].equilibria);
}

TEST_CASE("cournot family fibers reproduce the worked game") {
  GameFamily family = cournot_family({50, 100, 150}, 40);
  auto cg = std::get<ContinuousGame>(fiber(family, family.grid[1]));
  Bindings env;
  env.xs = {80.0, 30.0};
  CHECK(eval_expr(cg.payoffs[0], env) == doctest::Approx(3200.0));
  CHECK(eval_expr(cg.payoffs[1], env) == doctest::Approx(900.0));
}

TEST_CASE("cournot family scan finds an equilibrium in every fiber") {
  GameFamily family = cournot_family({60, 100, 140}, 100);
  ScanResult result = scan(family, 1, 1e-9, 10'000'000);
  for (const auto& point : result.points) {
    CHECK(!point.equilibria.empty());
    REQUIRE(point.witness_point.has_value());
    double a = family.grid[point.index].coordinates[0];
    double x1 = (6 * a - 40) / 7, x2 = (2 * a + 10) / 7;
    double step = 200.0 / 100;
    CHECK(std::abs((*point.witness_point)[0] - x1) <= step);
    CHECK(std::abs((*point.witness_point)[1] - x2) <= step);
  }
}

TEST_CASE("fiberwise fixed point check equals scan nonemptiness") {
  std::mt19937_64 rng(57);
  int nonempty_seen = 0, empty_seen = 0;
  for (int trial = 0; trial < 50; ++trial) {
    GameFamily family;
    family.kind = GameFamily::Kind::Finite;
    auto fibers = std::make_shared<std::vector<FiniteGame>>();
    fibers->push_back(testing::random_game(rng, 2, 3, 2, 3));
    fibers->push_back(testing::random_game(rng, 2, 3, 2, 3));
    // Two-fiber families need one strategy shape across fibers.
    (*fibers)[1] = testing::random_game(rng, 2, 3, 2, 3);
    while ((*fibers)[1].strategy_counts != (*fibers)[0].strategy_counts)
      (*fibers)[1] = testing::random_game(rng, 2, 3, 2, 3);
    for (int i = 0; i < 2; ++i) {
      ParameterPoint p;
      p.coordinates = {static_cast<double>(i)};
      family.grid.push_back(p);
    }
    family.finite_fiber = [fibers](std::size_t j) { return (*fibers)[j]; };
    std::uniform_int_distribution<int> pick_k(1, (*fibers)[0].num_players);
    int k = pick_k(rng);
    bool fixed_point = fiberwise_fixed_point_check(family, k);
    bool scan_nonempty = scan(family, k).any_nonempty();
    CHECK(fixed_point == scan_nonempty);
    (scan_nonempty ? nonempty_seen : empty_seen) += 1;
  }
  CHECK(nonempty_seen > 0);

  GameFamily pennies;
  pennies.kind = GameFamily::Kind::Finite;
  for (int i = 0; i < 2; ++i) {
    ParameterPoint p;
    p.coordinates = {static_cast<double>(i)};
    pennies.grid.push_back(p);
  }
  pennies.finite_fiber = [](std::size_t) { return testing::matching_pennies(); };
  CHECK_FALSE(fiberwise_fixed_point_check(pennies, 1));
  CHECK_FALSE(scan(pennies, 1).any_nonempty());

  GameFamily continuous = cournot_family({100}, 10);
  CHECK_THROWS_AS(fiberwise_fixed_point_check(continuous, 1),
                  std::invalid_argument);
}

TEST_CASE("single-fiber family reduces to the simultaneous fixed point test") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    GameFamily family;
    family.kind = GameFamily::Kind::Finite;
    auto g = std::make_shared<FiniteGame>(testing::random_game(rng));
    ParameterPoint p;
    p.coordinates = {0.0};
    family.grid.push_back(p);
    family.finite_fiber = [g](std::size_t) { return *g; };
    for (int k = 1; k <= g->num_players; ++k) {
      bool any = false;
      for (long long idx = 0; idx < g->profile_count() && !any; ++idx)
        any = check_simultaneous_fixed_point(*g, k, profile_from_flat(*g, idx));
      CHECK(fiberwise_fixed_point_check(family, k) == any);
    }
  }
}

TEST_CASE("scan output is local to each fiber") {
  GameFamily family = delta_segment_family();
  ScanResult before = scan(family, 2);

  GameFamily permuted = family;
  std::vector<std::size_t> order(family.grid.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(67);
  std::shuffle(order.begin(), order.end(), rng);
  permuted.grid.clear();
  for (std::size_t j : order) permuted.grid.push_back(family.grid[j]);
  auto base = family.finite_fiber;
  auto map = std::make_shared<std::vector<std::size_t>>(order);
  permuted.finite_fiber = [base, map](std::size_t j) {
    return base((*map)[j]);
  };

  ScanResult after = scan(permuted, 2);
  for (std::size_t j = 0; j < order.size(); ++j)
    CHECK(after.points[j].equilibria == before.points[order[j]].equilibria);
}

TEST_CASE("nonempty-parameter sets nest over k") {
  GameFamily family = delta_segment_family();
  std::vector<std::vector<bool>> nonempty;
  for (int k = 1; k <= 3; ++k) {
    ScanResult result = scan(family, k);
    std::vector<bool> row;
    for (const auto& point : result.points)
      row.push_back(!point.equilibria.empty());
    nonempty.push_back(row);
  }
  for (int k = 0; k + 1 < 3; ++k)
    for (std::size_t j = 0; j < nonempty[k].size(); ++j)
      if (nonempty[k + 1][j]) CHECK(nonempty[k][j]);
}

TEST_CASE("scan budget errors name the offending fiber") {
  GameFamily family = cournot_family({100.0, 120.0}, 50);
  try {
    scan(family, 1, 1e-9, 10);
    FAIL("expected a budget error");
  } catch (const BudgetError& e) {
    CHECK(std::string(e.what()).find("fiber") != std::string::npos);
  }
}

TEST_CASE("empty grids are rejected") {
  GameFamily family;
  family.kind = GameFamily::Kind::Finite;
  family.finite_fiber = [](std::size_t) { return testing::matching_pennies(); };
  CHECK_THROWS_AS(scan(family, 1), std::invalid_argument);
}
