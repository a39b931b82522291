#include <doctest.h>

#include <sstream>

#include "klat/equilibrium.hpp"
#include "klat/formats.hpp"
#include "klat/gallery.hpp"
#include "klat/mixed.hpp"

using namespace klat;

namespace {

const char* kDateFile = R"(# date dilemma
players 2
strategies 2 2
labels 1 C A
labels 2 C A
payoffs 1
3 0
0 5
payoffs 2
3 0 0 5
)";

}  // namespace

TEST_CASE("game files parse with labels and mixed rational forms") {
  FiniteGame game = parse_game_text(kDateFile);
  CHECK(game.num_players == 2);
  CHECK(payoff(game, 1, PureProfile{{2, 2}}) == Rational(5));
  CHECK(game.strategy_labels[0][0] == "C");

  FiniteGame forms = parse_game_text(
      "players 1\nstrategies 3\npayoffs 1\n2 1/2 0.25\n");
  CHECK(forms.payoffs[0][0] == Rational(2));
  CHECK(forms.payoffs[0][1] == Rational(1, 2));
  CHECK(forms.payoffs[0][2] == Rational(1, 4));
}

TEST_CASE("game file errors carry line numbers") {
  auto check_line = [](const char* text, int line) {
    try {
      parse_game_text(text);
      FAIL("expected a parse error for: ", text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
    }
  };
  check_line("players 2\nstrategies 2 2\npayoffs 1\n1 2 3\n", 4);  // truncated
  check_line("players 2\nstrategies 2 2\npayoffs 1\n1 2 3 4 5\n", 4);
  check_line("players 2\nstrategies 2\n", 2);
  check_line("strategies 2 2\n", 1);
  check_line("players 2\nstrategies 2 2\nwhat 1\n", 3);
  check_line("players 2\nstrategies 2 2\npayoffs 1\n1 x 3 4\n", 4);
  check_line("players 2\nstrategies 2 0\npayoffs 1\npayoffs 2\n", 4);
}

TEST_CASE("game write/parse round trip") {
  FiniteGame game = inspection_game(10, 2, 1, 20);
  std::ostringstream os;
  write_game(os, game);
  FiniteGame back = parse_game_text(os.str());
  CHECK(back.payoffs == game.payoffs);
  CHECK(back.strategy_counts == game.strategy_counts);
  CHECK(back.strategy_labels == game.strategy_labels);
}

TEST_CASE("finite family files: one inline fiber per point") {
  FiniteGame g0 = game_from_triple(delta_triple());
  FiniteGame g1 = g0;
  for (auto& tensor : g1.payoffs)
    for (auto& value : tensor) value = -value;
  GameFamily family = segment_family(g0, g1, 4);

  std::ostringstream os;
  write_finite_family(os, family);
  GameFamily back = parse_family_text(os.str());
  REQUIRE(back.grid.size() == 5);
  CHECK(back.kind == GameFamily::Kind::Finite);
  CHECK(back.grid[1].label == "t=1/4");
  for (std::size_t j = 0; j < 5; ++j)
    CHECK(back.finite_fiber(j).payoffs == family.finite_fiber(j).payoffs);
}

TEST_CASE("continuous family files bind grid coordinates to b1") {
  const char* text = R"(family continuous
resolution 50
point 60
point 100 label base
players 2
interval 1 0 200
interval 2 0 200
payoff 1 x1*(b1 - 0.5*(x1 + x2)) - 5*x1
payoff 2 x2*(b1 - 0.5*(x1 + x2)) - 0.5*x2^2
)";
  GameFamily family = parse_family_text(text);
  REQUIRE(family.grid.size() == 2);
  CHECK(family.kind == GameFamily::Kind::Continuous);
  CHECK(family.grid_m == 50);
  CHECK(family.grid[1].label == "base");
  auto cg = std::get<ContinuousGame>(fiber(family, family.grid[1]));
  Bindings env;
  env.xs = {80.0, 30.0};
  env.bs = cg.parameters;
  CHECK(eval_expr(cg.payoffs[0], env) == doctest::Approx(3200.0));
}

TEST_CASE("continuous families may have several parameters") {
  const char* text = R"(family continuous
resolution 2
point 1 10
point 2 20 label far
players 2
interval 1 0 1
interval 2 0 1
payoff 1 b1 + x1
payoff 2 b2 * x2
)";
  GameFamily family = parse_family_text(text);
  auto cg = std::get<ContinuousGame>(fiber(family, family.grid[1]));
  REQUIRE(cg.parameters == std::vector<double>{2.0, 20.0});
  Bindings env;
  env.xs = {0.5, 0.5};
  env.bs = cg.parameters;
  CHECK(eval_expr(cg.payoffs[0], env) == doctest::Approx(2.5));
  CHECK(eval_expr(cg.payoffs[1], env) == doctest::Approx(10.0));

  DiscretizedGame dg = discretize(cg, family.grid_m);
  CHECK(dg.game.strategy_counts == std::vector<int>{3, 3});
}

TEST_CASE("family file errors") {
  CHECK_THROWS_AS(parse_family_text(""), ParseError);
  CHECK_THROWS_AS(parse_family_text("family finite\n"), ParseError);
  CHECK_THROWS_AS(
      parse_family_text("family finite\npoint 0\n"),  // no fiber
      ParseError);
  CHECK_THROWS_AS(
      parse_family_text("family continuous\npoint 0\nplayers 1\n"),
      ParseError);
  CHECK_THROWS_AS(parse_family_text("family finite\npoint 0\nfiber\n"),
                  ParseError);
  CHECK_THROWS_AS(load_family("/nonexistent.family"), std::invalid_argument);
  CHECK_THROWS_AS(load_game("/nonexistent.game"), std::invalid_argument);
}
