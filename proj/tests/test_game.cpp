#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "klat/gallery.hpp"
#include "klat/game.hpp"

using namespace klat;

TEST_CASE("payoff lookup is row-major with the last player fastest") {
  FiniteGame game = date_dilemma();
  CHECK(payoff(game, 1, PureProfile{{1, 1}}) == Rational(3));
  CHECK(payoff(game, 1, PureProfile{{2, 2}}) == Rational(5));
  CHECK(payoff(game, 1, PureProfile{{1, 2}}) == Rational(0));
  CHECK(payoff(game, 2, PureProfile{{2, 1}}) == Rational(0));

  // Flat layout: (C,C) (C,A) (A,C) (A,A).
  CHECK(flat_index(game, PureProfile{{1, 2}}) == 1);
  CHECK(flat_index(game, PureProfile{{2, 1}}) == 2);
}

TEST_CASE("single-entry game") {
  FiniteGame tiny = FiniteGame::make({1, 1, 1}, {{Rational(7, 2)},
                                                 {Rational(7, 2)},
                                                 {Rational(7, 2)}});
  CHECK(payoff(tiny, 2, PureProfile{{1, 1, 1}}) == Rational(7, 2));
}

TEST_CASE("payoff rejects out-of-range arguments") {
  FiniteGame game = date_dilemma();
  CHECK_THROWS_AS(payoff(game, 0, PureProfile{{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(payoff(game, 3, PureProfile{{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(payoff(game, 1, PureProfile{{1, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(payoff(game, 1, PureProfile{{1}}), std::invalid_argument);
}

TEST_CASE("compose replaces exactly the coalition coordinates") {
  std::vector<int> shape = {3, 9, 3};
  PureProfile x{{1, 2, 3}};
  PartialProfile y;
  y.coalition = Coalition::of({2}, 3);
  y.choices = {9};
  CHECK(compose(shape, x, y) == PureProfile{{1, 9, 3}});

  PartialProfile all;
  all.coalition = Coalition::of({1, 2}, 2);
  all.choices = {2, 2};
  CHECK(compose({2, 2}, PureProfile{{1, 1}}, all) == PureProfile{{2, 2}});

  PartialProfile identity;
  identity.coalition = Coalition::of({1}, 2);
  identity.choices = {2};
  CHECK(compose({2, 2}, PureProfile{{2, 2}}, identity) == PureProfile{{2, 2}});

  PartialProfile outside;
  outside.coalition = Coalition::of({2}, 3);
  outside.choices = {10};
  CHECK_THROWS_AS(compose(shape, x, outside), std::invalid_argument);
  CHECK_THROWS_AS(compose({2, 2}, PureProfile{{1, 1, 1}}, identity),
                  std::invalid_argument);
}

TEST_CASE("restriction then composition is the identity") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    FiniteGame game = testing::random_game(rng);
    std::uniform_int_distribution<long long> pick(0, game.profile_count() - 1);
    PureProfile x = profile_from_flat(game, pick(rng));
    for (int k = 1; k <= game.num_players; ++k)
      for (const auto& I : all_coalitions(game.num_players, k))
        CHECK(compose(game, x, restrict_profile(x, I)) == x);
  }
}

TEST_CASE("coalitions canonicalize member order") {
  Coalition c = Coalition::of({3, 1, 2}, 4);
  CHECK(c.members == std::vector<int>{1, 2, 3});
  CHECK_THROWS_AS(Coalition::of({1, 1}, 3), std::invalid_argument);
  CHECK_THROWS_AS(Coalition::of({0}, 3), std::invalid_argument);
  CHECK_THROWS_AS(Coalition::of({4}, 3), std::invalid_argument);
  CHECK_THROWS_AS(Coalition::of({}, 3), std::invalid_argument);

  // compose does not care how the coalition was listed.
  PartialProfile sorted_form;
  sorted_form.coalition = Coalition::of({2, 1}, 2);
  sorted_form.choices = {2, 1};  // aligned with canonical order {1,2}
  CHECK(compose({2, 2}, PureProfile{{1, 2}}, sorted_form) ==
        PureProfile{{2, 1}});
}

TEST_CASE("validate reports violations instead of throwing") {
  FiniteGame ok = date_dilemma();
  CHECK(validate(ok).empty());

  FiniteGame bad = ok;
  bad.payoffs[1].pop_back();
  auto issues = validate(bad);
  REQUIRE(issues.size() == 1);
  CHECK(issues.front().find("player 2") != std::string::npos);

  FiniteGame empty;
  empty.num_players = 2;
  empty.strategy_counts = {2, 0};
  empty.payoffs = {{}, {}};
  auto empty_issues = validate(empty);
  REQUIRE(!empty_issues.empty());
  bool mentions_empty_game = false;
  for (const auto& s : empty_issues)
    mentions_empty_game |= s.find("empty game") != std::string::npos;
  CHECK(mentions_empty_game);
}

TEST_CASE("the empty game is rejected at construction") {
  CHECK_THROWS_AS(FiniteGame::make({2, 0}, {{}, {}}), std::invalid_argument);
}

TEST_CASE("coalition enumeration is lexicographic and complete") {
  auto cs = all_coalitions(4, 2);
  REQUIRE(cs.size() == 6);
  CHECK(cs.front().members == std::vector<int>{1, 2});
  CHECK(cs[1].members == std::vector<int>{1, 3});
  CHECK(cs.back().members == std::vector<int>{3, 4});
  CHECK(binomial(8, 4) == 70);
  CHECK(binomial(5, 0) == 1);
}
