#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "klat/gallery.hpp"
#include "klat/nikaido.hpp"

using namespace klat;

namespace {

const PureProfile kCC{{1, 1}};
const PureProfile kCA{{1, 2}};
const PureProfile kAA{{2, 2}};

}  // namespace

TEST_CASE("classical Nikaido-Isoda values on the date dilemma") {
  FiniteGame game = date_dilemma();
  CHECK(psi_classical(game, kCC, kCC) == Rational(0));
  CHECK(psi_classical(game, kAA, kAA) == Rational(0));
  CHECK(psi_classical(game, kCC, kAA) == Rational(-6));
  CHECK(psi_classical(game, kCA, kAA) == Rational(5));
}

TEST_CASE("k-lateral Nikaido-Isoda values") {
  FiniteGame game = date_dilemma();
  CHECK(psi_k(game, 2, kCC, kAA) == Rational(2));  // 5 - 3
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    FiniteGame g = testing::random_game(rng);
    std::uniform_int_distribution<long long> pick(0, g.profile_count() - 1);
    PureProfile x = profile_from_flat(g, pick(rng));
    for (int k = 1; k <= g.num_players; ++k)
      CHECK(psi_k(g, k, x, x) == Rational(0));
  }
}

TEST_CASE("psi_1 equals the single-player max form") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    FiniteGame g = testing::random_game(rng);
    std::uniform_int_distribution<long long> pick(0, g.profile_count() - 1);
    PureProfile x = profile_from_flat(g, pick(rng));
    PureProfile y = profile_from_flat(g, pick(rng));
    std::optional<Rational> expected;
    for (int i = 1; i <= g.num_players; ++i) {
      PartialProfile yi;
      yi.coalition = Coalition::of({i}, g.num_players);
      yi.choices = {y.choices[i - 1]};
      Rational gain = payoff(g, i, compose(g, x, yi)) - payoff(g, i, x);
      if (!expected || gain > *expected) expected = gain;
    }
    CHECK(psi_k(g, 1, x, y) == *expected);
  }
}

TEST_CASE("v_k on the date dilemma") {
  FiniteGame game = date_dilemma();
  CHECK(v_k(game, 2, kAA) == Rational(0));
  CHECK(v_k(game, 2, kCC) == Rational(2));
  CHECK(v_k(game, 1, kCC) == Rational(0));
  CHECK(v_k(game, 1, kCA) == Rational(5));
}

TEST_CASE("v_k matches the literal definition and stays nonnegative") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    FiniteGame g = testing::random_game(rng);
    std::uniform_int_distribution<long long> pick(0, g.profile_count() - 1);
    PureProfile x = profile_from_flat(g, pick(rng));
    for (int k = 1; k <= g.num_players; ++k) {
      Rational fast = v_k(g, k, x);
      CHECK(fast >= Rational(0));
      CHECK(fast == v_k_serial(g, k, x));
    }
  }
}

TEST_CASE("v_k vanishes exactly on k-lateral equilibria") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    FiniteGame g = testing::random_game(rng);
    const long long total = g.profile_count();
    for (long long idx = 0; idx < total; ++idx) {
      PureProfile x = profile_from_flat(g, idx);
      for (int k = 1; k <= g.num_players; ++k)
        CHECK((v_k(g, k, x) == Rational(0)) == is_k_lateral(g, k, x));
    }
  }
}

TEST_CASE("v_k grows with the coalition size") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    FiniteGame g = testing::random_game(rng);
    std::uniform_int_distribution<long long> pick(0, g.profile_count() - 1);
    PureProfile x = profile_from_flat(g, pick(rng));
    for (int k = 1; k < g.num_players; ++k)
      CHECK(v_k(g, k, x) <= v_k(g, k + 1, x));
  }
}

TEST_CASE("v_k respects the deviation budget") {
  FiniteGame game = date_dilemma();
  CHECK_THROWS_AS(v_k(game, 2, kCC, 1), BudgetError);
}

TEST_CASE("R_k membership via exact value equality") {
  FiniteGame game = date_dilemma();
  CHECK(r_k_contains(game, 2, kAA, kAA));
  CHECK_FALSE(r_k_contains(game, 2, kCC, kCC));  // psi=0 but V_2=2

  // The maximizer set is never empty on a finite game.
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    FiniteGame g = testing::random_game(rng);
    std::uniform_int_distribution<long long> pick(0, g.profile_count() - 1);
    PureProfile x = profile_from_flat(g, pick(rng));
    for (int k = 1; k <= g.num_players; ++k) {
      bool found = false;
      for (long long idx = 0; idx < g.profile_count() && !found; ++idx)
        found = r_k_contains(g, k, x, profile_from_flat(g, idx));
      CHECK(found);
    }
  }
}

TEST_CASE("diagonal R_k test equals the definition") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    FiniteGame g = testing::random_game(rng);
    for (long long idx = 0; idx < g.profile_count(); ++idx) {
      PureProfile x = profile_from_flat(g, idx);
      for (int k = 1; k <= g.num_players; ++k)
        CHECK(r_k_contains(g, k, x, x) == is_k_lateral(g, k, x));
    }
  }
}

TEST_CASE("classical product and Nikaido-Isoda best replies coincide") {
  FiniteGame game = date_dilemma();
  CHECK(check_classical_equivalence(game, kCC));

  FiniteGame pennies = testing::matching_pennies();
  for (long long idx = 0; idx < 4; ++idx)
    CHECK(check_classical_equivalence(pennies,
                                      profile_from_flat(pennies, idx)));

  FiniteGame solo =
      FiniteGame::make({3}, {{Rational(1), Rational(5), Rational(5)}});
  CHECK(check_classical_equivalence(solo, PureProfile{{1}}));

  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 15; ++trial) {
    FiniteGame g = testing::random_game(rng);
    std::uniform_int_distribution<long long> pick(0, g.profile_count() - 1);
    CHECK(check_classical_equivalence(g, profile_from_flat(g, pick(rng))));
  }
}
