#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "klat/equilibrium.hpp"
#include "klat/gallery.hpp"

using namespace klat;

namespace {

const PureProfile kCC{{1, 1}};
const PureProfile kCA{{1, 2}};
const PureProfile kAC{{2, 1}};
const PureProfile kAA{{2, 2}};

PureProfile random_profile(std::mt19937_64& rng, const FiniteGame& g) {
  std::uniform_int_distribution<long long> pick(0, g.profile_count() - 1);
  return profile_from_flat(g, pick(rng));
}

}  // namespace

TEST_CASE("marginal values of the date dilemma") {
  FiniteGame game = date_dilemma();
  auto solo = marginal_values(game, Coalition::of({1}, 2), kCC);
  CHECK(solo.at(1) == Rational(3));  // max of theta_1(C,C)=3, theta_1(A,C)=0

  auto both = marginal_values(game, Coalition::of({1, 2}, 2), kCC);
  CHECK(both.at(1) == Rational(5));
  CHECK(both.at(2) == Rational(5));
}

TEST_CASE("grand-coalition marginals ignore the base profile") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    FiniteGame g = testing::random_game(rng);
    Coalition everyone = Coalition::of([&] {
      std::vector<int> all(static_cast<std::size_t>(g.num_players));
      std::iota(all.begin(), all.end(), 1);
      return all;
    }(), g.num_players);
    auto a = marginal_values(g, everyone, random_profile(rng, g));
    auto b = marginal_values(g, everyone, random_profile(rng, g));
    CHECK(a == b);
  }
}

TEST_CASE("best reply sets") {
  FiniteGame game = date_dilemma();
  auto joint = best_reply_set(game, Coalition::of({1, 2}, 2), kCC);
  REQUIRE(joint.size() == 1);
  CHECK(joint.front().choices == std::vector<int>{2, 2});  // (A,A)

  auto solo = best_reply_set(game, Coalition::of({1}, 2), kCC);
  REQUIRE(solo.size() == 1);
  CHECK(solo.front().choices == std::vector<int>{1});  // stay at C

  // Antagonistic pair: no joint profile maximizes both payoffs.
  FiniteGame pennies = testing::matching_pennies();
  for (long long idx = 0; idx < 4; ++idx)
    CHECK(best_reply_set(pennies, Coalition::of({1, 2}, 2),
                         profile_from_flat(pennies, idx))
              .empty());
}

TEST_CASE("best replies do not depend on the coalition's own coordinates") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    FiniteGame g = testing::random_game(rng);
    PureProfile x = random_profile(rng, g);
    for (int k = 1; k <= g.num_players; ++k)
      for (const auto& I : all_coalitions(g.num_players, k)) {
        PureProfile shuffled = x;
        for (int p : I.members)
          shuffled.choices[p - 1] =
              1 + static_cast<int>(rng() % g.strategy_counts[p - 1]);
        CHECK(best_reply_set(g, I, x) == best_reply_set(g, I, shuffled));
      }
  }
}

TEST_CASE("k-laterality of the date dilemma") {
  FiniteGame game = date_dilemma();
  CHECK(is_k_lateral(game, 1, kCC));
  CHECK(is_k_lateral(game, 1, kAA));
  CHECK_FALSE(is_k_lateral(game, 1, kCA));
  CHECK_FALSE(is_k_lateral(game, 2, kCC));  // the pair prefers (A,A)
  CHECK(is_k_lateral(game, 2, kAA));
  CHECK_THROWS_AS(is_k_lateral(game, 0, kCC), std::invalid_argument);
  CHECK_THROWS_AS(is_k_lateral(game, 3, kCC), std::invalid_argument);
}

TEST_CASE("majority voting with three players") {
  FiniteGame game = majority_voting(1);
  PureProfile ones{{1, 1, 1}};
  CHECK(is_k_lateral(game, 1, ones));
  CHECK_FALSE(is_k_lateral(game, 2, ones));  // {2,3} can elect player 2
}

TEST_CASE("enumeration and the filtration") {
  FiniteGame game = date_dilemma();
  auto ne1 = enumerate_k_lateral(game, 1);
  REQUIRE(ne1.size() == 2);
  CHECK(ne1[0] == kCC);
  CHECK(ne1[1] == kAA);
  auto ne2 = enumerate_k_lateral(game, 2);
  REQUIRE(ne2.size() == 1);
  CHECK(ne2[0] == kAA);

  Filtration f = filtration(game);
  CHECK(f.sets[0] == ne1);
  CHECK(f.sets[1] == ne2);

  FiniteGame pennies = testing::matching_pennies();
  CHECK(enumerate_k_lateral(pennies, 1).empty());
}

TEST_CASE("inspection game has no pure equilibrium") {
  FiniteGame game = inspection_game(10, 2, 1, 20);
  CHECK(enumerate_k_lateral(game, 1).empty());
}

TEST_CASE("one-player filtration is the argmax set") {
  FiniteGame solo = FiniteGame::make(
      {3}, {{Rational(1), Rational(5), Rational(5)}});
  Filtration f = filtration(solo);
  REQUIRE(f.sets.size() == 1);
  REQUIRE(f.sets[0].size() == 2);
  CHECK(f.sets[0][0] == PureProfile{{2}});
  CHECK(f.sets[0][1] == PureProfile{{3}});
}

TEST_CASE("enumeration budget is enforced with the bound in the message") {
  FiniteGame game = date_dilemma();
  CHECK_THROWS_WITH_AS(enumerate_k_lateral(game, 1, 3),
                       doctest::Contains("budget 3"), BudgetError);
}

TEST_CASE("parallel enumeration matches the serial reference") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    FiniteGame g = testing::random_game(rng);
    for (int k = 1; k <= g.num_players; ++k)
      CHECK(enumerate_k_lateral(g, k) == enumerate_k_lateral_serial(g, k));
  }
}

TEST_CASE("coincidence criterion agrees with the definition") {
  FiniteGame game = date_dilemma();
  CHECK(check_fg_criterion(game, 2, kAA));
  CHECK_FALSE(check_fg_criterion(game, 2, kCC));

  // k = 1 is the classical fixed-point test x in Phi(x).
  for (long long idx = 0; idx < 4; ++idx) {
    PureProfile x = profile_from_flat(game, idx);
    CHECK(check_fg_criterion(game, 1, x) == is_k_lateral(game, 1, x));
  }
}

TEST_CASE("modified best-reply membership leaves other coordinates free") {
  FiniteGame game = date_dilemma();
  Coalition both = Coalition::of({1, 2}, 2);
  Coalition first = Coalition::of({1}, 2);
  CHECK(modified_best_reply_contains(game, both, kCC, kAA));
  CHECK(modified_best_reply_contains(game, first, kCC, kCA));
  CHECK_FALSE(modified_best_reply_contains(game, first, kCC, kAC));
}

TEST_CASE("simultaneous fixed point criterion") {
  FiniteGame game = date_dilemma();
  CHECK(check_simultaneous_fixed_point(game, 2, kAA));
  CHECK_FALSE(check_simultaneous_fixed_point(game, 2, kCC));

  FiniteGame pennies = testing::matching_pennies();
  for (long long idx = 0; idx < 4; ++idx)
    CHECK_FALSE(check_simultaneous_fixed_point(
        pennies, 1, profile_from_flat(pennies, idx)));

  // k = N has a single coalition: membership in the global argmax set.
  FiniteGame game2 = date_dilemma();
  Coalition everyone = Coalition::of({1, 2}, 2);
  for (long long idx = 0; idx < 4; ++idx) {
    PureProfile x = profile_from_flat(game2, idx);
    CHECK(check_simultaneous_fixed_point(game2, 2, x) ==
          modified_best_reply_contains(game2, everyone, x, x));
  }
}

TEST_CASE("grouped criterion validates its cover and matches the rest") {
  FiniteGame game = date_dilemma();
  KneserCover trivial = exact_cover(2, 2);
  CHECK(check_grouped_criterion(game, 2, kAA, trivial));
  CHECK_FALSE(check_grouped_criterion(game, 2, kCC, trivial));

  KneserCover broken = trivial;
  broken.classes.clear();
  CHECK_THROWS_AS(check_grouped_criterion(game, 2, kAA, broken),
                  std::invalid_argument);
  KneserCover mismatched = exact_cover(3, 2);
  CHECK_THROWS_AS(check_grouped_criterion(game, 2, kAA, mismatched),
                  std::invalid_argument);

  std::mt19937_64 rng(31);
  KneserCover cover42 = exact_cover(4, 2);
  REQUIRE(cover42.class_count() == 3);
  for (int trial = 0; trial < 50; ++trial) {
    FiniteGame g = testing::random_game(rng, 4, 4, 2, 2);
    PureProfile x = random_profile(rng, g);
    CHECK(check_grouped_criterion(g, 2, x, cover42) == is_k_lateral(g, 2, x));
  }

  // k = 1: all singletons sit in one class, the classical global test.
  KneserCover singletons = exact_cover(4, 1);
  REQUIRE(singletons.class_count() == 1);
  for (int trial = 0; trial < 20; ++trial) {
    FiniteGame g = testing::random_game(rng, 4, 4, 2, 2);
    PureProfile x = random_profile(rng, g);
    CHECK(check_grouped_criterion(g, 1, x, singletons) ==
          is_k_lateral(g, 1, x));
  }
}

TEST_CASE("filtration nests on random games") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    FiniteGame g = testing::random_game(rng);
    Filtration f = filtration(g);
    for (std::size_t k = 0; k + 1 < f.sets.size(); ++k)
      CHECK(std::includes(f.sets[k].begin(), f.sets[k].end(),
                          f.sets[k + 1].begin(), f.sets[k + 1].end()));
  }
}

TEST_CASE("equilibrium sets survive monotone payoff transforms") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    FiniteGame g = testing::random_game(rng);
    FiniteGame shifted = g;
    std::uniform_int_distribution<long long> shift(-7, 7);
    std::uniform_int_distribution<long long> scale(1, 5);
    int player = static_cast<int>(rng() % g.num_players);
    Rational offset(shift(rng));
    Rational factor(scale(rng));
    for (auto& v : shifted.payoffs[player]) v = v * factor + offset;
    for (int k = 1; k <= g.num_players; ++k)
      CHECK(enumerate_k_lateral(g, k) == enumerate_k_lateral(shifted, k));
  }
}
