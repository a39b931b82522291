#pragma once

#include <array>
#include <vector>

#include "klat/game.hpp"

namespace klat {

// One probability vector per player over that player's pure strategies.
struct MixedProfile {
  std::vector<std::vector<double>> weights;
};

// Entries must be nonnegative and each vector must sum to 1 within sum_tol.
std::vector<std::string> validate(const FiniteGame& game, const MixedProfile& m,
                                  double sum_tol = 1e-12);

// Degenerate mixed profile sitting on a pure vertex.
MixedProfile degenerate_profile(const FiniteGame& game, const PureProfile& x);

// Multilinear extension of the pure payoffs:
// sum over pure profiles of (prod_i pi^(i)_{j_i}) * X_player(j_1..j_N).
double mixed_payoff(const FiniteGame& game, int player, const MixedProfile& m);

// Largest gain any member of any size-k coalition can reach through a PURE
// joint deviation against the fixed mixed complement. Payoffs are multilinear
// in the deviating blocks, so pure deviations already attain the supremum.
double mixed_v_k(const FiniteGame& game, int k, const MixedProfile& m);

bool is_k_lateral_mixed(const FiniteGame& game, int k, const MixedProfile& m,
                        double tol);

// The inspection game's totally mixed equilibrium. The employee shirks with
// probability h/w and the boss inspects with probability g/w; this makes both
// players exactly indifferent and does not depend on v.
MixedProfile inspection_equilibrium(const Rational& w, const Rational& g,
                                    const Rational& h, const Rational& v);

// Payoff tensors of a 3-player game with two strategies per player, indexed
// (i,j,k) in {1,2}^3 with k varying fastest.
struct TensorTriple {
  std::array<std::array<Rational, 8>, 3> tensors;  // players A, B, C

  Rational at(int player, int i, int j, int k) const {
    return tensors[static_cast<std::size_t>(player)]
                  [static_cast<std::size_t>((i - 1) * 4 + (j - 1) * 2 +
                                            (k - 1))];
  }

  friend bool operator==(const TensorTriple& a, const TensorTriple& b) {
    return a.tensors == b.tensors;
  }
};

FiniteGame game_from_triple(const TensorTriple& t);

// All three tensors zero except value one at (2,2,2).
TensorTriple delta_triple();

// Decides whether the pure profile (2,2,2) is a bilateral equilibrium by
// checking the six bilinear inequalities over the full square of mixed
// deviations. Each left-hand side is bilinear in (u_1, v_1), so its minimum
// sits at one of the four corners; the corners are checked exactly.
bool verify_ineq02(const TensorTriple& t);

// Seeded search for a triple passing verify_ineq02 with strictly positive
// slack, double-checked through the mixed extension at (2,2,2). Falls back to
// the delta triple if sampling is exhausted.
TensorTriple find_2lateral_witness(unsigned long long seed);

// Samples pairs of (near-)optimal mixed replies for one player and tests
// that their midpoints stay optimal, probing convexity of the best-reply
// face. Payoffs are linear in the player's own block, so this holds for
// every finite game.
bool argmax_convexity_probe(const FiniteGame& game, int player,
                            const MixedProfile& m, int samples,
                            double tol = 1e-9, unsigned long long seed = 0);

}  // namespace klat
