#pragma once

#include <string>
#include <utility>
#include <vector>

#include "klat/game.hpp"

namespace klat {

// Kneser graph K(n,k): vertices are the k-subsets of {1..n}, edges join
// disjoint subsets.
struct KneserGraph {
  int n = 0;
  int k = 0;
  std::vector<Coalition> vertices;           // lexicographic order
  std::vector<std::pair<int, int>> edges;    // index pairs, i < j
};

// A partition of all k-subsets into classes of pairwise disjoint subsets
// (each class is a clique of K(n,k)).
struct KneserCover {
  int n = 0;
  int k = 0;
  std::vector<std::vector<Coalition>> classes;

  int class_count() const { return static_cast<int>(classes.size()); }
};

inline constexpr long long kDefaultKneserBudget = 10'000;

KneserGraph build_kneser(int n, int k,
                         long long vertex_budget = kDefaultKneserBudget);

// Counting bound: a clique has at most floor(n/k) vertices, so any cover
// needs at least ceil(C(n,k) / floor(n/k)) classes.
long long cover_lower_bound(int n, int k);

// First-fit cover in lexicographic order; class count is an upper bound on
// the clique covering number.
KneserCover greedy_cover(int n, int k,
                         long long vertex_budget = kDefaultKneserBudget);

// Certified minimum cover via exhausted branch and bound; class count equals
// the clique covering number xi(n,k). Instances above max_n are refused with
// a hint to use greedy_cover.
KneserCover exact_cover(int n, int k, int max_n = 8);

// Empty result means the cover is a valid clique partition of K(cover.n,
// cover.k); otherwise one description per violation.
std::vector<std::string> validate_cover(const KneserCover& cover);

}  // namespace klat
