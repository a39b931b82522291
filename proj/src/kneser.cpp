#include "klat/kneser.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "klat/errors.hpp"

namespace klat {

namespace {

std::uint32_t mask_of(const Coalition& c) {
  std::uint32_t m = 0;
  for (int p : c.members) m |= 1u << (p - 1);
  return m;
}

void check_nk(int n, int k) {
  if (n < 1 || k < 1 || k > n)
    throw std::invalid_argument("require 1 <= k <= n");
  if (n > 30) throw std::invalid_argument("n too large for subset masks");
}

std::vector<std::uint32_t> vertex_masks(const std::vector<Coalition>& verts) {
  std::vector<std::uint32_t> masks;
  masks.reserve(verts.size());
  for (const auto& v : verts) masks.push_back(mask_of(v));
  return masks;
}

// Sort members inside each class, then classes by lexicographically
// smallest member list, so covers are byte-stable.
void canonicalize(KneserCover& cover) {
  for (auto& cls : cover.classes)
    std::sort(cls.begin(), cls.end());
  std::sort(cover.classes.begin(), cover.classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

// Depth-first search assigning the next uncovered vertex (vertices are
// visited in lexicographic order) to each compatible class or to one fresh
// class, pruned by the remaining-capacity counting bound.
struct ExactSolver {
  const std::vector<std::uint32_t>& masks;
  int capacity;  // floor(n/k), the largest possible clique
  int best;
  std::vector<int> assignment;       // vertex -> class id, for best solution
  std::vector<int> current;          // vertex -> class id, in progress
  std::vector<std::uint32_t> class_mask;
  std::vector<int> class_size;

  ExactSolver(const std::vector<std::uint32_t>& m, int cap, int initial_best)
      : masks(m), capacity(cap), best(initial_best),
        current(m.size(), -1) {}

  int remaining_bound(std::size_t next, int used) const {
    long long uncovered = static_cast<long long>(masks.size() - next);
    long long spare = 0;
    for (int c = 0; c < used; ++c) spare += capacity - class_size[c];
    long long overflow = uncovered - spare;
    if (overflow <= 0) return used;
    return used + static_cast<int>((overflow + capacity - 1) / capacity);
  }

  void dfs(std::size_t v, int used) {
    if (v == masks.size()) {
      if (used < best) {
        best = used;
        assignment = current;
      }
      return;
    }
    if (remaining_bound(v, used) >= best) return;
    for (int c = 0; c < used; ++c) {
      if (class_size[c] >= capacity) continue;
      if (masks[v] & class_mask[c]) continue;
      class_mask[c] |= masks[v];
      ++class_size[c];
      current[v] = c;
      dfs(v + 1, used);
      current[v] = -1;
      --class_size[c];
      class_mask[c] &= ~masks[v];
    }
    if (used + 1 < best) {
      class_mask.push_back(masks[v]);
      class_size.push_back(1);
      current[v] = used;
      dfs(v + 1, used + 1);
      current[v] = -1;
      class_mask.pop_back();
      class_size.pop_back();
    }
  }
};

}  // namespace

KneserGraph build_kneser(int n, int k, long long vertex_budget) {
  check_nk(n, k);
  long long count = binomial(n, k);
  if (count > vertex_budget)
    throw BudgetError("Kneser graph budget exceeded: C(" + std::to_string(n) +
                      "," + std::to_string(k) + ") = " + std::to_string(count) +
                      " vertices > budget " + std::to_string(vertex_budget));
  KneserGraph g;
  g.n = n;
  g.k = k;
  g.vertices = all_coalitions(n, k);
  auto masks = vertex_masks(g.vertices);
  for (std::size_t i = 0; i < masks.size(); ++i)
    for (std::size_t j = i + 1; j < masks.size(); ++j)
      if ((masks[i] & masks[j]) == 0)
        g.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return g;
}

long long cover_lower_bound(int n, int k) {
  check_nk(n, k);
  long long clique_cap = n / k;
  long long vertices = binomial(n, k);
  return (vertices + clique_cap - 1) / clique_cap;
}

KneserCover greedy_cover(int n, int k, long long vertex_budget) {
  check_nk(n, k);
  long long count = binomial(n, k);
  if (count > vertex_budget)
    throw BudgetError("Kneser cover budget exceeded: C(" + std::to_string(n) +
                      "," + std::to_string(k) + ") = " + std::to_string(count) +
                      " vertices > budget " + std::to_string(vertex_budget));
  auto vertices = all_coalitions(n, k);
  auto masks = vertex_masks(vertices);
  std::vector<char> covered(vertices.size(), 0);
  KneserCover cover;
  cover.n = n;
  cover.k = k;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (covered[i]) continue;
    std::vector<Coalition> cls{vertices[i]};
    std::uint32_t used = masks[i];
    covered[i] = 1;
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (covered[j] || (masks[j] & used)) continue;
      cls.push_back(vertices[j]);
      used |= masks[j];
      covered[j] = 1;
    }
    cover.classes.push_back(std::move(cls));
  }
  canonicalize(cover);
  return cover;
}

KneserCover exact_cover(int n, int k, int max_n) {
  check_nk(n, k);
  if (n > max_n)
    throw BudgetError("exact cover search is bounded to n <= " +
                      std::to_string(max_n) +
                      "; use greedy_cover for an upper bound");
  auto vertices = all_coalitions(n, k);
  auto masks = vertex_masks(vertices);
  KneserCover seed = greedy_cover(n, k);

  ExactSolver solver(masks, n / k, seed.class_count());
  // Greedy assignment as the incumbent so the solver only searches for
  // strictly better covers.
  {
    std::vector<int> greedy_assign(vertices.size(), -1);
    for (std::size_t c = 0; c < seed.classes.size(); ++c)
      for (const auto& member : seed.classes[c]) {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), member);
        greedy_assign[static_cast<std::size_t>(it - vertices.begin())] =
            static_cast<int>(c);
      }
    solver.assignment = greedy_assign;
  }
  solver.dfs(0, 0);

  KneserCover cover;
  cover.n = n;
  cover.k = k;
  cover.classes.assign(static_cast<std::size_t>(solver.best), {});
  for (std::size_t v = 0; v < vertices.size(); ++v)
    cover.classes[static_cast<std::size_t>(solver.assignment[v])].push_back(
        vertices[v]);
  canonicalize(cover);
  return cover;
}

std::vector<std::string> validate_cover(const KneserCover& cover) {
  std::vector<std::string> issues;
  if (cover.n < 1 || cover.k < 1 || cover.k > cover.n) {
    issues.push_back("cover shape out of range");
    return issues;
  }
  std::vector<Coalition> seen;
  for (std::size_t c = 0; c < cover.classes.size(); ++c) {
    const auto& cls = cover.classes[c];
    if (cls.empty()) issues.push_back("class " + std::to_string(c) + " is empty");
    std::uint32_t used = 0;
    for (const auto& member : cls) {
      if (member.size() != cover.k ||
          member.members.front() < 1 || member.members.back() > cover.n) {
        issues.push_back("class " + std::to_string(c) +
                         " contains a subset of the wrong shape");
        continue;
      }
      std::uint32_t m = mask_of(member);
      if (used & m)
        issues.push_back("class " + std::to_string(c) +
                         " has intersecting subsets");
      used |= m;
      seen.push_back(member);
    }
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    issues.push_back("a subset appears in more than one class");
  if (static_cast<long long>(seen.size()) != binomial(cover.n, cover.k))
    issues.push_back("classes do not cover all k-subsets");
  return issues;
}

}  // namespace klat
