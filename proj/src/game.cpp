#include "klat/game.hpp"

namespace klat {

Coalition Coalition::of(std::vector<int> players, int num_players) {
  if (players.empty()) throw std::invalid_argument("coalition must be nonempty");
  std::sort(players.begin(), players.end());
  for (std::size_t j = 0; j < players.size(); ++j) {
    if (players[j] < 1 || players[j] > num_players)
      throw std::invalid_argument("coalition member out of range");
    if (j > 0 && players[j] == players[j - 1])
      throw std::invalid_argument("coalition members must be distinct");
  }
  Coalition c;
  c.members = std::move(players);
  return c;
}

PureProfile compose(const std::vector<int>& strategy_counts,
                    const PureProfile& x, const PartialProfile& y) {
  const int n = static_cast<int>(strategy_counts.size());
  if (static_cast<int>(x.choices.size()) != n)
    throw std::invalid_argument("profile length does not match game shape");
  for (int i = 0; i < n; ++i)
    if (x.choices[i] < 1 || x.choices[i] > strategy_counts[i])
      throw std::invalid_argument("profile strategy out of range");
  const auto& members = y.coalition.members;
  if (y.choices.size() != members.size())
    throw std::invalid_argument("partial profile shape mismatch");
  PureProfile out = x;
  for (std::size_t j = 0; j < members.size(); ++j) {
    int p = members[j];
    if (p < 1 || p > n)
      throw std::invalid_argument("coalition member out of range");
    if (j > 0 && members[j - 1] >= p)
      throw std::invalid_argument("coalition members must strictly increase");
    if (y.choices[j] < 1 || y.choices[j] > strategy_counts[p - 1])
      throw std::invalid_argument("deviation strategy out of range");
    out.choices[p - 1] = y.choices[j];
  }
  return out;
}

PartialProfile restrict_profile(const PureProfile& x, const Coalition& I) {
  PartialProfile y;
  y.coalition = I;
  y.choices.reserve(I.members.size());
  for (int p : I.members) {
    if (p < 1 || p > static_cast<int>(x.choices.size()))
      throw std::invalid_argument("coalition member out of range");
    y.choices.push_back(x.choices[p - 1]);
  }
  return y;
}

std::string profile_to_string(const PureProfile& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.choices.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(x.choices[i]);
  }
  out += ")";
  return out;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long result = 1;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

std::vector<Coalition> all_coalitions(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("coalition size out of range");
  std::vector<Coalition> out;
  out.reserve(static_cast<std::size_t>(binomial(n, k)));
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 1);
  for (;;) {
    Coalition coalition;
    coalition.members = c;
    out.push_back(std::move(coalition));
    int i = k - 1;
    while (i >= 0 && c[i] == n - (k - 1 - i)) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

}  // namespace klat
