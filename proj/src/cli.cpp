#include "klat/cli.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "klat/equilibrium.hpp"
#include "klat/errors.hpp"
#include "klat/formats.hpp"
#include "klat/gallery.hpp"
#include "klat/kneser.hpp"
#include "klat/mixed.hpp"
#include "klat/nikaido.hpp"

namespace klat::cli {

namespace {

using nlohmann::json;

int guard(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const BudgetError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
}

json profile_json(const PureProfile& x) {
  json a = json::array();
  for (int c : x.choices) a.push_back(c);
  return a;
}

// Five-way verdict agreement over every profile of the game.
struct CrossCheck {
  long long profiles = 0;
  long long disagreements = 0;
};

CrossCheck cross_check(const FiniteGame& game, int max_k, long long budget) {
  CrossCheck cc;
  const long long total = game.profile_count();
  std::vector<KneserCover> covers;
  for (int k = 1; k <= max_k; ++k)
    covers.push_back(game.num_players <= 8 ? exact_cover(game.num_players, k)
                                           : greedy_cover(game.num_players, k));
  for (long long idx = 0; idx < total; ++idx) {
    PureProfile x = profile_from_flat(game, idx);
    ++cc.profiles;
    for (int k = 1; k <= max_k; ++k) {
      bool a = is_k_lateral(game, k, x);
      bool b = check_fg_criterion(game, k, x);
      bool c = check_simultaneous_fixed_point(game, k, x);
      bool d = check_grouped_criterion(game, k, x,
                                       covers[static_cast<std::size_t>(k - 1)]);
      bool e = v_k(game, k, x, budget) == Rational(0);
      if (a != b || a != c || a != d || a != e) ++cc.disagreements;
    }
  }
  return cc;
}

std::string point_text(const std::vector<double>& coords) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) os << ", ";
    os << coords[i];
  }
  os << ")";
  return os.str();
}

json kneser_cover_json(const KneserCover& cover) {
  json classes = json::array();
  for (const auto& cls : cover.classes) {
    json c = json::array();
    for (const auto& member : cls) {
      json m = json::array();
      for (int p : member.members) m.push_back(p);
      c.push_back(m);
    }
    classes.push_back(c);
  }
  return classes;
}

std::string coalition_text(const Coalition& c) {
  std::string out = "{";
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c.members[i]);
  }
  return out + "}";
}

int demo_date(bool json_mode, std::ostream& out);
int demo_majority(bool json_mode, std::ostream& out);
int demo_inspection(bool json_mode, std::ostream& out);
int demo_cournot(bool json_mode, std::ostream& out);
int demo_witness3(unsigned long long seed, bool json_mode, std::ostream& out);

}  // namespace

int run_analyze(const std::string& path, int max_k, double tol, bool json_mode,
                long long budget, std::ostream& out, std::ostream& err) {
  (void)tol;
  return guard(err, [&]() {
    FiniteGame game = load_game(path);
    if (max_k < 1) throw std::invalid_argument("max_k must be at least 1");
    int top = std::min(max_k, game.num_players);

    json report;
    report["command"] = "analyze";
    report["game"] = path;
    report["num_players"] = game.num_players;
    report["strategy_counts"] = game.strategy_counts;
    report["max_k"] = top;

    if (!json_mode) {
      out << "game: " << path << " (" << game.num_players << " players,";
      for (int d : game.strategy_counts) out << " " << d;
      out << " strategies)\n";
    }

    json filtration = json::array();
    bool v_all_zero = true;
    for (int k = 1; k <= top; ++k) {
      auto ne = enumerate_k_lateral(game, k, budget);
      json level;
      level["k"] = k;
      level["count"] = ne.size();
      json profiles = json::array();
      json v_values = json::array();
      for (const auto& x : ne) {
        profiles.push_back(profile_json(x));
        Rational value = v_k(game, k, x, budget);
        v_all_zero &= value == Rational(0);
        v_values.push_back(value.str());
      }
      level["profiles"] = profiles;
      level["v_k"] = v_values;
      filtration.push_back(level);
      if (!json_mode) {
        out << "NE_" << k << " (" << ne.size()
            << (ne.size() == 1 ? " profile):" : " profiles):");
        for (const auto& x : ne) out << " " << profile_to_string(game, x);
        if (ne.empty() && k == 1) out << " no pure equilibria";
        out << "\n";
      }
    }
    report["filtration"] = filtration;

    CrossCheck cc = cross_check(game, top, budget);
    report["cross_check"] = {{"profiles", cc.profiles},
                             {"disagreements", cc.disagreements}};
    if (!json_mode) {
      out << "V_k at every reported equilibrium: "
          << (v_all_zero ? "0" : "NONZERO (inconsistent)") << "\n";
      out << "criterion cross-check (definition = F/G = simultaneous fixed "
             "point = grouped = V_k): "
          << (cc.disagreements == 0 ? "agree" : "DISAGREE") << " on "
          << cc.profiles << " profiles x " << top << " levels\n";
    } else {
      out << report.dump(2) << "\n";
    }
    if (cc.disagreements != 0)
      throw std::logic_error("criterion cross-check failed");
    return kOk;
  });
}

int run_xi(int n, int k, const std::string& mode, bool json_mode,
           std::ostream& out, std::ostream& err) {
  return guard(err, [&]() {
    if (mode != "exact" && mode != "greedy")
      throw std::invalid_argument("mode must be 'exact' or 'greedy'");
    KneserCover cover = mode == "exact" ? exact_cover(n, k) : greedy_cover(n, k);
    long long lower = cover_lower_bound(n, k);

    if (json_mode) {
      json report;
      report["command"] = "xi";
      report["n"] = n;
      report["k"] = k;
      report["mode"] = mode;
      report["class_count"] = cover.class_count();
      report["lower_bound"] = lower;
      report["certified_minimum"] = (mode == "exact");
      report["classes"] = kneser_cover_json(cover);
      out << report.dump(2) << "\n";
      return kOk;
    }

    if (mode == "exact")
      out << "xi(" << n << "," << k << ") = " << cover.class_count()
          << " (certified minimum)\n";
    else
      out << "xi(" << n << "," << k << ") <= " << cover.class_count()
          << " (greedy upper bound)\n";
    out << "counting lower bound: " << lower << "\n";
    for (std::size_t c = 0; c < cover.classes.size(); ++c) {
      out << "class " << c + 1 << ":";
      for (const auto& member : cover.classes[c])
        out << " " << coalition_text(member);
      out << "\n";
    }
    return kOk;
  });
}

int run_scan(const std::string& path, int k, double tol, bool json_mode,
             long long budget, std::ostream& out, std::ostream& err) {
  return guard(err, [&]() {
    GameFamily family = load_family(path);
    ScanResult result = scan(family, k, tol, budget);

    json report;
    report["command"] = "scan";
    report["family"] = path;
    report["k"] = k;
    json points = json::array();

    if (!json_mode)
      out << "family: " << path << " (" << family.grid.size()
          << " parameter points), k = " << k << "\n";
    for (const auto& point : result.points) {
      const auto& p = family.grid[point.index];
      json row;
      row["label"] = p.label.empty() ? point_text(p.coordinates) : p.label;
      row["coordinates"] = p.coordinates;
      row["equilibria"] = point.equilibria.size();
      if (point.witness) row["witness"] = profile_json(*point.witness);
      if (point.witness_point) row["witness_point"] = *point.witness_point;
      points.push_back(row);
      if (!json_mode) {
        out << "  " << (p.label.empty() ? point_text(p.coordinates) : p.label)
            << ": " << point.equilibria.size() << " equilibria";
        if (point.witness) {
          out << ", witness " << profile_to_string(*point.witness);
          if (point.witness_point)
            out << " at " << point_text(*point.witness_point);
        }
        out << "\n";
      }
    }
    report["points"] = points;
    report["any_nonempty"] = result.any_nonempty();
    if (json_mode)
      out << report.dump(2) << "\n";
    else
      out << (result.any_nonempty()
                  ? "at least one fiber has a k-lateral equilibrium\n"
                  : "no fiber has a k-lateral equilibrium\n");
    return kOk;
  });
}

namespace {

int demo_date(bool json_mode, std::ostream& out) {
  FiniteGame game = date_dilemma();
  Filtration f = filtration(game);
  if (json_mode) {
    json report;
    report["command"] = "demo";
    report["name"] = "date";
    json levels = json::array();
    for (std::size_t k = 0; k < f.sets.size(); ++k) {
      json level;
      level["k"] = k + 1;
      json profiles = json::array();
      for (const auto& x : f.sets[k]) profiles.push_back(profile_json(x));
      level["profiles"] = profiles;
      levels.push_back(level);
    }
    report["filtration"] = levels;
    out << report.dump(2) << "\n";
    return kOk;
  }
  out << "date dilemma: payoffs (C,C)=3, (C,A)=0, (A,C)=0, (A,A)=5 for both\n";
  for (std::size_t k = 0; k < f.sets.size(); ++k) {
    out << "NE_" << k + 1 << ":";
    for (const auto& x : f.sets[k]) out << " " << profile_to_string(game, x);
    out << "\n";
  }
  out << "V_2(C,C) = " << v_k(game, 2, PureProfile{{1, 1}}).str()
      << ", V_2(A,A) = " << v_k(game, 2, PureProfile{{2, 2}}).str() << "\n";
  return kOk;
}

int demo_majority(bool json_mode, std::ostream& out) {
  json report;
  report["command"] = "demo";
  report["name"] = "majority";
  json entries = json::array();
  for (int n = 1; n <= 2; ++n) {
    FiniteGame game = majority_voting(n);
    const int players = 2 * n + 1;
    PureProfile ones;
    ones.choices.assign(static_cast<std::size_t>(players), 1);
    PureProfile split = ones;  // the first n+2 vote 1, the rest vote n+2
    for (int i = n + 2; i < players; ++i)
      split.choices[static_cast<std::size_t>(i)] = n + 2;

    Filtration f = filtration(game);
    json entry;
    entry["n"] = n;
    entry["players"] = players;
    entry["all_ones_n_lateral"] = is_k_lateral(game, n, ones);
    entry["all_ones_n_plus_1_lateral"] =
        n + 1 <= players ? is_k_lateral(game, n + 1, ones) : false;
    entry["split_profile"] = profile_json(split);
    entry["split_1_lateral"] = is_k_lateral(game, 1, split);
    entry["split_2_lateral"] = is_k_lateral(game, 2, split);
    json sizes = json::array();
    for (const auto& ne : f.sets) sizes.push_back(ne.size());
    entry["ne_sizes"] = sizes;
    entries.push_back(entry);

    if (!json_mode) {
      out << "majority voting n=" << n << " (N=" << players << ")\n";
      out << "  all-ones profile: " << n << "-lateral "
          << (is_k_lateral(game, n, ones) ? "yes" : "no") << ", " << n + 1
          << "-lateral " << (is_k_lateral(game, n + 1, ones) ? "yes" : "no")
          << "\n";
      out << "  profile " << profile_to_string(split) << ": 1-lateral "
          << (is_k_lateral(game, 1, split) ? "yes" : "no") << ", 2-lateral "
          << (is_k_lateral(game, 2, split) ? "yes" : "no") << "\n";
      out << "  |NE_k| for k=1.." << players << ":";
      for (const auto& ne : f.sets) out << " " << ne.size();
      out << "\n";
    }
  }
  report["games"] = entries;
  if (json_mode) out << report.dump(2) << "\n";
  return kOk;
}

int demo_inspection(bool json_mode, std::ostream& out) {
  Rational w(10), g(2), h(1), v(20);
  FiniteGame game = inspection_game(w, g, h, v);
  auto pure = enumerate_k_lateral(game, 1);
  MixedProfile eq = inspection_equilibrium(w, g, h, v);
  double v1 = mixed_v_k(game, 1, eq);
  double v2 = mixed_v_k(game, 2, eq);

  auto pure_payoffs = [&](int player) {
    std::vector<double> values;
    for (int s = 1; s <= 2; ++s) {
      MixedProfile m = eq;
      m.weights[static_cast<std::size_t>(player - 1)] = {s == 1 ? 1.0 : 0.0,
                                                         s == 2 ? 1.0 : 0.0};
      values.push_back(mixed_payoff(game, player, m));
    }
    return values;
  };

  if (json_mode) {
    json report;
    report["command"] = "demo";
    report["name"] = "inspection";
    report["parameters"] = {{"w", w.str()}, {"g", g.str()}, {"h", h.str()},
                            {"v", v.str()}};
    report["pure_equilibria"] = pure.size();
    report["employee_mix"] = eq.weights[0];
    report["boss_mix"] = eq.weights[1];
    report["mixed_v_1"] = v1;
    report["mixed_v_2"] = v2;
    report["employee_pure_payoffs"] = pure_payoffs(1);
    report["boss_pure_payoffs"] = pure_payoffs(2);
    out << report.dump(2) << "\n";
    return kOk;
  }

  out << "inspection game (w=10, g=2, h=1, v=20)\n";
  out << "  employee payoffs: [0 10; 8 8], boss payoffs: [-1 -10; 9 10]\n";
  out << "  pure Nash equilibria: "
      << (pure.empty() ? "none (no pure-strategy equilibrium)"
                       : std::to_string(pure.size()))
      << "\n";
  out << "  mixed equilibrium: employee (notwork,work) = (" << eq.weights[0][0]
      << ", " << eq.weights[0][1] << "), boss (inspect,noinspect) = ("
      << eq.weights[1][0] << ", " << eq.weights[1][1] << ")\n";
  auto ep = pure_payoffs(1);
  auto bp = pure_payoffs(2);
  out << "  indifference: employee " << ep[0] << " vs " << ep[1] << ", boss "
      << bp[0] << " vs " << bp[1] << "\n";
  out << "  V_1 = " << v1 << " (equilibrium), V_2 = " << v2
      << " (a joint move still helps someone)\n";
  return kOk;
}

int demo_cournot(bool json_mode, std::ostream& out) {
  CournotReport r = cournot_analysis();

  // Grid cross-check on [0,200]^2 with step 1/2.
  DiscretizedGame grid = discretize(cournot_game(), 400);
  auto ne = enumerate_k_lateral(grid.game, 1, kDefaultBudget,
                                PayoffCmp<double>{1e-9});
  json report;
  report["command"] = "demo";
  report["name"] = "cournot";
  report["best_response_1"] = {{"intercept", r.br1_intercept},
                               {"slope", r.br1_slope}};
  report["best_response_2"] = {{"intercept", r.br2_intercept},
                               {"slope", r.br2_slope}};
  report["equilibrium"] = r.equilibrium;
  report["price"] = r.price;
  report["profits"] = r.profits;
  report["deviation"] = r.deviation;
  report["deviation_profit"] = r.deviation_profit;
  json grid_eq = json::array();
  for (const auto& x : ne) {
    auto pt = grid.profile_point(x);
    grid_eq.push_back(pt);
  }
  report["grid_equilibria"] = grid_eq;

  if (json_mode) {
    out << report.dump(2) << "\n";
    return kOk;
  }
  out << "Cournot duopoly: p(x) = 100 - (x1+x2)/2, c1 = 5 x1, c2 = x2^2/2\n";
  out << std::setprecision(10);
  out << "  best responses: x1 = " << r.br1_intercept << " - 0.5 x2, x2 = "
      << r.br2_intercept << " - 0.25 x1\n";
  out << "  equilibrium (" << r.equilibrium[0] << ", " << r.equilibrium[1]
      << "), price " << r.price << ", profits (" << r.profits[0] << ", "
      << r.profits[1] << ")\n";
  out << "  pair deviation (" << r.deviation[0] << ", " << r.deviation[1]
      << ") lifts player 1 to " << r.deviation_profit
      << " -> not a bilateral equilibrium\n";
  out << "  grid cross-check (m=400 on [0,200]^2): " << ne.size()
      << " grid equilibrium at";
  for (const auto& x : ne) {
    auto pt = grid.profile_point(x);
    out << " (" << pt[0] << ", " << pt[1] << ")";
  }
  out << "\n";
  return kOk;
}

int demo_witness3(unsigned long long seed, bool json_mode, std::ostream& out) {
  TensorTriple t = find_2lateral_witness(seed);
  FiniteGame game = game_from_triple(t);
  PureProfile corner{{2, 2, 2}};
  auto ne2 = enumerate_k_lateral(game, 2);
  bool contains = std::find(ne2.begin(), ne2.end(), corner) != ne2.end();
  double v2 = mixed_v_k(game, 2, degenerate_profile(game, corner));

  json report;
  report["command"] = "demo";
  report["name"] = "witness3";
  report["seed"] = seed;
  json tensors = json::array();
  for (int p = 0; p < 3; ++p) {
    json entries = json::array();
    for (const auto& e : t.tensors[static_cast<std::size_t>(p)])
      entries.push_back(e.str());
    tensors.push_back(entries);
  }
  report["tensors"] = tensors;
  report["ineq02"] = verify_ineq02(t);
  report["pure_2_lateral_at_222"] = contains;
  report["mixed_v_2_at_222"] = v2;

  if (json_mode) {
    out << report.dump(2) << "\n";
    return kOk;
  }
  const char* names[3] = {"X_A", "X_B", "X_C"};
  out << "3-player witness triple (seed " << seed << ")\n";
  for (int p = 0; p < 3; ++p) {
    out << "  " << names[p] << ":";
    for (const auto& e : t.tensors[static_cast<std::size_t>(p)])
      out << " " << e.str();
    out << "\n";
  }
  out << "  bilinear corner system: " << (verify_ineq02(t) ? "holds" : "fails")
      << "\n";
  out << "  (2,2,2) in NE_2 by pure enumeration: " << (contains ? "yes" : "no")
      << "\n";
  out << "  mixed V_2 at (2,2,2): " << v2 << "\n";
  return kOk;
}

}  // namespace

int run_demo(const std::string& name, unsigned long long seed, bool json_mode,
             std::ostream& out, std::ostream& err) {
  return guard(err, [&]() {
    if (name == "date") return demo_date(json_mode, out);
    if (name == "majority") return demo_majority(json_mode, out);
    if (name == "inspection") return demo_inspection(json_mode, out);
    if (name == "cournot") return demo_cournot(json_mode, out);
    if (name == "witness3") return demo_witness3(seed, json_mode, out);
    throw std::invalid_argument(
        "unknown demo '" + name +
        "'; expected date, majority, inspection, cournot or witness3");
  });
}

}  // namespace klat::cli
