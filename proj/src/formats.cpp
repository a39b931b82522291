#include "klat/formats.hpp"

#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "klat/errors.hpp"

namespace klat {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
  std::string raw;
};

// Strips comments ('#' to end of line) and blank lines.
std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::string body = raw.substr(0, raw.find('#'));
    std::istringstream ls(body);
    Line line;
    line.number = number;
    line.raw = body;
    std::string token;
    while (ls >> token) line.tokens.push_back(token);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void fail(const Line& line, const std::string& message) {
  throw ParseError(message, line.number, 1);
}

int to_int(const Line& line, const std::string& token, const char* what) {
  try {
    std::size_t used = 0;
    int value = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    fail(line, std::string("expected an integer for ") + what + ", got '" +
                   token + "'");
  }
}

double to_float(const Line& line, const std::string& token, const char* what) {
  try {
    std::size_t used = 0;
    double value = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    fail(line, std::string("expected a number for ") + what + ", got '" +
                   token + "'");
  }
}

FiniteGame parse_game_lines(const std::vector<Line>& lines) {
  int num_players = -1;
  std::vector<int> counts;
  std::vector<std::vector<std::string>> labels;
  std::vector<std::vector<Rational>> payoffs;
  std::vector<bool> have_tensor;

  std::size_t i = 0;
  auto need_shape = [&](const Line& line) {
    if (num_players < 0 || counts.empty())
      fail(line, "declare 'players' and 'strategies' first");
  };

  while (i < lines.size()) {
    const Line& line = lines[i];
    const std::string& head = line.tokens.front();
    if (head == "players") {
      if (line.tokens.size() != 2) fail(line, "usage: players <count>");
      num_players = to_int(line, line.tokens[1], "players");
      if (num_players < 1) fail(line, "players must be at least 1");
      ++i;
    } else if (head == "strategies") {
      if (num_players < 0) fail(line, "declare 'players' before 'strategies'");
      if (static_cast<int>(line.tokens.size()) != num_players + 1)
        fail(line, "strategies needs one count per player");
      counts.clear();
      for (int p = 0; p < num_players; ++p)
        counts.push_back(to_int(line, line.tokens[static_cast<std::size_t>(p) + 1],
                                "strategy count"));
      labels.assign(static_cast<std::size_t>(num_players), {});
      payoffs.assign(static_cast<std::size_t>(num_players), {});
      have_tensor.assign(static_cast<std::size_t>(num_players), false);
      ++i;
    } else if (head == "labels") {
      need_shape(line);
      if (line.tokens.size() < 2) fail(line, "usage: labels <player> <names...>");
      int player = to_int(line, line.tokens[1], "player");
      if (player < 1 || player > num_players) fail(line, "player out of range");
      if (counts[static_cast<std::size_t>(player - 1)] !=
          static_cast<int>(line.tokens.size()) - 2)
        fail(line, "labels must list one name per strategy");
      labels[static_cast<std::size_t>(player - 1)]
          .assign(line.tokens.begin() + 2, line.tokens.end());
      ++i;
    } else if (head == "payoffs") {
      need_shape(line);
      if (line.tokens.size() != 2) fail(line, "usage: payoffs <player>");
      int player = to_int(line, line.tokens[1], "player");
      if (player < 1 || player > num_players) fail(line, "player out of range");
      long long total = 1;
      for (int d : counts) total *= d;
      std::vector<Rational> tensor;
      tensor.reserve(static_cast<std::size_t>(total));
      ++i;
      while (static_cast<long long>(tensor.size()) < total) {
        if (i >= lines.size())
          fail(lines.back(), "payoff tensor for player " +
                                 std::to_string(player) + " is truncated");
        for (const auto& token : lines[i].tokens) {
          if (static_cast<long long>(tensor.size()) == total)
            fail(lines[i], "too many payoff entries for player " +
                               std::to_string(player));
          try {
            tensor.push_back(parse_rational(token));
          } catch (const std::exception& e) {
            fail(lines[i], e.what());
          }
        }
        ++i;
      }
      payoffs[static_cast<std::size_t>(player - 1)] = std::move(tensor);
      have_tensor[static_cast<std::size_t>(player - 1)] = true;
    } else {
      fail(line, "unknown directive '" + head + "'");
    }
  }

  if (num_players < 0) {
    Line eof{1, {}, ""};
    fail(eof, "missing 'players' declaration");
  }
  for (std::size_t p = 0; p < have_tensor.size(); ++p)
    if (!have_tensor[p]) {
      Line eof{lines.empty() ? 1 : lines.back().number, {}, ""};
      fail(eof, "missing payoffs for player " + std::to_string(p + 1));
    }
  bool any_labels = false;
  for (const auto& l : labels) any_labels |= !l.empty();
  if (any_labels)
    for (std::size_t p = 0; p < labels.size(); ++p)
      if (labels[p].empty()) {
        labels[p].reserve(static_cast<std::size_t>(counts[p]));
        for (int s = 1; s <= counts[p]; ++s)
          labels[p].push_back(std::to_string(s));
      }

  FiniteGame raw;
  raw.num_players = num_players;
  raw.strategy_counts = counts;
  raw.payoffs = std::move(payoffs);
  raw.strategy_labels = any_labels ? std::move(labels)
                                   : std::vector<std::vector<std::string>>{};
  auto issues = validate(raw);
  if (!issues.empty()) {
    Line eof{lines.empty() ? 1 : lines.back().number, {}, ""};
    fail(eof, "invalid game: " + issues.front());
  }
  return raw;
}

ParameterPoint parse_point(const Line& line) {
  ParameterPoint p;
  std::size_t t = 1;
  for (; t < line.tokens.size(); ++t) {
    if (line.tokens[t] == "label") break;
    p.coordinates.push_back(to_float(line, line.tokens[t], "coordinate"));
  }
  if (p.coordinates.empty()) fail(line, "point needs at least one coordinate");
  if (t < line.tokens.size()) {
    std::string label;
    for (++t; t < line.tokens.size(); ++t) {
      if (!label.empty()) label += " ";
      label += line.tokens[t];
    }
    if (label.empty()) fail(line, "empty label");
    p.label = label;
  }
  return p;
}

}  // namespace

FiniteGame parse_game_text(const std::string& text) {
  return parse_game_lines(split_lines(text));
}

FiniteGame load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open game file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_game_text(buf.str());
}

void write_game(std::ostream& os, const FiniteGame& game) {
  os << "players " << game.num_players << "\n";
  os << "strategies";
  for (int d : game.strategy_counts) os << " " << d;
  os << "\n";
  if (!game.strategy_labels.empty())
    for (int p = 1; p <= game.num_players; ++p) {
      os << "labels " << p;
      for (const auto& name : game.strategy_labels[static_cast<std::size_t>(p - 1)])
        os << " " << name;
      os << "\n";
    }
  for (int p = 1; p <= game.num_players; ++p) {
    os << "payoffs " << p << "\n";
    const auto& tensor = game.payoffs[static_cast<std::size_t>(p - 1)];
    for (std::size_t e = 0; e < tensor.size(); ++e)
      os << tensor[e].str() << (e + 1 == tensor.size() ? "\n" : " ");
  }
}

GameFamily parse_family_text(const std::string& text) {
  auto lines = split_lines(text);
  if (lines.empty()) throw ParseError("empty family file", 1, 1);

  GameFamily family;
  bool kind_set = false;
  std::vector<ParameterPoint> points;
  auto fibers = std::make_shared<std::vector<FiniteGame>>();

  // Continuous template pieces.
  int players = -1;
  std::vector<std::pair<double, double>> intervals;
  std::vector<std::pair<int, std::string>> payoff_exprs;

  std::size_t i = 0;
  while (i < lines.size()) {
    const Line& line = lines[i];
    const std::string& head = line.tokens.front();
    if (head == "family") {
      if (line.tokens.size() != 2 ||
          (line.tokens[1] != "finite" && line.tokens[1] != "continuous"))
        fail(line, "usage: family finite|continuous");
      family.kind = line.tokens[1] == "finite" ? GameFamily::Kind::Finite
                                               : GameFamily::Kind::Continuous;
      kind_set = true;
      ++i;
    } else if (head == "resolution") {
      if (line.tokens.size() != 2) fail(line, "usage: resolution <m>");
      family.grid_m = to_int(line, line.tokens[1], "resolution");
      if (family.grid_m < 1) fail(line, "resolution must be >= 1");
      ++i;
    } else if (head == "point") {
      points.push_back(parse_point(line));
      ++i;
    } else if (head == "fiber") {
      std::size_t start = ++i;
      while (i < lines.size() && lines[i].tokens.front() != "end") ++i;
      if (i >= lines.size()) fail(lines.back(), "fiber block missing 'end'");
      std::vector<Line> block(lines.begin() + static_cast<long>(start),
                              lines.begin() + static_cast<long>(i));
      if (block.empty()) fail(line, "empty fiber block");
      fibers->push_back(parse_game_lines(block));
      ++i;  // consume 'end'
    } else if (head == "players") {
      if (line.tokens.size() != 2) fail(line, "usage: players <count>");
      players = to_int(line, line.tokens[1], "players");
      ++i;
    } else if (head == "interval") {
      if (line.tokens.size() != 4)
        fail(line, "usage: interval <player> <lo> <hi>");
      int p = to_int(line, line.tokens[1], "player");
      if (p != static_cast<int>(intervals.size()) + 1)
        fail(line, "intervals must be declared in player order");
      intervals.emplace_back(to_float(line, line.tokens[2], "lo"),
                             to_float(line, line.tokens[3], "hi"));
      ++i;
    } else if (head == "payoff") {
      if (line.tokens.size() < 3)
        fail(line, "usage: payoff <player> <expression>");
      int p = to_int(line, line.tokens[1], "player");
      std::string expr = line.raw;
      // Drop the directive and player number, keep the raw expression text.
      std::size_t pos = expr.find("payoff");
      pos = expr.find(line.tokens[1], pos + 6);
      expr = expr.substr(pos + line.tokens[1].size());
      payoff_exprs.emplace_back(p, expr);
      ++i;
    } else {
      fail(line, "unknown directive '" + head + "'");
    }
  }

  if (!kind_set) fail(lines.front(), "missing 'family finite|continuous'");
  if (points.empty()) fail(lines.front(), "family grid is empty");
  std::size_t dim = points.front().coordinates.size();
  for (const auto& p : points)
    if (p.coordinates.size() != dim)
      fail(lines.front(), "grid points have mixed dimensionality");
  family.grid = std::move(points);

  if (family.kind == GameFamily::Kind::Finite) {
    if (fibers->size() != family.grid.size())
      fail(lines.back(), "expected one fiber per grid point: " +
                             std::to_string(family.grid.size()) + " points, " +
                             std::to_string(fibers->size()) + " fibers");
    for (std::size_t f = 1; f < fibers->size(); ++f)
      if ((*fibers)[f].strategy_counts != (*fibers)[0].strategy_counts)
        fail(lines.back(), "fibers must share one strategy shape");
    family.finite_fiber = [fibers](std::size_t j) { return (*fibers)[j]; };
    return family;
  }

  if (players < 1) fail(lines.back(), "continuous family missing 'players'");
  if (static_cast<int>(intervals.size()) != players)
    fail(lines.back(), "continuous family needs one interval per player");
  auto base = std::make_shared<ContinuousGame>();
  base->num_players = players;
  base->intervals = intervals;
  base->payoffs.assign(static_cast<std::size_t>(players), nullptr);
  for (const auto& [p, text] : payoff_exprs) {
    if (p < 1 || p > players) fail(lines.back(), "payoff player out of range");
    base->payoffs[static_cast<std::size_t>(p - 1)] = parse_expr(text);
  }
  base->parameters.assign(dim, 0.0);
  auto issues = validate(*base);
  if (!issues.empty()) fail(lines.back(), issues.front());

  auto grid = std::make_shared<std::vector<ParameterPoint>>(family.grid);
  family.continuous_fiber = [base, grid](std::size_t j) {
    ContinuousGame cg = *base;
    cg.parameters = (*grid)[j].coordinates;
    return cg;
  };
  return family;
}

GameFamily load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open family file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_family_text(buf.str());
}

void write_finite_family(std::ostream& os, const GameFamily& family) {
  if (family.kind != GameFamily::Kind::Finite)
    throw std::invalid_argument("only finite families can be written inline");
  os << "family finite\n";
  for (const auto& p : family.grid) {
    os << "point";
    for (double c : p.coordinates) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", c);
      os << " " << buf;
    }
    if (!p.label.empty()) os << " label " << p.label;
    os << "\n";
  }
  for (std::size_t j = 0; j < family.grid.size(); ++j) {
    os << "fiber\n";
    write_game(os, family.finite_fiber(j));
    os << "end\n";
  }
}

}  // namespace klat
