#include "klat/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace klat {

ExprPtr make_number(double value) {
  if (value < 0) throw std::invalid_argument("number literals are nonnegative");
  return std::make_shared<const Expr>(NumberNode{value});
}
ExprPtr make_var(char kind, int index) {
  if ((kind != 'x' && kind != 'b') || index < 1)
    throw std::invalid_argument("bad variable");
  return std::make_shared<const Expr>(VarNode{kind, index});
}
ExprPtr make_neg(ExprPtr operand) {
  return std::make_shared<const Expr>(NegNode{std::move(operand)});
}
ExprPtr make_bin(char op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<const Expr>(BinNode{op, std::move(lhs), std::move(rhs)});
}
ExprPtr make_pow(ExprPtr base, int exponent) {
  if (exponent < 0) throw std::invalid_argument("exponent must be >= 0");
  return std::make_shared<const Expr>(PowNode{std::move(base), exponent});
}
ExprPtr make_call(BuiltinFn fn, std::vector<ExprPtr> args) {
  return std::make_shared<const Expr>(CallNode{fn, std::move(args)});
}
ExprPtr make_ite(CmpOp cmp, ExprPtr lhs, ExprPtr rhs, ExprPtr if_true,
                 ExprPtr if_false) {
  return std::make_shared<const Expr>(IteNode{cmp, std::move(lhs),
                                              std::move(rhs),
                                              std::move(if_true),
                                              std::move(if_false)});
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  const auto& na = a->node();
  const auto& nb = b->node();
  if (na.index() != nb.index()) return false;
  if (const auto* x = std::get_if<NumberNode>(&na))
    return x->value == std::get<NumberNode>(nb).value;
  if (const auto* x = std::get_if<VarNode>(&na)) {
    const auto& y = std::get<VarNode>(nb);
    return x->kind == y.kind && x->index == y.index;
  }
  if (const auto* x = std::get_if<NegNode>(&na))
    return expr_equal(x->operand, std::get<NegNode>(nb).operand);
  if (const auto* x = std::get_if<BinNode>(&na)) {
    const auto& y = std::get<BinNode>(nb);
    return x->op == y.op && expr_equal(x->lhs, y.lhs) &&
           expr_equal(x->rhs, y.rhs);
  }
  if (const auto* x = std::get_if<PowNode>(&na)) {
    const auto& y = std::get<PowNode>(nb);
    return x->exponent == y.exponent && expr_equal(x->base, y.base);
  }
  if (const auto* x = std::get_if<CallNode>(&na)) {
    const auto& y = std::get<CallNode>(nb);
    if (x->fn != y.fn || x->args.size() != y.args.size()) return false;
    for (std::size_t i = 0; i < x->args.size(); ++i)
      if (!expr_equal(x->args[i], y.args[i])) return false;
    return true;
  }
  const auto& x = std::get<IteNode>(na);
  const auto& y = std::get<IteNode>(nb);
  return x.cmp == y.cmp && expr_equal(x.lhs, y.lhs) &&
         expr_equal(x.rhs, y.rhs) && expr_equal(x.if_true, y.if_true) &&
         expr_equal(x.if_false, y.if_false);
}

namespace {

struct Token {
  enum class Type {
    Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma,
    Lt, Le, Gt, Ge, Eq, End
  };
  Type type;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      step();
    current_.line = line_;
    current_.column = column_;
    current_.text.clear();
    if (pos_ >= text_.size()) {
      current_.type = Token::Type::End;
      return;
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        step();
      if (pos_ < text_.size() && text_[pos_] == '.') {
        step();
        if (pos_ >= text_.size() ||
            !std::isdigit(static_cast<unsigned char>(text_[pos_])))
          throw ParseError("expected digits after decimal point", line_,
                           column_);
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
          step();
      }
      current_.type = Token::Type::Number;
      current_.text = text_.substr(start, pos_ - start);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_]))))
        step();
      current_.type = Token::Type::Ident;
      current_.text = text_.substr(start, pos_ - start);
      return;
    }
    switch (c) {
      case '+': step(); current_.type = Token::Type::Plus; return;
      case '-': step(); current_.type = Token::Type::Minus; return;
      case '*': step(); current_.type = Token::Type::Star; return;
      case '/': step(); current_.type = Token::Type::Slash; return;
      case '^': step(); current_.type = Token::Type::Caret; return;
      case '(': step(); current_.type = Token::Type::LParen; return;
      case ')': step(); current_.type = Token::Type::RParen; return;
      case ',': step(); current_.type = Token::Type::Comma; return;
      case '<':
        step();
        if (pos_ < text_.size() && text_[pos_] == '=') {
          step();
          current_.type = Token::Type::Le;
        } else {
          current_.type = Token::Type::Lt;
        }
        return;
      case '>':
        step();
        if (pos_ < text_.size() && text_[pos_] == '=') {
          step();
          current_.type = Token::Type::Ge;
        } else {
          current_.type = Token::Type::Gt;
        }
        return;
      case '=':
        step();
        if (pos_ < text_.size() && text_[pos_] == '=') {
          step();
          current_.type = Token::Type::Eq;
          return;
        }
        throw ParseError("expected '==' ", line_, column_);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'",
                         line_, column_);
    }
  }

  void step() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  Token current_{};
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  ExprPtr parse() {
    ExprPtr e = expression();
    const Token& t = lex_.peek();
    if (t.type != Token::Type::End)
      throw ParseError("unexpected trailing input", t.line, t.column);
    return e;
  }

 private:
  using TT = Token::Type;

  ExprPtr expression() {
    ExprPtr lhs = term();
    for (;;) {
      TT t = lex_.peek().type;
      if (t != TT::Plus && t != TT::Minus) return lhs;
      char op = t == TT::Plus ? '+' : '-';
      lex_.take();
      lhs = make_bin(op, lhs, term());
    }
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    for (;;) {
      TT t = lex_.peek().type;
      if (t != TT::Star && t != TT::Slash) return lhs;
      char op = t == TT::Star ? '*' : '/';
      lex_.take();
      lhs = make_bin(op, lhs, factor());
    }
  }

  ExprPtr factor() {
    if (lex_.peek().type == TT::Minus) {
      lex_.take();
      return make_neg(factor());
    }
    ExprPtr base = atom();
    if (lex_.peek().type == TT::Caret) {
      lex_.take();
      Token t = lex_.peek();
      if (t.type != TT::Number || t.text.find('.') != std::string::npos)
        throw ParseError("exponent must be an integer literal", t.line,
                         t.column);
      lex_.take();
      int exponent = 0;
      auto [ptr, ec] = std::from_chars(t.text.data(),
                                       t.text.data() + t.text.size(), exponent);
      if (ec != std::errc() || ptr != t.text.data() + t.text.size())
        throw ParseError("bad exponent", t.line, t.column);
      return make_pow(base, exponent);
    }
    return base;
  }

  ExprPtr atom() {
    Token t = lex_.peek();
    switch (t.type) {
      case TT::Number: {
        lex_.take();
        double value = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(),
                                         t.text.data() + t.text.size(), value);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size())
          throw ParseError("bad number literal", t.line, t.column);
        return make_number(value);
      }
      case TT::Ident:
        lex_.take();
        if (t.text == "min" || t.text == "max" || t.text == "abs")
          return call(t);
        if (t.text == "ite") return ite(t);
        return variable(t);
      case TT::LParen: {
        lex_.take();
        ExprPtr inner = expression();
        expect(TT::RParen, "expected ')'");
        return inner;
      }
      default:
        throw ParseError("expected a number, variable, function call or '('",
                         t.line, t.column);
    }
  }

  ExprPtr variable(const Token& t) {
    if ((t.text[0] == 'x' || t.text[0] == 'b') && t.text.size() > 1 &&
        std::all_of(t.text.begin() + 1, t.text.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        })) {
      int index = 0;
      auto [ptr, ec] = std::from_chars(t.text.data() + 1,
                                       t.text.data() + t.text.size(), index);
      if (ec == std::errc() && index >= 1) return make_var(t.text[0], index);
    }
    throw ParseError("unknown identifier '" + t.text + "'", t.line, t.column);
  }

  ExprPtr call(const Token& name) {
    BuiltinFn fn = name.text == "min"   ? BuiltinFn::Min
                   : name.text == "max" ? BuiltinFn::Max
                                        : BuiltinFn::Abs;
    expect(TT::LParen, "expected '(' after function name");
    std::vector<ExprPtr> args;
    args.push_back(expression());
    while (lex_.peek().type == TT::Comma) {
      lex_.take();
      args.push_back(expression());
    }
    expect(TT::RParen, "expected ')'");
    if (fn == BuiltinFn::Abs && args.size() != 1)
      throw ParseError("abs takes exactly one argument", name.line,
                       name.column);
    return make_call(fn, std::move(args));
  }

  ExprPtr ite(const Token& name) {
    expect(TT::LParen, "expected '(' after ite");
    ExprPtr lhs = expression();
    CmpOp cmp;
    Token t = lex_.peek();
    switch (t.type) {
      case TT::Lt: cmp = CmpOp::Lt; break;
      case TT::Le: cmp = CmpOp::Le; break;
      case TT::Gt: cmp = CmpOp::Gt; break;
      case TT::Ge: cmp = CmpOp::Ge; break;
      case TT::Eq: cmp = CmpOp::Eq; break;
      default:
        throw ParseError("ite condition must compare two expressions", t.line,
                         t.column);
    }
    lex_.take();
    ExprPtr rhs = expression();
    expect(TT::Comma, "ite takes three arguments");
    ExprPtr if_true = expression();
    expect(TT::Comma, "ite takes three arguments");
    ExprPtr if_false = expression();
    expect(TT::RParen, "expected ')'");
    (void)name;
    return make_ite(cmp, lhs, rhs, if_true, if_false);
  }

  void expect(TT type, const char* message) {
    const Token& t = lex_.peek();
    if (t.type != type) throw ParseError(message, t.line, t.column);
    lex_.take();
  }

  Lexer lex_;
};

int precedence(const ExprPtr& e) {
  const auto& n = e->node();
  if (std::holds_alternative<BinNode>(n))
    return (std::get<BinNode>(n).op == '+' || std::get<BinNode>(n).op == '-')
               ? 1
               : 2;
  if (std::holds_alternative<NegNode>(n)) return 3;
  if (std::holds_alternative<PowNode>(n)) return 4;
  return 5;  // atoms: numbers, variables, calls
}

std::string number_text(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::fixed);
  (void)ec;
  return std::string(buf, ptr);
}

const char* cmp_text(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    case CmpOp::Eq: return "==";
  }
  return "<";
}

void print_rec(const ExprPtr& e, int min_prec, std::string& out) {
  bool parens = precedence(e) < min_prec;
  if (parens) out += "(";
  const auto& n = e->node();
  if (const auto* x = std::get_if<NumberNode>(&n)) {
    out += number_text(x->value);
  } else if (const auto* x = std::get_if<VarNode>(&n)) {
    out += x->kind;
    out += std::to_string(x->index);
  } else if (const auto* x = std::get_if<NegNode>(&n)) {
    out += "-";
    print_rec(x->operand, 3, out);
  } else if (const auto* x = std::get_if<BinNode>(&n)) {
    int prec = (x->op == '+' || x->op == '-') ? 1 : 2;
    print_rec(x->lhs, prec, out);
    out += ' ';
    out += x->op;
    out += ' ';
    print_rec(x->rhs, prec + 1, out);  // left-associative operators
  } else if (const auto* x = std::get_if<PowNode>(&n)) {
    print_rec(x->base, 5, out);  // grammar allows only atoms as pow bases
    out += "^";
    out += std::to_string(x->exponent);
  } else if (const auto* x = std::get_if<CallNode>(&n)) {
    out += x->fn == BuiltinFn::Min ? "min" : x->fn == BuiltinFn::Max ? "max"
                                                                     : "abs";
    out += "(";
    for (std::size_t i = 0; i < x->args.size(); ++i) {
      if (i) out += ", ";
      print_rec(x->args[i], 1, out);
    }
    out += ")";
  } else {
    const auto& ite = std::get<IteNode>(n);
    out += "ite(";
    print_rec(ite.lhs, 1, out);
    out += ' ';
    out += cmp_text(ite.cmp);
    out += ' ';
    print_rec(ite.rhs, 1, out);
    out += ", ";
    print_rec(ite.if_true, 1, out);
    out += ", ";
    print_rec(ite.if_false, 1, out);
    out += ")";
  }
  if (parens) out += ")";
}

}  // namespace

ExprPtr parse_expr(const std::string& text) {
  if (text.empty()) throw ParseError("empty expression", 1, 1);
  return Parser(text).parse();
}

std::string print_expr(const ExprPtr& expr) {
  std::string out;
  print_rec(expr, 1, out);
  return out;
}

double eval_expr(const ExprPtr& expr, const Bindings& env) {
  const auto& n = expr->node();
  if (const auto* x = std::get_if<NumberNode>(&n)) return x->value;
  if (const auto* x = std::get_if<VarNode>(&n)) {
    const auto& values = x->kind == 'x' ? env.xs : env.bs;
    if (x->index < 1 || x->index > static_cast<int>(values.size()))
      throw EvalError(std::string("unbound variable ") + x->kind +
                      std::to_string(x->index));
    return values[static_cast<std::size_t>(x->index - 1)];
  }
  if (const auto* x = std::get_if<NegNode>(&n))
    return -eval_expr(x->operand, env);
  if (const auto* x = std::get_if<BinNode>(&n)) {
    double lhs = eval_expr(x->lhs, env);
    double rhs = eval_expr(x->rhs, env);
    switch (x->op) {
      case '+': return lhs + rhs;
      case '-': return lhs - rhs;
      case '*': return lhs * rhs;
      case '/':
        if (rhs == 0.0) throw EvalError("division by zero");
        return lhs / rhs;
    }
    throw EvalError("bad operator");
  }
  if (const auto* x = std::get_if<PowNode>(&n)) {
    double base = eval_expr(x->base, env);
    double result = 1.0;
    for (int i = 0; i < x->exponent; ++i) result *= base;
    return result;
  }
  if (const auto* x = std::get_if<CallNode>(&n)) {
    if (x->fn == BuiltinFn::Abs) return std::abs(eval_expr(x->args[0], env));
    double acc = eval_expr(x->args[0], env);
    for (std::size_t i = 1; i < x->args.size(); ++i) {
      double v = eval_expr(x->args[i], env);
      acc = x->fn == BuiltinFn::Min ? std::min(acc, v) : std::max(acc, v);
    }
    return acc;
  }
  const auto& x = std::get<IteNode>(n);
  double lhs = eval_expr(x.lhs, env);
  double rhs = eval_expr(x.rhs, env);
  bool taken;
  switch (x.cmp) {
    case CmpOp::Lt: taken = lhs < rhs; break;
    case CmpOp::Le: taken = lhs <= rhs; break;
    case CmpOp::Gt: taken = lhs > rhs; break;
    case CmpOp::Ge: taken = lhs >= rhs; break;
    default: taken = lhs == rhs; break;
  }
  // Strict in the condition only: just the selected branch is evaluated.
  return taken ? eval_expr(x.if_true, env) : eval_expr(x.if_false, env);
}

int max_var_index(const ExprPtr& expr, char kind) {
  const auto& n = expr->node();
  if (const auto* x = std::get_if<VarNode>(&n))
    return x->kind == kind ? x->index : 0;
  if (const auto* x = std::get_if<NegNode>(&n))
    return max_var_index(x->operand, kind);
  if (const auto* x = std::get_if<BinNode>(&n))
    return std::max(max_var_index(x->lhs, kind), max_var_index(x->rhs, kind));
  if (const auto* x = std::get_if<PowNode>(&n))
    return max_var_index(x->base, kind);
  if (const auto* x = std::get_if<CallNode>(&n)) {
    int best = 0;
    for (const auto& a : x->args) best = std::max(best, max_var_index(a, kind));
    return best;
  }
  if (const auto* x = std::get_if<IteNode>(&n)) {
    int best = std::max(max_var_index(x->lhs, kind), max_var_index(x->rhs, kind));
    best = std::max(best, max_var_index(x->if_true, kind));
    return std::max(best, max_var_index(x->if_false, kind));
  }
  return 0;
}

}  // namespace klat
