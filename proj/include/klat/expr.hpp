#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "klat/errors.hpp"

namespace klat {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct NumberNode {
  double value;  // nonnegative; negative values are wrapped in NegNode
};

struct VarNode {
  char kind;  // 'x' strategy variable, 'b' parameter
  int index;  // 1-based
};

struct NegNode {
  ExprPtr operand;
};

struct BinNode {
  char op;  // '+', '-', '*', '/'
  ExprPtr lhs, rhs;
};

struct PowNode {
  ExprPtr base;
  int exponent;  // literal, >= 0
};

enum class BuiltinFn { Min, Max, Abs };

enum class CmpOp { Lt, Le, Gt, Ge, Eq };

struct CallNode {
  BuiltinFn fn;
  std::vector<ExprPtr> args;
};

struct IteNode {
  CmpOp cmp;
  ExprPtr lhs, rhs;        // condition: lhs CMP rhs
  ExprPtr if_true, if_false;
};

class Expr {
 public:
  using Node =
      std::variant<NumberNode, VarNode, NegNode, BinNode, PowNode, CallNode,
                   IteNode>;
  explicit Expr(Node node) : node_(std::move(node)) {}
  const Node& node() const { return node_; }

 private:
  Node node_;
};

ExprPtr make_number(double value);
ExprPtr make_var(char kind, int index);
ExprPtr make_neg(ExprPtr operand);
ExprPtr make_bin(char op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_pow(ExprPtr base, int exponent);
ExprPtr make_call(BuiltinFn fn, std::vector<ExprPtr> args);
ExprPtr make_ite(CmpOp cmp, ExprPtr lhs, ExprPtr rhs, ExprPtr if_true,
                 ExprPtr if_false);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// Recursive-descent parser for the payoff grammar. Throws ParseError with a
// 1-based line/column on any malformed input.
ExprPtr parse_expr(const std::string& text);

// Canonical text form; parsing it back yields a structurally equal tree.
std::string print_expr(const ExprPtr& expr);

// Variable bindings for evaluation: xs are the strategy variables x1..xN,
// bs are the parameters b1..bM.
struct Bindings {
  std::vector<double> xs;
  std::vector<double> bs;
};

double eval_expr(const ExprPtr& expr, const Bindings& env);

// Largest x/b index referenced, for validation against declared ranges.
int max_var_index(const ExprPtr& expr, char kind);

}  // namespace klat
