#pragma once

// Bivariate expression language for f(x, y).
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' integer)?
//   atom   := number | 'x' | 'y' | ident '(' expr (',' expr)? ')' | '(' expr ')'
//   ident  := 'abs'|'sin'|'cos'|'exp'|'sqrt'|'min'|'max'
//
// Trees are immutable and freely shared between threads.

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hc {

enum class Var { X, Y };
enum class UnaryOp { Neg, Abs, Sin, Cos, Exp, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div, Pow, Min, Max };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  struct Const {
    double value;
  };
  struct Variable {
    Var var;
  };
  struct Unary {
    UnaryOp op;
    NodePtr child;
  };
  // For Pow the right operand is always a Const holding a nonnegative integer.
  struct Binary {
    BinaryOp op;
    NodePtr left;
    NodePtr right;
  };

  std::variant<Const, Variable, Unary, Binary> data;
  // Byte offset of the node in the source text (0 for built trees).
  std::size_t position = 0;
};

class Expr {
 public:
  static Expr constant(double value, std::size_t position = 0);
  static Expr variable(Var var, std::size_t position = 0);
  static Expr unary(UnaryOp op, const Expr& child, std::size_t position = 0);
  /// Throws std::invalid_argument for Pow with a non-integer or negative
  /// constant exponent.
  static Expr binary(BinaryOp op, const Expr& left, const Expr& right, std::size_t position = 0);

  const Node& root() const noexcept { return *root_; }

  double operator()(double x, double y) const;

  /// Structural identity; source positions are ignored.
  friend bool operator==(const Expr& lhs, const Expr& rhs);

 private:
  explicit Expr(NodePtr root) : root_(std::move(root)) {}

  NodePtr root_;
};

/// Throws ParseError on malformed input.
Expr parse(std::string_view text);

/// Throws EvalError on division by zero, sqrt of a negative number or a
/// non-finite intermediate result.
double evaluate(const Expr& e, double x, double y);

/// Minimal-parenthesis rendering that parses back to an identical tree.
/// Numbers use the shortest round-trip representation.
std::string to_string(const Expr& e);

/// Named test functions: linear, cone, sincos, prodconvex, wiggle.
/// Throws UnknownBuiltin for any other name.
Expr builtin(std::string_view name);
const std::vector<std::string>& builtin_names();

}  // namespace hc
