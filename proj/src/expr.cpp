#include "hc/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

#include "hc/errors.hpp"

namespace hc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr int max_exponent = 1024;

bool is_integer_exponent(double v) { return v >= 0 && v <= max_exponent && std::floor(v) == v; }

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Function {
  std::string_view name;
  bool binary;
  UnaryOp unary_op;
  BinaryOp binary_op;
};

constexpr std::array<Function, 7> functions{{
    {"abs", false, UnaryOp::Abs, BinaryOp::Add},
    {"sin", false, UnaryOp::Sin, BinaryOp::Add},
    {"cos", false, UnaryOp::Cos, BinaryOp::Add},
    {"exp", false, UnaryOp::Exp, BinaryOp::Add},
    {"sqrt", false, UnaryOp::Sqrt, BinaryOp::Add},
    {"min", true, UnaryOp::Neg, BinaryOp::Min},
    {"max", true, UnaryOp::Neg, BinaryOp::Max},
}};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = expr();
    skip_space();
    if (pos_ < text_.size()) fail(pos_, "unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(std::size_t at, const std::string& message) const { throw ParseError(at, message); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  // Consumes `c` if it is the next non-space character.
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      fail(pos_, pos_ < text_.size() ? std::string("expected '") + c + "'"
                                     : std::string("expected '") + c + "' before end of input");
    }
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('+')) {
        lhs = Expr::binary(BinaryOp::Add, lhs, term(), at);
      } else if (accept('-')) {
        lhs = Expr::binary(BinaryOp::Sub, lhs, term(), at);
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('*')) {
        lhs = Expr::binary(BinaryOp::Mul, lhs, factor(), at);
      } else if (accept('/')) {
        lhs = Expr::binary(BinaryOp::Div, lhs, factor(), at);
      } else {
        return lhs;
      }
    }
  }

  Expr factor() {
    skip_space();
    const std::size_t at = pos_;
    if (accept('-')) return Expr::unary(UnaryOp::Neg, factor(), at);
    return power();
  }

  Expr power() {
    Expr base = atom();
    skip_space();
    const std::size_t at = pos_;
    if (!accept('^')) return base;
    skip_space();
    const std::size_t exp_at = pos_;
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail(exp_at, "exponent must be a nonnegative integer literal");
    }
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
      fail(exp_at, "exponent must be a nonnegative integer literal");
    }
    int n = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + exp_at, text_.data() + pos_, n);
    if (ec != std::errc() || n > max_exponent) fail(exp_at, "exponent out of range");
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') fail(pos_, "chained exponent; parenthesize the base");
    return Expr::binary(BinaryOp::Pow, base, Expr::constant(n, exp_at), at);
  }

  Expr atom() {
    skip_space();
    const std::size_t at = pos_;
    if (pos_ >= text_.size()) fail(pos_, "expected expression before end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (accept('(')) {
      Expr inner = expr();
      expect(')');
      return inner;
    }
    fail(at, std::string("unexpected character '") + c + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t from = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - from;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) fail(start, "malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail(pos_, "malformed exponent in number");
    }
    double value = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_ || !std::isfinite(value)) {
      fail(start, "number out of range");
    }
    return Expr::constant(value, start);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") return Expr::variable(Var::X, start);
    if (name == "y") return Expr::variable(Var::Y, start);

    const Function* fn = nullptr;
    for (const auto& candidate : functions) {
      if (candidate.name == name) fn = &candidate;
    }
    if (fn == nullptr) fail(start, "unknown identifier '" + std::string(name) + "'");

    expect('(');
    Expr first = expr();
    skip_space();
    if (fn->binary) {
      if (pos_ < text_.size() && text_[pos_] == ')') fail(pos_, std::string(name) + " takes two arguments");
      expect(',');
      Expr second = expr();
      expect(')');
      return Expr::binary(fn->binary_op, first, second, start);
    }
    if (pos_ < text_.size() && text_[pos_] == ',') fail(pos_, std::string(name) + " takes one argument");
    expect(')');
    return Expr::unary(fn->unary_op, first, start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

double checked(double v, const Node& node) {
  if (!std::isfinite(v)) {
    throw EvalError(EvalErrorKind::DomainError, node.position,
                    "non-finite result at offset " + std::to_string(node.position));
  }
  return v;
}

double eval_node(const Node& node, double x, double y) {
  return std::visit(
      overloaded{
          [](const Node::Const& c) { return c.value; },
          [&](const Node::Variable& v) { return v.var == Var::X ? x : y; },
          [&](const Node::Unary& u) {
            const double a = eval_node(*u.child, x, y);
            switch (u.op) {
              case UnaryOp::Neg: return -a;
              case UnaryOp::Abs: return std::abs(a);
              case UnaryOp::Sin: return std::sin(a);
              case UnaryOp::Cos: return std::cos(a);
              case UnaryOp::Exp: return checked(std::exp(a), node);
              case UnaryOp::Sqrt:
                if (a < 0) {
                  throw EvalError(EvalErrorKind::DomainError, node.position,
                                  "sqrt of negative value at offset " + std::to_string(node.position));
                }
                return std::sqrt(a);
            }
            return a;
          },
          [&](const Node::Binary& b) {
            const double l = eval_node(*b.left, x, y);
            const double r = eval_node(*b.right, x, y);
            switch (b.op) {
              case BinaryOp::Add: return checked(l + r, node);
              case BinaryOp::Sub: return checked(l - r, node);
              case BinaryOp::Mul: return checked(l * r, node);
              case BinaryOp::Div:
                if (r == 0) {
                  throw EvalError(EvalErrorKind::DivByZero, node.position,
                                  "division by zero at offset " + std::to_string(node.position));
                }
                return checked(l / r, node);
              case BinaryOp::Pow: return checked(std::pow(l, r), node);
              case BinaryOp::Min: return std::min(l, r);
              case BinaryOp::Max: return std::max(l, r);
            }
            return l;
          },
      },
      node.data);
}

bool same_tree(const Node& lhs, const Node& rhs) {
  if (lhs.data.index() != rhs.data.index()) return false;
  return std::visit(
      overloaded{
          [&](const Node::Const& c) { return c.value == std::get<Node::Const>(rhs.data).value; },
          [&](const Node::Variable& v) { return v.var == std::get<Node::Variable>(rhs.data).var; },
          [&](const Node::Unary& u) {
            const auto& o = std::get<Node::Unary>(rhs.data);
            return u.op == o.op && same_tree(*u.child, *o.child);
          },
          [&](const Node::Binary& b) {
            const auto& o = std::get<Node::Binary>(rhs.data);
            return b.op == o.op && same_tree(*b.left, *o.left) && same_tree(*b.right, *o.right);
          },
      },
      lhs.data);
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

enum Precedence { kAdditive = 1, kMultiplicative = 2, kNegation = 3, kPower = 4, kAtom = 5 };

int precedence(const Node& node) {
  if (const auto* u = std::get_if<Node::Unary>(&node.data)) {
    return u->op == UnaryOp::Neg ? kNegation : kAtom;
  }
  if (const auto* b = std::get_if<Node::Binary>(&node.data)) {
    switch (b->op) {
      case BinaryOp::Add:
      case BinaryOp::Sub: return kAdditive;
      case BinaryOp::Mul:
      case BinaryOp::Div: return kMultiplicative;
      case BinaryOp::Pow: return kPower;
      case BinaryOp::Min:
      case BinaryOp::Max: return kAtom;
    }
  }
  return kAtom;
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void print(const Node& node, std::string& out);

void print_wrapped(const Node& node, bool wrap, std::string& out) {
  if (wrap) out += '(';
  print(node, out);
  if (wrap) out += ')';
}

const char* unary_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::Abs: return "abs";
    case UnaryOp::Sin: return "sin";
    case UnaryOp::Cos: return "cos";
    case UnaryOp::Exp: return "exp";
    case UnaryOp::Sqrt: return "sqrt";
    case UnaryOp::Neg: return "-";
  }
  return "?";
}

void print(const Node& node, std::string& out) {
  std::visit(overloaded{
                 [&](const Node::Const& c) {
                   // Parsed constants are never negative. A built negative
                   // constant prints as a subtraction from zero.
                   if (std::signbit(c.value)) {
                     out += "(0" + format_number(c.value) + ")";
                   } else {
                     out += format_number(c.value);
                   }
                 },
                 [&](const Node::Variable& v) { out += v.var == Var::X ? 'x' : 'y'; },
                 [&](const Node::Unary& u) {
                   if (u.op == UnaryOp::Neg) {
                     out += '-';
                     print_wrapped(*u.child, precedence(*u.child) < kNegation, out);
                     return;
                   }
                   out += unary_name(u.op);
                   out += '(';
                   print(*u.child, out);
                   out += ')';
                 },
                 [&](const Node::Binary& b) {
                   if (b.op == BinaryOp::Min || b.op == BinaryOp::Max) {
                     out += b.op == BinaryOp::Min ? "min(" : "max(";
                     print(*b.left, out);
                     out += ", ";
                     print(*b.right, out);
                     out += ')';
                     return;
                   }
                   if (b.op == BinaryOp::Pow) {
                     print_wrapped(*b.left, precedence(*b.left) < kAtom, out);
                     out += '^';
                     print(*b.right, out);
                     return;
                   }
                   const int p = precedence(node);
                   print_wrapped(*b.left, precedence(*b.left) < p, out);
                   switch (b.op) {
                     case BinaryOp::Add: out += " + "; break;
                     case BinaryOp::Sub: out += " - "; break;
                     case BinaryOp::Mul: out += " * "; break;
                     default: out += " / "; break;
                   }
                   print_wrapped(*b.right, precedence(*b.right) <= p, out);
                 },
             },
             node.data);
}

}  // namespace

Expr Expr::constant(double value, std::size_t position) {
  return Expr(std::make_shared<const Node>(Node{Node::Const{value}, position}));
}

Expr Expr::variable(Var var, std::size_t position) {
  return Expr(std::make_shared<const Node>(Node{Node::Variable{var}, position}));
}

Expr Expr::unary(UnaryOp op, const Expr& child, std::size_t position) {
  return Expr(std::make_shared<const Node>(Node{Node::Unary{op, child.root_}, position}));
}

Expr Expr::binary(BinaryOp op, const Expr& left, const Expr& right, std::size_t position) {
  if (op == BinaryOp::Pow) {
    const auto* exponent = std::get_if<Node::Const>(&right.root().data);
    if (exponent == nullptr || !is_integer_exponent(exponent->value)) {
      throw std::invalid_argument("pow exponent must be a nonnegative integer constant");
    }
  }
  return Expr(std::make_shared<const Node>(Node{Node::Binary{op, left.root_, right.root_}, position}));
}

double Expr::operator()(double x, double y) const { return eval_node(*root_, x, y); }

bool operator==(const Expr& lhs, const Expr& rhs) { return same_tree(*lhs.root_, *rhs.root_); }

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

double evaluate(const Expr& e, double x, double y) { return eval_node(e.root(), x, y); }

std::string to_string(const Expr& e) {
  std::string out;
  print(e.root(), out);
  return out;
}

namespace {

struct BuiltinEntry {
  std::string name;
  std::string text;
};

const std::vector<BuiltinEntry>& builtin_table() {
  static const std::vector<BuiltinEntry> table{
      {"linear", "x+y"},
      {"cone", "abs(x-0.5)+abs(y-0.5)"},
      {"sincos", "sin(x)+cos(2*y)"},
      {"prodconvex", "x*y"},
      {"wiggle", "sin(5*x)*sin(5*y)"},
  };
  return table;
}

}  // namespace

Expr builtin(std::string_view name) {
  for (const auto& entry : builtin_table()) {
    if (entry.name == name) return parse(entry.text);
  }
  throw UnknownBuiltin(std::string(name));
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& entry : builtin_table()) out.push_back(entry.name);
    return out;
  }();
  return names;
}

}  // namespace hc
