#include "hc/interval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "hc/errors.hpp"
#include "hc/parallel.hpp"

namespace hc {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double down(double v) { return std::nextafter(v, -inf); }
double up(double v) { return std::nextafter(v, inf); }

// Rounded endpoints widened outward by one ulp each.
Interval widened(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi)) throw SingularityInDomain("undefined interval operation");
  return {down(lo), up(hi)};
}

// True if offset + k*period lies in [lo - slack, hi + slack] for some k.
// The slack only ever admits extra extrema, which loosens the enclosure.
bool contains_periodic_point(const Interval& a, double offset, double period) {
  const double slack = 1e-12 * std::max({1.0, std::abs(a.lo()), std::abs(a.hi())});
  const double k0 = std::floor((a.lo() - offset) / period);
  for (double k = k0 - 1; k <= k0 + 2; k += 1) {
    const double p = offset + k * period;
    if (p >= a.lo() - slack && p <= a.hi() + slack) return true;
  }
  return false;
}

// Range of sin(x + shift) where the maxima sit at max_at + 2k*pi.
Interval periodic_range(const Interval& a, double lo_value, double hi_value, double max_at) {
  constexpr double two_pi = 2 * std::numbers::pi;
  // Beyond this magnitude the period test loses all precision.
  if (a.width() >= two_pi || std::max(std::abs(a.lo()), std::abs(a.hi())) > 1e9) return {-1.0, 1.0};
  double lo = std::min(lo_value, hi_value);
  double hi = std::max(lo_value, hi_value);
  if (contains_periodic_point(a, max_at, two_pi)) hi = 1.0;
  if (contains_periodic_point(a, max_at + std::numbers::pi, two_pi)) lo = -1.0;
  const Interval w = widened(lo, hi);
  return {std::max(-1.0, w.lo()), std::min(1.0, w.hi())};
}

Interval zero() { return Interval(0.0); }

}  // namespace

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
    throw std::invalid_argument("interval requires lo <= hi and no NaN endpoints");
  }
}

double Interval::mag() const noexcept { return std::max(std::abs(lo_), std::abs(hi_)); }

std::ostream& operator<<(std::ostream& os, const Interval& iv) {
  return os << '[' << iv.lo() << ", " << iv.hi() << ']';
}

Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

Interval operator-(const Interval& a) { return {-a.hi(), -a.lo()}; }

Interval operator+(const Interval& a, const Interval& b) {
  // Adding an exact zero is exact.
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return widened(a.lo() + b.lo(), a.hi() + b.hi());
}

Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

Interval operator*(const Interval& a, const Interval& b) {
  if (a.is_zero() || b.is_zero()) return zero();
  const std::array<double, 4> p{a.lo() * b.lo(), a.lo() * b.hi(), a.hi() * b.lo(), a.hi() * b.hi()};
  const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
  return widened(*lo, *hi);
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains(0.0)) throw SingularityInDomain("division by an interval containing zero");
  if (a.is_zero()) return zero();
  const std::array<double, 4> q{a.lo() / b.lo(), a.lo() / b.hi(), a.hi() / b.lo(), a.hi() / b.hi()};
  const auto [lo, hi] = std::minmax_element(q.begin(), q.end());
  return widened(*lo, *hi);
}

Interval abs(const Interval& a) {
  if (a.lo() >= 0) return a;
  if (a.hi() <= 0) return -a;
  return {0.0, a.mag()};
}

Interval sin(const Interval& a) {
  return periodic_range(a, std::sin(a.lo()), std::sin(a.hi()), std::numbers::pi / 2);
}

Interval cos(const Interval& a) { return periodic_range(a, std::cos(a.lo()), std::cos(a.hi()), 0.0); }

Interval exp(const Interval& a) {
  const Interval w = widened(std::exp(a.lo()), std::exp(a.hi()));
  return {std::max(0.0, w.lo()), w.hi()};
}

Interval sqrt(const Interval& a) {
  if (a.lo() < 0) throw SingularityInDomain("sqrt of an interval with negative values");
  const Interval w = widened(std::sqrt(a.lo()), std::sqrt(a.hi()));
  return {std::max(0.0, w.lo()), w.hi()};
}

Interval pow(const Interval& a, int n) {
  if (n < 0) throw std::invalid_argument("interval pow requires a nonnegative exponent");
  if (n == 0) return Interval(1.0);
  if (n == 1) return a;
  const auto p = [n](double v) { return std::pow(v, n); };
  if (n % 2 == 1) return widened(p(a.lo()), p(a.hi()));
  if (a.lo() >= 0) return widened(p(a.lo()), p(a.hi()));
  if (a.hi() <= 0) return widened(p(a.hi()), p(a.lo()));
  return {0.0, up(p(a.mag()))};
}

Interval min(const Interval& a, const Interval& b) {
  return {std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi())};
}

Interval max(const Interval& a, const Interval& b) {
  return {std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

Interval ia_apply(IntervalOp op, std::span<const Interval> args) {
  const bool binary = op == IntervalOp::Add || op == IntervalOp::Sub || op == IntervalOp::Mul ||
                      op == IntervalOp::Div || op == IntervalOp::Min || op == IntervalOp::Max;
  if (args.size() != (binary ? 2u : 1u)) throw std::invalid_argument("interval operation arity mismatch");
  switch (op) {
    case IntervalOp::Neg: return -args[0];
    case IntervalOp::Add: return args[0] + args[1];
    case IntervalOp::Sub: return args[0] - args[1];
    case IntervalOp::Mul: return args[0] * args[1];
    case IntervalOp::Div: return args[0] / args[1];
    case IntervalOp::Abs: return abs(args[0]);
    case IntervalOp::Sin: return sin(args[0]);
    case IntervalOp::Cos: return cos(args[0]);
    case IntervalOp::Exp: return exp(args[0]);
    case IntervalOp::Sqrt: return sqrt(args[0]);
    case IntervalOp::Min: return min(args[0], args[1]);
    case IntervalOp::Max: return max(args[0], args[1]);
  }
  throw std::invalid_argument("unknown interval operation");
}

namespace {

bool finite(const Interval& iv) { return std::isfinite(iv.lo()) && std::isfinite(iv.hi()); }

DerivBound checked(const DerivBound& r) {
  if (!finite(r.value)) throw SingularityInDomain("function enclosure is unbounded");
  if (!finite(r.dx) || !finite(r.dy)) throw UnboundedDerivative("derivative enclosure is unbounded");
  return r;
}

// Chain rule for a unary map with derivative enclosure `outer` at u.
DerivBound compose(const Interval& value, const Interval& outer, const DerivBound& u) {
  return {value, outer * u.dx, outer * u.dy};
}

Interval symmetric(const Interval& d) { return {-d.mag(), d.mag()}; }

DerivBound eval_node(const Node& node, const Interval& x, const Interval& y);

DerivBound eval_unary(UnaryOp op, const DerivBound& u) {
  switch (op) {
    case UnaryOp::Neg: return {-u.value, -u.dx, -u.dy};
    case UnaryOp::Abs:
      if (u.value.lo() > 0) return {u.value, u.dx, u.dy};
      if (u.value.hi() < 0) return {-u.value, -u.dx, -u.dy};
      return {abs(u.value), symmetric(u.dx), symmetric(u.dy)};
    case UnaryOp::Sin: return compose(sin(u.value), cos(u.value), u);
    case UnaryOp::Cos: return compose(cos(u.value), -sin(u.value), u);
    case UnaryOp::Exp: {
      const Interval e = exp(u.value);
      return compose(e, e, u);
    }
    case UnaryOp::Sqrt: {
      const Interval root = sqrt(u.value);
      if (u.dx.is_zero() && u.dy.is_zero()) return {root, zero(), zero()};
      if (root.lo() <= 0) throw UnboundedDerivative("derivative of sqrt is unbounded at zero");
      return compose(root, Interval(1.0) / (Interval(2.0) * root), u);
    }
  }
  throw std::logic_error("unhandled unary operation");
}

DerivBound eval_binary(BinaryOp op, const DerivBound& l, const DerivBound& r, const Node& right_node) {
  switch (op) {
    case BinaryOp::Add: return {l.value + r.value, l.dx + r.dx, l.dy + r.dy};
    case BinaryOp::Sub: return {l.value - r.value, l.dx - r.dx, l.dy - r.dy};
    case BinaryOp::Mul:
      return {l.value * r.value, l.dx * r.value + l.value * r.dx, l.dy * r.value + l.value * r.dy};
    case BinaryOp::Div: {
      const Interval q = l.value / r.value;
      return {q, (l.dx - q * r.dx) / r.value, (l.dy - q * r.dy) / r.value};
    }
    case BinaryOp::Pow: {
      const int n = static_cast<int>(std::get<Node::Const>(right_node.data).value);
      if (n == 0) return {Interval(1.0), zero(), zero()};
      const Interval outer = Interval(static_cast<double>(n)) * pow(l.value, n - 1);
      return compose(pow(l.value, n), outer, l);
    }
    case BinaryOp::Min:
    case BinaryOp::Max: {
      const bool is_min = op == BinaryOp::Min;
      // Branch that is active over the whole box, if any.
      if (l.value.hi() < r.value.lo()) return is_min ? l : r;
      if (r.value.hi() < l.value.lo()) return is_min ? r : l;
      const Interval v = is_min ? min(l.value, r.value) : max(l.value, r.value);
      return {v, hull(l.dx, r.dx), hull(l.dy, r.dy)};
    }
  }
  throw std::logic_error("unhandled binary operation");
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

DerivBound eval_node(const Node& node, const Interval& x, const Interval& y) {
  const DerivBound result = std::visit(
      overloaded{
          [](const Node::Const& c) { return DerivBound{Interval(c.value), zero(), zero()}; },
          [&](const Node::Variable& v) {
            return v.var == Var::X ? DerivBound{x, Interval(1.0), zero()} : DerivBound{y, zero(), Interval(1.0)};
          },
          [&](const Node::Unary& u) { return eval_unary(u.op, eval_node(*u.child, x, y)); },
          [&](const Node::Binary& b) {
            return eval_binary(b.op, eval_node(*b.left, x, y), eval_node(*b.right, x, y), *b.right);
          },
      },
      node.data);
  return checked(result);
}

// Edge i of a k-way split of [lo, hi]; i/k is formed first so that edge 2i of
// a 2k-way split coincides bit-for-bit with edge i of the k-way split.
double edge(double lo, double hi, int i, int k) {
  if (i == 0) return lo;
  if (i == k) return hi;
  return lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(k));
}

}  // namespace

DerivBound eval_with_derivatives(const Expr& e, const Interval& x, const Interval& y) {
  return eval_node(e.root(), x, y);
}

std::pair<double, double> certified_lipschitz(const Expr& e, const Rectangle& rect, int subdivisions) {
  if (subdivisions < 1) throw std::invalid_argument("subdivisions must be positive");
  const auto k = static_cast<std::size_t>(subdivisions);
  std::vector<std::pair<double, double>> slopes(k * k);
  parallel_for(k * k, [&](std::size_t box) {
    const int i = static_cast<int>(box / k);
    const int j = static_cast<int>(box % k);
    const Interval xs(edge(rect.a(), rect.b(), i, subdivisions), edge(rect.a(), rect.b(), i + 1, subdivisions));
    const Interval ys(edge(rect.c(), rect.d(), j, subdivisions), edge(rect.c(), rect.d(), j + 1, subdivisions));
    const DerivBound bound = eval_with_derivatives(e, xs, ys);
    slopes[box] = {bound.dx.mag(), bound.dy.mag()};
  });
  double l1 = 0;
  double l2 = 0;
  for (const auto& [sx, sy] : slopes) {
    l1 = std::max(l1, sx);
    l2 = std::max(l2, sy);
  }
  return {l1, l2};
}

}  // namespace hc
