#pragma once

// Interval enclosures and forward-mode derivative propagation used to
// certify per-coordinate Lipschitz constants L1 >= sup|df/dx| and
// L2 >= sup|df/dy| over a rectangle.
//
// Rounding is not controlled directly: every operation whose endpoints come
// out of floating-point arithmetic is widened outward by one ulp per
// endpoint, so the enclosures are certified up to that inflation.

#include <iosfwd>
#include <span>
#include <utility>

#include "hc/core.hpp"
#include "hc/expr.hpp"

namespace hc {

class Interval {
 public:
  /// Throws std::invalid_argument if lo > hi or either endpoint is NaN.
  Interval(double lo, double hi);
  explicit Interval(double point) : Interval(point, point) {}

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double width() const noexcept { return hi_ - lo_; }
  /// max(|lo|, |hi|)
  double mag() const noexcept;
  bool contains(double v) const noexcept { return lo_ <= v && v <= hi_; }
  bool contains(const Interval& other) const noexcept { return lo_ <= other.lo_ && other.hi_ <= hi_; }
  bool is_zero() const noexcept { return lo_ == 0 && hi_ == 0; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_, hi_;
};

std::ostream& operator<<(std::ostream& os, const Interval& iv);

Interval hull(const Interval& a, const Interval& b);

Interval operator-(const Interval& a);
Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
/// Throws SingularityInDomain if 0 is in the denominator.
Interval operator/(const Interval& a, const Interval& b);

Interval abs(const Interval& a);
Interval sin(const Interval& a);
Interval cos(const Interval& a);
Interval exp(const Interval& a);
/// Throws SingularityInDomain if a.lo() < 0.
Interval sqrt(const Interval& a);
Interval pow(const Interval& a, int n);
Interval min(const Interval& a, const Interval& b);
Interval max(const Interval& a, const Interval& b);

enum class IntervalOp { Neg, Add, Sub, Mul, Div, Abs, Sin, Cos, Exp, Sqrt, Min, Max };

/// Applies `op` to the argument enclosures. Throws std::invalid_argument on
/// an arity mismatch.
Interval ia_apply(IntervalOp op, std::span<const Interval> args);

/// Enclosures of f, df/dx and df/dy over a box.
struct DerivBound {
  Interval value;
  Interval dx;
  Interval dy;
};

/// Forward-mode propagation of (value, dx, dy). Kinks of abs/min/max are
/// covered by the hull of the one-sided derivatives.
///
/// Throws SingularityInDomain (division by an enclosure containing zero,
/// sqrt of a negative range, overflow) and UnboundedDerivative (infinite
/// derivative enclosure, e.g. sqrt at 0).
DerivBound eval_with_derivatives(const Expr& e, const Interval& x, const Interval& y);

inline constexpr int default_subdivisions = 16;

/// Splits `rect` into subdivisions x subdivisions boxes and returns
/// (max |dx|, max |dy|) over all boxes: true per-coordinate Lipschitz
/// constants for e on rect.
///
/// Boxes are evaluated on up to hc::thread_count() threads; the max
/// reduction makes the result independent of scheduling. When several boxes
/// fail, the error of the lowest-numbered box is rethrown.
std::pair<double, double> certified_lipschitz(const Expr& e, const Rectangle& rect,
                                              int subdivisions = default_subdivisions);

}  // namespace hc
