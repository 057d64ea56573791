#pragma once

// Domain types and the closed-form Hadamard-type bounds for Lipschitz
// functions on a rectangle. Every bound is a pure function of the rectangle
// extents and the Lipschitz constants; formulas are evaluated in a fixed
// operation order so results are bit-stable.

#include <array>
#include <utility>

namespace hc {

/// Axis-aligned rectangle [a,b] x [c,d]. Degenerate extents are allowed.
class Rectangle {
 public:
  /// Throws std::invalid_argument unless a <= b, c <= d and all are finite.
  Rectangle(double a, double b, double c, double d);

  static Rectangle unit() { return {0.0, 1.0, 0.0, 1.0}; }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  double d() const noexcept { return d_; }

  double width() const noexcept { return b_ - a_; }
  double height() const noexcept { return d_ - c_; }
  double area() const noexcept { return width() * height(); }
  double center_x() const noexcept { return (a_ + b_) / 2; }
  double center_y() const noexcept { return (c_ + d_) / 2; }
  bool degenerate() const noexcept { return a_ == b_ || c_ == d_; }

  friend bool operator==(const Rectangle&, const Rectangle&) = default;

 private:
  double a_, b_, c_, d_;
};

/// Parameter pair (t, s) in [0,1]^2.
class UnitPair {
 public:
  UnitPair(double t, double s);

  double t() const noexcept { return t_; }
  double s() const noexcept { return s_; }

  friend bool operator==(const UnitPair&, const UnitPair&) = default;

 private:
  double t_, s_;
};

/// Lipschitz constants of f on a rectangle.
///
/// The pairwise form {L1, L2} is the usual per-coordinate condition
/// |f(p) - f(q)| <= L1 |dx| + L2 |dy|. The eight-point form carries one
/// constant per (corner, axis) pair as they appear in the corner-blend gap
/// estimate: odd indices (L1, L3, L5, L7) multiply the x-extent, even ones the
/// y-extent. A pairwise set embeds as the eight-point set with all odd
/// constants equal to L1 and all even ones equal to L2.
class LipschitzConstants {
 public:
  static LipschitzConstants pairwise(double l1, double l2);
  static LipschitzConstants eight_point(const std::array<double, 8>& l);

  bool is_pairwise() const noexcept { return pairwise_; }

  /// Constant L_i with 1-based index i in [1, 8].
  double l(int i) const;

  /// L1+L3+L5+L7 (4*L1 for pairwise).
  double m1() const noexcept;
  /// L2+L4+L6+L8 (4*L2 for pairwise).
  double m2() const noexcept;

 private:
  LipschitzConstants(const std::array<double, 8>& l, bool pairwise) : l_(l), pairwise_(pairwise) {}

  std::array<double, 8> l_;
  bool pairwise_;
};

std::pair<double, double> m_constants(const LipschitzConstants& lip);

/// Bound on |f(center) - mean of f|: (M1 w + M2 h) / 16.
double midpoint_mean_bound(const Rectangle& rect, const LipschitzConstants& lip);

/// Bound on |corner average - mean of f|: (M1 w + M2 h) / 12.
double corner_mean_bound(const Rectangle& rect, const LipschitzConstants& lip);

/// Bound on |corner average - f(center)|: (M1 w + M2 h) / 8.
double corner_midpoint_bound(const Rectangle& rect, const LipschitzConstants& lip);

/// Bound on the gap between the bilinear corner blend
///   ts f(a,c) + s(1-t) f(b,c) + t(1-s) f(a,d) + (1-t)(1-s) f(b,d)
/// and f at the blended point (ta + (1-t)b, sc + (1-s)d).
double pointwise_gap_bound(const UnitPair& ts, const Rectangle& rect, const LipschitzConstants& lip);

// Bounds for H(t,s), the mean of f over the rectangle shrunk toward its
// center by factors (t, s).

/// |H(t,s) - f(center)| <= L1 t w / 4 + L2 s h / 4.
double h_vs_midpoint_bound(const UnitPair& ts, const Rectangle& rect, double l1, double l2);
/// |H(t,s) - mean| <= L1 (1-t) w / 4 + L2 (1-s) h / 4.
double h_vs_mean_bound(const UnitPair& ts, const Rectangle& rect, double l1, double l2);
/// Moduli (L1 w / 4, L2 h / 4) of H as a Lipschitz function of (t, s).
std::pair<double, double> h_lipschitz_modulus(const Rectangle& rect, double l1, double l2);

/// Bound on |corner average over shrink_toward_center(rect, ts) - H(t,s)|:
/// (M1 t w + M2 s h) / 12, the corner-mean bound on the shrunken rectangle.
double subrectangle_corner_bound(const UnitPair& ts, const Rectangle& rect, const LipschitzConstants& lip);

/// The same bound with the shrunken extents additionally scaled by t and s:
/// (M1 |n2-n1| t + M2 |m2-m1| s) / 12 = (M1 t^2 w + M2 s^2 h) / 12.
/// Reported for comparison only; it is not implied by the corner-mean bound.
double subrectangle_corner_bound_as_printed(const UnitPair& ts, const Rectangle& rect,
                                            const LipschitzConstants& lip);

/// [n1,n2] x [m1,m2] with n1 = a t + (1-t)(a+b)/2, n2 = b t + (1-t)(a+b)/2 and
/// likewise for the y-extent with s.
Rectangle shrink_toward_center(const Rectangle& rect, const UnitPair& ts);

/// One-variable bounds for an L-Lipschitz function on an interval of the
/// given width: |f(mid) - mean| <= L w / 4 and |(f(a)+f(b))/2 - mean| <= L w / 3.
double oned_midpoint_bound(double width, double lip);
double oned_trapezoid_bound(double width, double lip);

}  // namespace hc
