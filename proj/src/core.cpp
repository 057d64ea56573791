#include "hc/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hc {

Rectangle::Rectangle(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d)) {
    throw std::invalid_argument("rectangle extents must be finite");
  }
  if (a > b || c > d) {
    throw std::invalid_argument("rectangle requires a <= b and c <= d");
  }
}

UnitPair::UnitPair(double t, double s) : t_(t), s_(s) {
  // Negated comparisons also reject NaN.
  if (!(t >= 0.0 && t <= 1.0) || !(s >= 0.0 && s <= 1.0)) {
    throw std::invalid_argument("unit pair requires t, s in [0, 1]");
  }
}

namespace {

void check_constant(double v) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument("Lipschitz constants must be finite and nonnegative");
  }
}

// (M1 w + M2 h) / denom, the shape shared by the rectangle-level bounds.
double scaled_extent(const Rectangle& rect, const LipschitzConstants& lip, double denom) {
  return (lip.m1() * rect.width() + lip.m2() * rect.height()) / denom;
}

}  // namespace

LipschitzConstants LipschitzConstants::pairwise(double l1, double l2) {
  check_constant(l1);
  check_constant(l2);
  return LipschitzConstants({l1, l2, l1, l2, l1, l2, l1, l2}, true);
}

LipschitzConstants LipschitzConstants::eight_point(const std::array<double, 8>& l) {
  for (double v : l) check_constant(v);
  return LipschitzConstants(l, false);
}

double LipschitzConstants::l(int i) const {
  if (i < 1 || i > 8) throw std::out_of_range("Lipschitz constant index " + std::to_string(i));
  return l_[static_cast<std::size_t>(i - 1)];
}

double LipschitzConstants::m1() const noexcept {
  if (pairwise_) return 4 * l_[0];
  return l_[0] + l_[2] + l_[4] + l_[6];
}

double LipschitzConstants::m2() const noexcept {
  if (pairwise_) return 4 * l_[1];
  return l_[1] + l_[3] + l_[5] + l_[7];
}

std::pair<double, double> m_constants(const LipschitzConstants& lip) { return {lip.m1(), lip.m2()}; }

double midpoint_mean_bound(const Rectangle& rect, const LipschitzConstants& lip) {
  return scaled_extent(rect, lip, 16);
}

double corner_mean_bound(const Rectangle& rect, const LipschitzConstants& lip) {
  return scaled_extent(rect, lip, 12);
}

double corner_midpoint_bound(const Rectangle& rect, const LipschitzConstants& lip) {
  return scaled_extent(rect, lip, 8);
}

double pointwise_gap_bound(const UnitPair& ts, const Rectangle& rect, const LipschitzConstants& lip) {
  const double t = ts.t();
  const double s = ts.s();
  const double x_part = t * s * (1 - t) * (lip.l(1) + lip.l(3)) + t * (1 - s) * (1 - t) * (lip.l(5) + lip.l(7));
  const double y_part = t * s * (1 - s) * (lip.l(2) + lip.l(6)) + s * (1 - s) * (1 - t) * (lip.l(4) + lip.l(8));
  return x_part * rect.width() + y_part * rect.height();
}

double h_vs_midpoint_bound(const UnitPair& ts, const Rectangle& rect, double l1, double l2) {
  return l1 * ts.t() * rect.width() / 4 + l2 * ts.s() * rect.height() / 4;
}

double h_vs_mean_bound(const UnitPair& ts, const Rectangle& rect, double l1, double l2) {
  return l1 * (1 - ts.t()) * rect.width() / 4 + l2 * (1 - ts.s()) * rect.height() / 4;
}

std::pair<double, double> h_lipschitz_modulus(const Rectangle& rect, double l1, double l2) {
  return {l1 * rect.width() / 4, l2 * rect.height() / 4};
}

double subrectangle_corner_bound(const UnitPair& ts, const Rectangle& rect, const LipschitzConstants& lip) {
  return (lip.m1() * ts.t() * rect.width() + lip.m2() * ts.s() * rect.height()) / 12;
}

double subrectangle_corner_bound_as_printed(const UnitPair& ts, const Rectangle& rect,
                                            const LipschitzConstants& lip) {
  const Rectangle shrunk = shrink_toward_center(rect, ts);
  return (lip.m1() * std::abs(shrunk.width()) * ts.t() + lip.m2() * std::abs(shrunk.height()) * ts.s()) / 12;
}

Rectangle shrink_toward_center(const Rectangle& rect, const UnitPair& ts) {
  const double t = ts.t();
  const double s = ts.s();
  const double cx = (rect.a() + rect.b()) / 2;
  const double cy = (rect.c() + rect.d()) / 2;
  const double n1 = rect.a() * t + (1 - t) * cx;
  const double n2 = rect.b() * t + (1 - t) * cx;
  const double m1 = rect.c() * s + (1 - s) * cy;
  const double m2 = rect.d() * s + (1 - s) * cy;
  // n1 <= n2 in exact arithmetic; rounding can invert them by an ulp when
  // the extent is tiny relative to the coordinates.
  return {std::min(n1, n2), std::max(n1, n2), std::min(m1, m2), std::max(m1, m2)};
}

double oned_midpoint_bound(double width, double lip) { return lip * width / 4; }

double oned_trapezoid_bound(double width, double lip) { return lip * width / 3; }

}  // namespace hc
