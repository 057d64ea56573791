#pragma once

// The point values and means compared by the Hadamard-type inequalities:
// midpoint value, corner average, line means, the reference mean and the
// mapping H(t,s) (mean of f over the rectangle shrunk toward its center).
//
// The reference mean is a tensor-product composite Simpson rule. It is an
// oracle for tests and verification, not a certified integral.

#include <functional>
#include <utility>
#include <vector>

#include "hc/core.hpp"

namespace hc {

using Function2D = std::function<double(double, double)>;

/// Lines x = const and y = const across which f may have a kink. Each
/// Simpson rule is applied piecewise between consecutive kinks, which makes
/// the oracle exact (up to rounding) for piecewise-linear functions such as
/// sums of |x - p| and |y - q| terms.
struct Kinks {
  std::vector<double> x;
  std::vector<double> y;
};

double midpoint_value(const Function2D& f, const Rectangle& rect);

/// (f(a,c) + f(a,d) + f(b,c) + f(b,d)) / 4
double corner_average(const Function2D& f, const Rectangle& rect);

/// Mean of f over rect by composite Simpson with n panels per axis (per
/// kink-free piece). A degenerate axis contributes a single point.
/// Throws std::invalid_argument unless n is even and >= 2.
double mean_value_oracle(const Function2D& f, const Rectangle& rect, int n, const Kinks& kinks = {});

/// Mean of f(., y0) over [a, b].
double line_mean_x(const Function2D& f, const Rectangle& rect, double y0, int n, const Kinks& kinks = {});
/// Mean of f(x0, .) over [c, d].
double line_mean_y(const Function2D& f, const Rectangle& rect, double x0, int n, const Kinks& kinks = {});

/// H(t,s): mean of f over shrink_toward_center(rect, ts). At t = 0 (s = 0) the
/// x (y) extent collapses and the mean reduces to a line mean or the
/// midpoint value.
double h_value(const Function2D& f, const Rectangle& rect, const UnitPair& ts, int n, const Kinks& kinks = {});

struct OracleMean {
  double value;  // mean at the final n
  double gap;    // |mean(n) - mean(n/2)|
  int n;
};

/// Doubles n from `n_start` until two consecutive means differ by less than
/// `tolerance` or n reaches `n_max`; reports the final gap either way.
OracleMean refined_mean(const Function2D& f, const Rectangle& rect, int n_start, int n_max,
                        double tolerance, const Kinks& kinks = {});

/// Largest axis slope |f(p) - f(q)| / |p - q| seen over `samples` random
/// short axis-aligned pairs per axis. A lower bound on the Lipschitz
/// constants, not a certificate.
std::pair<double, double> sampled_lipschitz(const Function2D& f, const Rectangle& rect, int samples,
                                            unsigned long long seed);

}  // namespace hc
