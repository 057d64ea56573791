#pragma once

// Test-only oracles. Nothing here calls into the quadrature or interval code
// paths under test: means are closed-form and slopes come from direct
// finite differences.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hc/core.hpp"
#include "hc/numeric.hpp"
#include "hc/verify.hpp"

namespace hc::test {

// Mean of |x - p| over [a, b]; for a == b the value at a.
inline double mean_abs(double a, double b, double p) {
  if (a == b) return std::abs(a - p);
  const auto antideriv = [p](double x) { return (x - p) * std::abs(x - p) / 2; };
  return (antideriv(b) - antideriv(a)) / (b - a);
}

// Closed-form mean of sum c (alpha |x-p| + beta |y-q|) over rect.
inline double cone_mean(const RandomConeSpec& spec, const Rectangle& r) {
  double sum = 0;
  for (const auto& t : spec.terms) {
    sum += t.c * (t.alpha * mean_abs(r.a(), r.b(), t.p) + t.beta * mean_abs(r.c(), r.d(), t.q));
  }
  return sum;
}

// Mean of sin(k v) over [lo, hi] and of cos(k v).
inline double mean_sin(double k, double lo, double hi) {
  return lo == hi ? std::sin(k * lo) : (std::cos(k * lo) - std::cos(k * hi)) / (k * (hi - lo));
}
inline double mean_cos(double k, double lo, double hi) {
  return lo == hi ? std::cos(k * lo) : (std::sin(k * hi) - std::sin(k * lo)) / (k * (hi - lo));
}

// Closed-form means of the smooth builtins.
inline double builtin_mean(const std::string& name, const Rectangle& r) {
  const double mx = (r.a() + r.b()) / 2;
  const double my = (r.c() + r.d()) / 2;
  if (name == "linear") return mx + my;
  if (name == "prodconvex") return mx * my;
  if (name == "sincos") return mean_sin(1, r.a(), r.b()) + mean_cos(2, r.c(), r.d());
  if (name == "wiggle") return mean_sin(5, r.a(), r.b()) * mean_sin(5, r.c(), r.d());
  if (name == "cone") return mean_abs(r.a(), r.b(), 0.5) + mean_abs(r.c(), r.d(), 0.5);
  return std::numeric_limits<double>::quiet_NaN();
}

// Largest axis slope over an n x n grid of base points using central
// differences with step rel_step * extent, and the floating-point rounding
// allowance of those samples (64 eps (|f1| + |f2|) / |dx|).
struct SampledSlopes {
  double l1 = 0, l2 = 0;
  double slack1 = 0, slack2 = 0;  // allowance attached to the max slopes
};

template <class F>
SampledSlopes sample_slopes(const F& f, const Rectangle& r, int n, double rel_step = 1e-6) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  SampledSlopes out;
  const double hx = r.width() * rel_step;
  const double hy = r.height() * rel_step;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = r.a() + hx + (r.width() - 2 * hx) * (i + 0.5) / n;
      const double y = r.c() + hy + (r.height() - 2 * hy) * (j + 0.5) / n;
      if (hx > 0) {
        const double x1 = x - hx, x2 = x + hx;
        const double f1 = f(x1, y), f2 = f(x2, y);
        const double slope = std::abs(f2 - f1) / (x2 - x1);
        if (slope > out.l1) {
          out.l1 = slope;
          out.slack1 = 64 * eps * (std::abs(f1) + std::abs(f2)) / (x2 - x1);
        }
      }
      if (hy > 0) {
        const double y1 = y - hy, y2 = y + hy;
        const double f1 = f(x, y1), f2 = f(x, y2);
        const double slope = std::abs(f2 - f1) / (y2 - y1);
        if (slope > out.l2) {
          out.l2 = slope;
          out.slack2 = 64 * eps * (std::abs(f1) + std::abs(f2)) / (y2 - y1);
        }
      }
    }
  }
  return out;
}

struct CorpusEntry {
  std::string text;
  Rectangle rect;
};

// 50 expressions, each well defined (no singularity) on its rectangle.
inline const std::vector<CorpusEntry>& expression_corpus() {
  static const std::vector<CorpusEntry> corpus = [] {
    const Rectangle u = Rectangle::unit();
    const Rectangle wide(-2, 3, -1, 2);
    const Rectangle pos(0.5, 2, 0.25, 1.5);
    const Rectangle pi_box(0, 3.141592653589793, 0, 3.141592653589793);
    return std::vector<CorpusEntry>{
        {"x+y", u},
        {"abs(x-0.5)+abs(y-0.5)", u},
        {"sin(x)+cos(2*y)", u},
        {"x*y", u},
        {"sin(5*x)*sin(5*y)", u},
        {"sin(x)+cos(2*y)", pi_box},
        {"x^2+y^2", wide},
        {"x^3-3*x*y", wide},
        {"exp(x)*y", u},
        {"exp(-x^2-y^2)", wide},
        {"sqrt(x+y)", pos},
        {"1/(1+x^2+y^2)", wide},
        {"x/(1+y^2)", wide},
        {"min(x,y)", u},
        {"max(x,y)", wide},
        {"max(x^2,y)", wide},
        {"min(sin(3*x),cos(3*y))", u},
        {"abs(sin(3*x))+y^3", wide},
        {"abs(x*y)", wide},
        {"abs(x)-abs(y)", wide},
        {"2*x-3*y+1", wide},
        {"-x^2", wide},
        {"(x-y)^2", u},
        {"(x+2*y)^4", u},
        {"x^5", wide},
        {"cos(x*y)", wide},
        {"sin(x+y)*cos(x-y)", pi_box},
        {"exp(sin(x))*cos(y)", pi_box},
        {"sqrt(1+x^2)", wide},
        {"sqrt(x)*sqrt(y)", pos},
        {"x/y", pos},
        {"y/x+x/y", pos},
        {"exp(x/2)-exp(y/3)", wide},
        {"abs(x-0.3)*abs(y-0.7)", u},
        {"max(abs(x),abs(y))", wide},
        {"min(x^2,1-y)", u},
        {"0.5*x^2*y", wide},
        {"sin(2*x)^2+cos(y)^2", pi_box},
        {"x*exp(-y)", wide},
        {"(1+x)^3/(2+y^2)", wide},
        {"abs(abs(x-0.5)-0.25)+y", u},
        {"sin(10*x)/10+y", u},
        {"exp(-abs(x))*sin(y)", wide},
        {"max(0,x+y-1)", u},
        {"min(abs(x),1)+0*y", wide},
        {"cos(3*x)*cos(3*y)", pi_box},
        {"sqrt(x^2+y^2+1)", wide},
        {"x^4-2*x^2+y", wide},
        {"3", u},
        {"exp(x+y)/(1+exp(x))", u},
    };
  }();
  return corpus;
}

}  // namespace hc::test
