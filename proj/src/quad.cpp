#include "hc/quad.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hc/numeric.hpp"
#include "hc/parallel.hpp"

namespace hc {

namespace {

// Nodes and weights of a 1-D mean rule; weights sum to 1.
struct AxisRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

void check_panels(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("Simpson rule needs an even panel count >= 2");
}

AxisRule axis_rule(double lo, double hi, int n, const std::vector<double>& kinks) {
  AxisRule rule;
  if (lo == hi) {
    rule.nodes.push_back(lo);
    rule.weights.push_back(1.0);
    return rule;
  }

  std::vector<double> edges{lo};
  std::vector<double> inner;
  for (double k : kinks) {
    if (k > lo && k < hi) inner.push_back(k);
  }
  std::sort(inner.begin(), inner.end());
  inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
  edges.insert(edges.end(), inner.begin(), inner.end());
  edges.push_back(hi);

  const double total = hi - lo;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double from = edges[p];
    const double to = edges[p + 1];
    const double share = (to - from) / total;
    for (int i = 0; i <= n; ++i) {
      const double coef = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      const double x = i == n ? to : from + (to - from) * (static_cast<double>(i) / n);
      rule.nodes.push_back(x);
      rule.weights.push_back(share * coef / (3.0 * n));
    }
  }
  return rule;
}

double apply_1d(const AxisRule& rule, const std::function<double(double)>& g) {
  CompensatedSum sum;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum.add(rule.weights[i] * g(rule.nodes[i]));
  return sum.value();
}

// Below this many grid points the evaluation runs on the calling thread.
constexpr std::size_t parallel_threshold = 1 << 14;

}  // namespace

double midpoint_value(const Function2D& f, const Rectangle& rect) { return f(rect.center_x(), rect.center_y()); }

double corner_average(const Function2D& f, const Rectangle& rect) {
  return (f(rect.a(), rect.c()) + f(rect.a(), rect.d()) + f(rect.b(), rect.c()) + f(rect.b(), rect.d())) / 4;
}

double mean_value_oracle(const Function2D& f, const Rectangle& rect, int n, const Kinks& kinks) {
  check_panels(n);
  const AxisRule rx = axis_rule(rect.a(), rect.b(), n, kinks.x);
  const AxisRule ry = axis_rule(rect.c(), rect.d(), n, kinks.y);
  const std::size_t nx = rx.nodes.size();
  const std::size_t ny = ry.nodes.size();

  std::vector<double> values(nx * ny);
  auto fill_row = [&](std::size_t i) {
    for (std::size_t j = 0; j < ny; ++j) values[i * ny + j] = f(rx.nodes[i], ry.nodes[j]);
  };
  if (values.size() >= parallel_threshold) {
    parallel_for(nx, fill_row);
  } else {
    for (std::size_t i = 0; i < nx; ++i) fill_row(i);
  }

  // Row-major order keeps the sum independent of the thread count.
  CompensatedSum sum;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) sum.add(rx.weights[i] * ry.weights[j] * values[i * ny + j]);
  }
  return sum.value();
}

double line_mean_x(const Function2D& f, const Rectangle& rect, double y0, int n, const Kinks& kinks) {
  check_panels(n);
  return apply_1d(axis_rule(rect.a(), rect.b(), n, kinks.x), [&](double x) { return f(x, y0); });
}

double line_mean_y(const Function2D& f, const Rectangle& rect, double x0, int n, const Kinks& kinks) {
  check_panels(n);
  return apply_1d(axis_rule(rect.c(), rect.d(), n, kinks.y), [&](double y) { return f(x0, y); });
}

double h_value(const Function2D& f, const Rectangle& rect, const UnitPair& ts, int n, const Kinks& kinks) {
  return mean_value_oracle(f, shrink_toward_center(rect, ts), n, kinks);
}

OracleMean refined_mean(const Function2D& f, const Rectangle& rect, int n_start, int n_max, double tolerance,
                        const Kinks& kinks) {
  check_panels(n_start);
  int n = n_start;
  double previous = mean_value_oracle(f, rect, n, kinks);
  for (;;) {
    const int next = 2 * n;
    const double current = mean_value_oracle(f, rect, next, kinks);
    const double gap = std::abs(current - previous);
    if (gap < tolerance || next >= n_max) return {current, gap, next};
    previous = current;
    n = next;
  }
}

std::pair<double, double> sampled_lipschitz(const Function2D& f, const Rectangle& rect, int samples,
                                            unsigned long long seed) {
  if (samples < 1) throw std::invalid_argument("sampled_lipschitz needs at least one sample");
  Rng rng(seed);
  // Short pairs resolve local slopes; 2^-10 of the extent keeps rounding noise small.
  const double hx = rect.width() * 0x1.0p-10;
  const double hy = rect.height() * 0x1.0p-10;
  double l1 = 0;
  double l2 = 0;
  for (int i = 0; i < samples; ++i) {
    const double x = rng.uniform(rect.a(), rect.b() - hx);
    const double y = rng.uniform(rect.c(), rect.d() - hy);
    if (hx > 0) {
      const double x2 = x + hx;
      l1 = std::max(l1, std::abs(f(x2, y) - f(x, y)) / (x2 - x));
    }
    if (hy > 0) {
      const double y2 = y + hy;
      l2 = std::max(l2, std::abs(f(x, y2) - f(x, y)) / (y2 - y));
    }
  }
  return {l1, l2};
}

}  // namespace hc
