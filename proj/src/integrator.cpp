#include "hc/integrator.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "hc/errors.hpp"
#include "hc/numeric.hpp"

namespace hc {

Rule parse_rule(std::string_view name) {
  if (name == "midpoint") return Rule::Midpoint;
  if (name == "corner") return Rule::Corner;
  throw std::invalid_argument("unknown rule '" + std::string(name) + "' (expected midpoint or corner)");
}

std::string_view rule_name(Rule rule) { return rule == Rule::Midpoint ? "midpoint" : "corner"; }

namespace {

struct PointHash {
  std::size_t operator()(const std::pair<double, double>& p) const noexcept {
    const auto hx = std::bit_cast<std::uint64_t>(p.first);
    const auto hy = std::bit_cast<std::uint64_t>(p.second);
    return static_cast<std::size_t>(hx * 0x9e3779b97f4a7c15ULL ^ (hy + 0x7f4a7c159e3779b9ULL + (hx << 6)));
  }
};

// Evaluates rule values, sharing corner evaluations between neighbouring
// cells. Children reuse their parent's coordinates verbatim, so exact keys
// find every shared corner.
class CellEvaluator {
 public:
  CellEvaluator(const Function2D& f, const LipschitzConstants& lip, Rule rule) : f_(f), lip_(lip), rule_(rule) {}

  Cell make(const Rectangle& rect, std::size_t index) {
    if (rule_ == Rule::Midpoint) {
      ++evaluations_;
      return {rect, f_(rect.center_x(), rect.center_y()), midpoint_mean_bound(rect, lip_), index};
    }
    const double avg = (corner(rect.a(), rect.c()) + corner(rect.a(), rect.d()) + corner(rect.b(), rect.c()) +
                        corner(rect.b(), rect.d())) /
                       4;
    return {rect, avg, corner_mean_bound(rect, lip_), index};
  }

  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  double corner(double x, double y) {
    const auto [it, inserted] = cache_.try_emplace({x, y}, 0.0);
    if (inserted) {
      ++evaluations_;
      it->second = f_(x, y);
    }
    return it->second;
  }

  const Function2D& f_;
  const LipschitzConstants& lip_;
  Rule rule_;
  std::size_t evaluations_ = 0;
  std::unordered_map<std::pair<double, double>, double, PointHash> cache_;
};

double contribution(const Cell& cell) { return cell.rect.area() * cell.bound; }

}  // namespace

CertifiedResult integrate_certified(const Function2D& f, const Rectangle& rect, const LipschitzConstants& lip,
                                    double tol, Rule rule, std::size_t max_cells) {
  if (!(tol > 0) || !std::isfinite(tol)) throw InvalidTolerance("tolerance must be finite and positive");
  if (rect.degenerate()) throw std::invalid_argument("certified integration needs a nondegenerate rectangle");
  if (max_cells == 0) throw std::invalid_argument("max_cells must be positive");

  CellEvaluator evaluator(f, lip, rule);
  std::vector<Cell> cells;
  std::vector<bool> is_leaf;
  std::size_t leaves = 0;

  // Worst cell on top; equal priority goes to the lower index.
  auto worse = [&cells](std::size_t lhs, std::size_t rhs) {
    const double pl = contribution(cells[lhs]);
    const double pr = contribution(cells[rhs]);
    if (pl != pr) return pl < pr;
    return lhs > rhs;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> queue(worse);

  auto add_cell = [&](const Rectangle& r) {
    const std::size_t index = cells.size();
    cells.push_back(evaluator.make(r, index));
    is_leaf.push_back(true);
    queue.push(index);
    ++leaves;
  };

  // Total over leaves in index order; deterministic by construction.
  auto leaf_sum = [&](auto&& term) {
    CompensatedSum sum;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (is_leaf[i]) sum.add(term(cells[i]));
    }
    return sum.value();
  };

  add_cell(rect);
  CompensatedSum running;
  running.add(contribution(cells[0]));

  double total = running.value();
  while (total > tol && leaves < max_cells) {
    while (total > tol && leaves < max_cells) {
      const std::size_t worst = queue.top();
      queue.pop();
      const Rectangle r = cells[worst].rect;
      is_leaf[worst] = false;
      --leaves;
      running.add(-contribution(cells[worst]));

      const bool split_x = lip.m1() * r.width() >= lip.m2() * r.height();
      if (split_x) {
        const double mid = (r.a() + r.b()) / 2;
        add_cell({r.a(), mid, r.c(), r.d()});
        add_cell({mid, r.b(), r.c(), r.d()});
      } else {
        const double mid = (r.c() + r.d()) / 2;
        add_cell({r.a(), r.b(), r.c(), mid});
        add_cell({r.a(), r.b(), mid, r.d()});
      }
      running.add(contribution(cells[cells.size() - 2]));
      running.add(contribution(cells[cells.size() - 1]));
      total = running.value();
    }
    // The running total drifts under repeated subtraction; resynchronise with
    // the exact ordered sum before deciding to stop.
    total = leaf_sum(contribution);
    running = CompensatedSum();
    running.add(total);
  }

  const double error_bound = leaf_sum(contribution);
  const double estimate = leaf_sum([](const Cell& c) { return c.rect.area() * c.estimate; });
  return {estimate, error_bound, leaves, evaluator.evaluations(), error_bound <= tol};
}

double uniform_grid_bound(const Rectangle& rect, const LipschitzConstants& lip, int k, Rule rule) {
  if (k < 1) throw std::invalid_argument("uniform grid needs k >= 1");
  const double denom = rule == Rule::Midpoint ? 16 : 12;
  return rect.area() * (lip.m1() * rect.width() / k + lip.m2() * rect.height() / k) / denom;
}

}  // namespace hc
