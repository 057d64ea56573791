#pragma once

// Adaptive certified cubature. Each cell carries a rule value (center value
// or corner average) and the matching Hadamard-type bound on |rule - mean|;
// the area-weighted sum of the cell bounds is a guaranteed bound on the
// integration error whenever the Lipschitz constants are valid for f.

#include <cstddef>
#include <string_view>

#include "hc/core.hpp"
#include "hc/quad.hpp"

namespace hc {

enum class Rule { Midpoint, Corner };

/// "midpoint" or "corner"; throws std::invalid_argument otherwise.
Rule parse_rule(std::string_view name);
std::string_view rule_name(Rule rule);

struct Cell {
  Rectangle rect;
  double estimate;  // rule value (a mean estimate)
  double bound;     // per-cell bound on |estimate - mean of f over rect|
  std::size_t index;
};

struct CertifiedResult {
  double estimate;
  double error_bound;
  std::size_t cells;
  std::size_t evaluations;
  bool converged;
};

inline constexpr std::size_t default_max_cells = 65536;

/// Refines worst-first (largest area x bound, ties to the older cell), bisecting
/// along the axis with the larger M_i x extent (ties to x), until the total
/// bound is at most `tol` or `max_cells` cells exist. Hitting the cell cap is
/// reported through `converged`, not an exception.
///
/// Throws InvalidTolerance unless tol is finite and positive, and
/// std::invalid_argument for a degenerate rectangle or max_cells == 0.
/// Evaluation errors of f propagate.
CertifiedResult integrate_certified(const Function2D& f, const Rectangle& rect, const LipschitzConstants& lip,
                                    double tol, Rule rule = Rule::Midpoint,
                                    std::size_t max_cells = default_max_cells);

/// Total bound of a uniform k x k split: area (M1 w/k + M2 h/k) / denom with
/// denom 16 (midpoint) or 12 (corner).
double uniform_grid_bound(const Rectangle& rect, const LipschitzConstants& lip, int k, Rule rule);

}  // namespace hc
