#pragma once

// Numerical verification of the Hadamard-type inequalities: every case
// compares a measured gap (lhs) against its closed-form bound (rhs) and
// reports the slack rhs - lhs.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hc/core.hpp"
#include "hc/expr.hpp"
#include "hc/quad.hpp"

namespace hc {

/// Slack below which an inequality counts as violated. The oracle means
/// feeding lhs are required to be self-consistent far below this.
inline constexpr double violation_tolerance = 1e-8;
inline constexpr double oracle_tolerance = 1e-10;

struct InequalityCase {
  std::string name;
  std::string function;
  Rectangle rect;
  double lhs;
  double rhs;
  double slack;  // rhs - lhs
  bool holds;    // slack >= -violation_tolerance
};

InequalityCase make_case(std::string name, std::string function, const Rectangle& rect, double lhs, double rhs);

/// Whether a case name is an unconditional claim whose failure counts as a
/// violation. Printed-form eq10 and convexity classification do not.
bool is_gating(const std::string& name);

// ---------------------------------------------------------------------------
// Oracle policy

/// Means used by the checks. Starting at n_start, the Simpson panel count
/// doubles until consecutive means agree within oracle_tolerance (or n_max
/// is reached); the largest remaining gap is tracked for reporting.
class Oracle {
 public:
  explicit Oracle(Function2D f, Kinks kinks = {}, int n_start = 256, int n_max = 4096);

  double value(double x, double y) const { return f_(x, y); }
  const Function2D& function() const noexcept { return f_; }
  double mean(const Rectangle& rect);
  double line_mean_x(const Rectangle& rect, double y0);
  double line_mean_y(const Rectangle& rect, double x0);
  double h(const Rectangle& rect, const UnitPair& ts) { return mean(shrink_toward_center(rect, ts)); }

  double max_gap() const noexcept { return max_gap_; }

 private:
  Function2D f_;
  Kinks kinks_;
  int n_start_;
  int n_max_;
  double max_gap_ = 0;
};

// ---------------------------------------------------------------------------
// Co-ordinated convexity

struct ConvexityWitness {
  double t, s, x, y, u, w;
};

struct ConvexityResult {
  bool holds;
  double worst_violation;  // max of lhs - rhs over samples (<= 1e-12 when holds)
  ConvexityWitness witness;  // tuple attaining worst_violation
};

inline constexpr double convexity_tolerance = 1e-12;

/// Samples t, s in [0,1], x, y in [a,b], u, w in [c,d] and checks
///   f(tx + (1-t)y, su + (1-s)w)
///     <= ts f(x,u) + s(1-t) f(y,u) + t(1-s) f(x,w) + (1-t)(1-s) f(y,w) + 1e-12.
ConvexityResult check_coordinated_convexity(const Function2D& f, const Rectangle& rect, int samples,
                                            std::uint64_t seed);

/// Signed violation lhs - rhs of the co-ordinated convexity inequality at one tuple.
double convexity_violation(const Function2D& f, const ConvexityWitness& w);

// ---------------------------------------------------------------------------
// Inequality checks

struct ChainResult {
  // f(center), half-sum of the two center line means, mean, quarter-sum of
  // the four edge line means, corner average.
  std::array<double, 5> terms;
  std::array<InequalityCase, 4> cases;  // terms[i] <= terms[i+1]
};

/// The co-ordinated Hermite-Hadamard chain. Only meaningful for co-ordinated
/// convex f.
ChainResult verify_hadamard_chain(Oracle& oracle, const std::string& label, const Rectangle& rect);

/// eq1 |f(center) - mean|, eq3 |corner avg - f(center)|, eq11 |corner avg - mean|.
std::vector<InequalityCase> verify_lipschitz_bounds(Oracle& oracle, const std::string& label,
                                                    const LipschitzConstants& lip, const Rectangle& rect);

/// Per grid point: eq6, eq7, eq10 (proof form) and eq10-printed; per
/// consecutive grid pair: eq9.
std::vector<InequalityCase> verify_h_properties(Oracle& oracle, const std::string& label, double l1, double l2,
                                                const Rectangle& rect, const std::vector<UnitPair>& grid);

/// Regular k x k grid over [0,1]^2 in row-major order (t outer).
std::vector<UnitPair> unit_grid(int k);

using Function1D = std::function<double(double)>;

/// Embeds f1 as f(x, y) = f1(x) on [a,b] x [0,0] and checks 1d-trap and 1d-mid.
std::vector<InequalityCase> verify_1d_degenerate(const Function1D& f1, const std::string& label, double lip,
                                                 double a, double b, const std::vector<double>& kinks = {},
                                                 int n = 256);

// ---------------------------------------------------------------------------
// Random Lipschitz witnesses

/// f(x,y) = sum_i c_i (alpha_i |x - p_i| + beta_i |y - q_i|).
struct RandomConeSpec {
  struct Term {
    double c, alpha, beta, p, q;
  };
  std::vector<Term> terms;
};

struct ConeWitness {
  Expr expr;
  double l1;  // exact sum c_i alpha_i
  double l2;  // exact sum c_i beta_i
  Kinks kinks;
};

/// Throws InvalidSpec if any coefficient or weight is negative or non-finite.
ConeWitness random_cone(const RandomConeSpec& spec);

/// Draws a spec with `terms` terms, coefficients and weights in [0, 1] and
/// apexes inside rect.
RandomConeSpec draw_cone_spec(const Rectangle& rect, int terms, std::uint64_t seed);

/// Rectangle with log-uniform width and height in [0.1, 10] and lower-left
/// corner in [-5, 5]^2.
Rectangle draw_rectangle(std::uint64_t seed);

// ---------------------------------------------------------------------------
// Suite

struct SuiteConfig {
  std::uint64_t seed = 0;
  int oracle_n = 256;
  int subdivisions = 16;
  int lipschitz_trials = 500;
  int chain_trials = 100;
  int h_functions = 20;
  int h_grid = 5;
  int oned_trials = 100;
  int convexity_samples = 10000;
  std::vector<std::string> builtins = builtin_names();
  std::vector<std::string> convexity_functions = builtin_names();
};

struct Report {
  std::uint64_t seed;
  std::vector<InequalityCase> cases;
  int violations;
  double max_oracle_gap;
};

Report run_suite(const SuiteConfig& config);

/// {"seed": ..., "cases": [...], "violations": ...} with 17 significant digits.
std::string report_json(const Report& report);
/// JSON string literal for `s`, quotes included.
std::string json_quote(const std::string& s);

/// Header plus one row per case: name,function,a,b,c,d,lhs,rhs,slack,holds.
std::string report_csv(const Report& report);

}  // namespace hc
