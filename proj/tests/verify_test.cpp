#include <doctest.h>

#include <cmath>

#include "hc/errors.hpp"
#include "hc/expr.hpp"
#include "hc/interval.hpp"
#include "hc/verify.hpp"
#include "support.hpp"

using namespace hc;

namespace {

const Rectangle unit = Rectangle::unit();

const InequalityCase& find(const std::vector<InequalityCase>& cases, const std::string& name) {
  for (const auto& c : cases) {
    if (c.name == name) return c;
  }
  FAIL("missing case " << name);
  return cases.front();
}

}  // namespace

TEST_CASE("co-ordinated convexity classifier") {
  CHECK(check_coordinated_convexity(builtin("linear"), unit, 10000, 1).holds);
  CHECK(check_coordinated_convexity(builtin("prodconvex"), unit, 10000, 1).holds);
  CHECK(check_coordinated_convexity(builtin("cone"), unit, 10000, 1).holds);

  const auto wiggle = check_coordinated_convexity(builtin("wiggle"), unit, 10000, 7);
  CHECK_FALSE(wiggle.holds);
  CHECK(wiggle.worst_violation > 0.1);
  CHECK(convexity_violation(builtin("wiggle"), wiggle.witness) == wiggle.worst_violation);

  // Regression fixture: sin 5x is concave on [0, pi/5], so blending x = 0
  // and x = 0.6 at t = 1/2 with u = w = 0.3 violates the inequality.
  const ConvexityWitness fixed{0.5, 0.5, 0.0, 0.6, 0.3, 0.3};
  const double v = convexity_violation(builtin("wiggle"), fixed);
  CHECK(v == doctest::Approx(std::sin(1.5) * std::sin(1.5) - 0.5 * std::sin(3.0) * std::sin(1.5)));
  CHECK(v > 0);
}

TEST_CASE("chain on affine and constant functions") {
  Oracle lin(builtin("linear"));
  const ChainResult chain = verify_hadamard_chain(lin, "linear", unit);
  for (double term : chain.terms) CHECK(term == doctest::Approx(1.0).epsilon(1e-15));
  for (const auto& c : chain.cases) {
    CHECK(c.holds);
    CHECK(std::abs(c.slack) <= 1e-12);
  }

  Oracle three([](double, double) { return 3.0; });
  const ChainResult flat = verify_hadamard_chain(three, "three", Rectangle(-1, 2, 4, 9));
  for (double term : flat.terms) CHECK(term == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("chain on random convex cones") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Rectangle rect = draw_rectangle(seed);
    const ConeWitness w = random_cone(draw_cone_spec(rect, 3, seed));
    Oracle oracle(w.expr, w.kinks, 4, 64);
    const ChainResult chain = verify_hadamard_chain(oracle, "cone", rect);
    for (const auto& c : chain.cases) CHECK(c.slack >= -violation_tolerance);
    CHECK(oracle.max_gap() < oracle_tolerance);
  }
}

TEST_CASE("cone is tight for the midpoint bound") {
  Oracle oracle(builtin("cone"), Kinks{{0.5}, {0.5}});
  const auto cases = verify_lipschitz_bounds(oracle, "cone", LipschitzConstants::pairwise(1, 1), unit);
  const auto& eq1 = find(cases, "eq1");
  CHECK(eq1.lhs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(eq1.rhs == 0.5);
  CHECK(std::abs(eq1.slack) <= 1e-6);
  CHECK(find(cases, "eq3").lhs == 1.0);
  CHECK(find(cases, "eq3").rhs == 1.0);
  for (const auto& c : cases) CHECK(c.holds);

  Oracle zero([](double, double) { return 2.0; });
  for (const auto& c : verify_lipschitz_bounds(zero, "const", LipschitzConstants::pairwise(0, 0), unit)) {
    CHECK(c.lhs == 0);
    CHECK(c.rhs == 0);
    CHECK(c.holds);
  }
}

TEST_CASE("H properties on the cone") {
  Oracle oracle(builtin("cone"), Kinks{{0.5}, {0.5}});
  const auto cases = verify_h_properties(oracle, "cone", 1, 1, unit, unit_grid(5));
  CHECK(cases.size() == 25 * 4 + 24);
  for (const auto& c : cases) {
    if (is_gating(c.name)) CHECK(c.slack >= -violation_tolerance);
  }
  CHECK(unit_grid(3).size() == 9);
  CHECK(unit_grid(3)[1] == UnitPair(0, 0.5));
}

TEST_CASE("1-D degenerate bounds") {
  const auto cases = verify_1d_degenerate([](double x) { return std::abs(x - 0.5); }, "abs", 1, 0, 1, {0.5});
  const auto& mid = find(cases, "1d-mid");
  CHECK(mid.lhs == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(mid.rhs == 0.25);
  CHECK(std::abs(mid.slack) <= 1e-6);
  CHECK(find(cases, "1d-trap").holds);

  for (const auto& c : verify_1d_degenerate([](double) { return 4.0; }, "const", 0, -1, 3)) {
    CHECK(c.lhs == 0);
  }
}

TEST_CASE("random cone witnesses") {
  const ConeWitness empty = random_cone({});
  CHECK(empty.l1 == 0);
  CHECK(empty.l2 == 0);
  CHECK(empty.expr(0.3, -7) == 0);

  const ConeWitness single = random_cone({{{1, 1, 1, 0.5, 0.5}}});
  CHECK(single.expr == builtin("cone"));
  CHECK(single.l1 == 1);
  CHECK(single.l2 == 1);

  const Rectangle rect = draw_rectangle(42);
  const RandomConeSpec spec = draw_cone_spec(rect, 3, 42);
  const ConeWitness w = random_cone(spec);
  double l1 = 0, l2 = 0;
  for (const auto& t : spec.terms) {
    l1 += t.c * t.alpha;
    l2 += t.c * t.beta;
  }
  CHECK(w.l1 == l1);
  CHECK(w.l2 == l2);
  const auto cert = certified_lipschitz(w.expr, rect, 16);
  CHECK(cert.first >= w.l1);
  CHECK(cert.second >= w.l2);
  CHECK(cert.first <= w.l1 + 1e-6);
  CHECK(cert.second <= w.l2 + 1e-6);

  CHECK_THROWS_AS(random_cone({{{-1, 1, 1, 0, 0}}}), InvalidSpec);
  CHECK_THROWS_AS(random_cone({{{1, NAN, 1, 0, 0}}}), InvalidSpec);
  CHECK_THROWS_AS(random_cone({{{1, 1, 1, INFINITY, 0}}}), InvalidSpec);

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Rectangle r = draw_rectangle(seed);
    CHECK(r.width() >= 0.1 - 1e-12);
    CHECK(r.width() <= 10 + 1e-12);
    CHECK(r.height() >= 0.1 - 1e-12);
    CHECK(r.height() <= 10 + 1e-12);
    CHECK(r.a() >= -5);
    CHECK(r.a() <= 5);
  }
}

TEST_CASE("small suite is clean and deterministic") {
  SuiteConfig cfg;
  cfg.seed = 3;
  cfg.lipschitz_trials = 40;
  cfg.chain_trials = 10;
  cfg.h_functions = 2;
  cfg.h_grid = 3;
  cfg.oned_trials = 10;
  cfg.convexity_samples = 500;
  const Report a = run_suite(cfg);
  const Report b = run_suite(cfg);
  CHECK(a.violations == 0);
  CHECK(report_json(a) == report_json(b));
  CHECK(report_csv(a) == report_csv(b));
  CHECK(a.max_oracle_gap < oracle_tolerance);

  bool wiggle_flagged = false;
  for (const auto& c : a.cases) {
    if (c.name == "convexity" && c.function == "wiggle") wiggle_flagged = !c.holds;
  }
  CHECK(wiggle_flagged);

  cfg.seed = 4;
  CHECK(report_json(run_suite(cfg)) != report_json(a));
}

TEST_CASE("json quoting") {
  CHECK(json_quote("a\"b\\c\n") == "\"a\\\"b\\\\c\\n\"");
}
