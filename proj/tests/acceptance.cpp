// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Means are compared against closed forms from support.hpp, not against the
// quadrature under test, wherever a closed form exists.

#include <fmt/core.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hc/cli.hpp"
#include "hc/errors.hpp"
#include "hc/expr.hpp"
#include "hc/integrator.hpp"
#include "hc/interval.hpp"
#include "hc/numeric.hpp"
#include "hc/quad.hpp"
#include "hc/verify.hpp"
#include "parser_fixtures.hpp"
#include "support.hpp"

using namespace hc;

namespace {

constexpr std::uint64_t base_seed = 20240607;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Seeds for criterion `id`, trial `i`.
std::uint64_t seed_for(std::uint64_t id, std::uint64_t i) { return Rng::derive(base_seed, id, i); }

ConeWitness trial_cone(std::uint64_t seed, const Rectangle& rect, RandomConeSpec* spec_out = nullptr) {
  Rng rng(seed);
  const int terms = rng.integer(1, 5);
  RandomConeSpec spec = draw_cone_spec(rect, terms, seed ^ 0x5bd1e995ULL);
  if (spec_out) *spec_out = spec;
  return random_cone(spec);
}

Outcome soundness_sweep() {
  const auto start = std::chrono::steady_clock::now();
  const int trials = 500;
  int failures = 0;
  double worst = INFINITY, gap = 0;
  for (int i = 0; i < trials; ++i) {
    const Rectangle rect = draw_rectangle(seed_for(1, i));
    const ConeWitness w = trial_cone(seed_for(11, i), rect);
    Oracle oracle(w.expr, w.kinks, 4, 64);
    const auto lip = LipschitzConstants::pairwise(w.l1, w.l2);
    for (const auto& c : verify_lipschitz_bounds(oracle, "cone", lip, rect)) {
      worst = std::min(worst, c.slack);
      if (c.slack < -violation_tolerance) ++failures;
    }
    gap = std::max(gap, oracle.max_gap());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = failures == 0 && gap < oracle_tolerance && secs < 60;
  return {pass, fmt::format("{} trials x 3 bounds, failures {}, min slack {:.3g}, oracle gap {:.3g}, {:.2f} s", trials,
                            failures, worst, gap, secs)};
}

Outcome hadamard_chain() {
  int failures = 0;
  double worst = INFINITY;
  for (int i = 0; i < 100; ++i) {
    const Rectangle rect = draw_rectangle(seed_for(2, i));
    const ConeWitness w = trial_cone(seed_for(21, i), rect);
    Oracle oracle(w.expr, w.kinks, 4, 64);
    for (const auto& c : verify_hadamard_chain(oracle, "cone", rect).cases) {
      worst = std::min(worst, c.slack);
      if (c.slack < -violation_tolerance) ++failures;
    }
  }
  Oracle lin(builtin("linear"));
  const ChainResult chain = verify_hadamard_chain(lin, "linear", Rectangle::unit());
  double spread = 0;
  for (double t : chain.terms) spread = std::max(spread, std::abs(t - chain.terms[0]));
  return {failures == 0 && spread <= 1e-12,
          fmt::format("100 cones, failures {}, min slack {:.3g}; affine spread {:.3g}", failures, worst, spread)};
}

Outcome tightness() {
  Oracle lin(builtin("linear"));
  double affine = 0;
  for (const auto& c : verify_hadamard_chain(lin, "linear", Rectangle::unit()).cases) {
    affine = std::max(affine, std::abs(c.slack));
  }
  Oracle cone(builtin("cone"), Kinks{{0.5}, {0.5}});
  const auto cases = verify_lipschitz_bounds(cone, "cone", LipschitzConstants::pairwise(1, 1), Rectangle::unit());
  const InequalityCase& eq1 = cases.front();
  const auto oned = verify_1d_degenerate([](double x) { return std::abs(x - 0.5); }, "abs", 1, 0, 1, {0.5});
  const InequalityCase& mid = oned.back().name == "1d-mid" ? oned.back() : oned.front();
  const bool a = affine <= 1e-12;
  const bool b = eq1.name == "eq1" && std::abs(eq1.lhs - 0.5) <= 1e-6 && eq1.rhs == 0.5 && std::abs(eq1.slack) <= 1e-6;
  const bool c = mid.name == "1d-mid" && std::abs(mid.lhs - 0.25) <= 1e-6 && std::abs(mid.slack) <= 1e-6;
  return {a && b && c, fmt::format("(a) affine |slack| {:.3g}; (b) eq1 lhs {:.12g} rhs {} slack {:.3g}; "
                                   "(c) 1d-mid lhs {:.12g} slack {:.3g}",
                                   affine, eq1.lhs, eq1.rhs, eq1.slack, mid.lhs, mid.slack)};
}

Outcome h_map() {
  int failures = 0, endpoint_failures = 0;
  double worst = INFINITY, endpoint = 0;
  const auto grid = unit_grid(9);
  for (int i = 0; i < 20; ++i) {
    const Rectangle rect = draw_rectangle(seed_for(4, i));
    RandomConeSpec spec;
    const ConeWitness w = trial_cone(seed_for(41, i), rect, &spec);
    Oracle oracle(w.expr, w.kinks, 4, 64);
    for (const auto& c : verify_h_properties(oracle, "cone", w.l1, w.l2, rect, grid)) {
      if (!is_gating(c.name)) continue;
      worst = std::min(worst, c.slack);
      if (c.slack < -violation_tolerance) ++failures;
    }
    const double h00 = oracle.h(rect, UnitPair(0, 0));
    const double h11 = oracle.h(rect, UnitPair(1, 1));
    const double e0 = std::abs(h00 - w.expr(rect.center_x(), rect.center_y()));
    const double e1 = std::abs(h11 - test::cone_mean(spec, rect));
    endpoint = std::max({endpoint, e0, e1});
    if (e0 > 1e-10 || e1 > 1e-10) ++endpoint_failures;
  }
  return {failures == 0 && endpoint_failures == 0,
          fmt::format("20 cones x 81 grid points, failures {}, min slack {:.3g}; endpoint error {:.3g}", failures,
                      worst, endpoint)};
}

Outcome integrator_soundness() {
  const std::vector<std::string> smooth{"linear", "prodconvex", "sincos", "wiggle"};
  const std::size_t caps[] = {16, 64, 256, 1024};
  int failures = 0, trials = 0;
  double worst = INFINITY;
  for (int i = 0; i < 600; ++i) {
    const Rectangle rect = draw_rectangle(seed_for(5, i));
    const Rule rule = i % 2 ? Rule::Corner : Rule::Midpoint;
    const std::size_t cap = caps[(i / 2) % 4];
    Function2D f;
    LipschitzConstants lip = LipschitzConstants::pairwise(0, 0);
    double exact;
    if (i % 3 == 0) {
      const std::string& name = smooth[(i / 3) % smooth.size()];
      const Expr e = builtin(name);
      const auto [l1, l2] = certified_lipschitz(e, rect, 16);
      f = e;
      lip = LipschitzConstants::pairwise(l1, l2);
      exact = test::builtin_mean(name, rect) * rect.area();
    } else {
      RandomConeSpec spec;
      const ConeWitness w = trial_cone(seed_for(51, i), rect, &spec);
      f = w.expr;
      lip = LipschitzConstants::pairwise(w.l1, w.l2);
      exact = test::cone_mean(spec, rect) * rect.area();
    }
    const CertifiedResult r = integrate_certified(f, rect, lip, 1e-9, rule, cap);
    const double margin = r.error_bound + 1e-8 - std::abs(r.estimate - exact);
    worst = std::min(worst, margin);
    if (margin < 0) ++failures;
    ++trials;
  }
  return {failures == 0,
          fmt::format("{} trials, failures {}, min (bound + 1e-8 - error) {:.3g}", trials, failures, worst)};
}

Outcome integrator_scaling() {
  const Expr cone = builtin("cone");
  const auto lip = LipschitzConstants::pairwise(1, 1);
  const auto bound = [&](std::size_t cap) {
    return integrate_certified(cone, Rectangle::unit(), lip, 1e-12, Rule::Midpoint, cap).error_bound;
  };
  const double b256 = bound(256), b1024 = bound(1024), b4096 = bound(4096);
  const double r1 = b256 / b1024, r2 = b1024 / b4096;
  bool monotone = true;
  double prev = INFINITY;
  for (std::size_t cap = 1; cap <= 4096; ++cap) {
    const double b = bound(cap);
    if (b > prev) monotone = false;
    prev = b;
    if (cap >= 64) cap += cap / 8;  // sample more sparsely once the curve is smooth
  }
  return {r1 >= 1.8 && r2 >= 1.8 && monotone,
          fmt::format("bounds {:.6g}, {:.6g}, {:.6g}; ratios {:.3f}, {:.3f}; monotone {}", b256, b1024, b4096, r1, r2,
                      monotone)};
}

Outcome interval_soundness() {
  int dominance = 0, monotone = 0, cones = 0;
  const auto& corpus = test::expression_corpus();
  for (const auto& entry : corpus) {
    const Expr e = parse(entry.text);
    const auto cert = certified_lipschitz(e, entry.rect, 16);
    const auto s = test::sample_slopes(e, entry.rect, 100);
    if (s.l1 > cert.first + s.slack1 || s.l2 > cert.second + s.slack2) {
      ++dominance;
      fmt::print("  dominance failure: {}\n", entry.text);
    }
    std::pair<double, double> prev{INFINITY, INFINITY};
    for (int k : {4, 8, 16, 32}) {
      const auto cur = certified_lipschitz(e, entry.rect, k);
      if (cur.first > prev.first || cur.second > prev.second) ++monotone;
      prev = cur;
    }
  }
  for (int i = 0; i < 100; ++i) {
    const Rectangle rect = draw_rectangle(seed_for(7, i));
    const ConeWitness w = trial_cone(seed_for(71, i), rect);
    const auto [l1, l2] = certified_lipschitz(w.expr, rect, 16);
    if (l1 < w.l1 || l2 < w.l2 || l1 > w.l1 + 1e-6 || l2 > w.l2 + 1e-6) ++cones;
  }
  return {dominance == 0 && monotone == 0 && cones == 0,
          fmt::format("{} corpus expressions: dominance failures {}, refinement failures {}; 100 cones outside "
                      "[exact, exact+1e-6]: {}",
                      corpus.size(), dominance, monotone, cones)};
}

Outcome parser() {
  int precedence = 0, roundtrip = 0, malformed = 0;
  const auto& rows = test::precedence_corpus();
  for (const auto& row : rows) {
    if (evaluate(parse(row.text), row.x, row.y) != row.value) ++precedence;
  }
  const auto texts = test::roundtrip_corpus();
  for (const auto& text : texts) {
    const Expr e = parse(text);
    if (!(parse(to_string(e)) == e)) ++roundtrip;
  }
  for (const auto& row : test::malformed_corpus()) {
    try {
      parse(row.text);
      ++malformed;
    } catch (const ParseError& err) {
      if (err.position() != row.position) ++malformed;
    }
  }
  return {rows.size() >= 20 && precedence == 0 && roundtrip == 0 && malformed == 0,
          fmt::format("precedence {}/{} exact, round-trip {}/{}, malformed {}/{} at the right offset",
                      rows.size() - precedence, rows.size(), texts.size() - roundtrip, texts.size(),
                      test::malformed_corpus().size() - malformed, test::malformed_corpus().size())};
}

std::string verify_json(const char* threads) {
  if (threads) {
    ::setenv("HC_THREADS", threads, 1);
  } else {
    ::unsetenv("HC_THREADS");
  }
  std::ostringstream out, err;
  const int code = run_cli({"verify", "--seed", "7", "--format", "json"}, out, err);
  if (code != kExitOk) return "exit " + std::to_string(code) + ": " + err.str();
  return out.str();
}

Outcome determinism() {
  const char* saved = std::getenv("HC_THREADS");
  const std::string saved_value = saved ? saved : "";
  const std::string first = verify_json(saved ? saved_value.c_str() : nullptr);
  const std::string second = verify_json(saved ? saved_value.c_str() : nullptr);
  const std::string one = verify_json("1");
  const std::string eight = verify_json("8");
  verify_json(saved ? saved_value.c_str() : nullptr);
  const bool ok = first.rfind("{", 0) == 0 && first == second && one == eight && first == one;
  return {ok, fmt::format("{} bytes; repeat identical {}, HC_THREADS=1 vs 8 identical {}", first.size(),
                          first == second, one == eight)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "inequality soundness sweep", soundness_sweep},
      {2, "hadamard chain", hadamard_chain},
      {3, "tightness witnesses", tightness},
      {4, "H-map properties", h_map},
      {5, "certified integrator soundness", integrator_soundness},
      {6, "integrator scaling", integrator_scaling},
      {7, "interval lipschitz soundness", interval_soundness},
      {8, "parser", parser},
      {9, "determinism", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    fmt::print("[{}] criterion {}: {} -- {}\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
