#include "hc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

#include <fmt/format.h>

#include "hc/errors.hpp"
#include "hc/interval.hpp"
#include "hc/numeric.hpp"
#include "hc/parallel.hpp"

namespace hc {

InequalityCase make_case(std::string name, std::string function, const Rectangle& rect, double lhs, double rhs) {
  const double slack = rhs - lhs;
  return {std::move(name), std::move(function), rect, lhs, rhs, slack, slack >= -violation_tolerance};
}

bool is_gating(const std::string& name) { return name != "eq10-printed" && name != "convexity"; }

// ---------------------------------------------------------------------------
// Oracle

Oracle::Oracle(Function2D f, Kinks kinks, int n_start, int n_max)
    : f_(std::move(f)), kinks_(std::move(kinks)), n_start_(n_start), n_max_(std::max(n_start, n_max)) {}

double Oracle::mean(const Rectangle& rect) {
  // A degenerate axis is a single node, so only the other axis refines.
  const OracleMean m = refined_mean(f_, rect, n_start_, n_max_, oracle_tolerance, kinks_);
  max_gap_ = std::max(max_gap_, m.gap);
  return m.value;
}

double Oracle::line_mean_x(const Rectangle& rect, double y0) {
  return mean(Rectangle(rect.a(), rect.b(), y0, y0));
}

double Oracle::line_mean_y(const Rectangle& rect, double x0) {
  return mean(Rectangle(x0, x0, rect.c(), rect.d()));
}

// ---------------------------------------------------------------------------
// Co-ordinated convexity

double convexity_violation(const Function2D& f, const ConvexityWitness& w) {
  const double lhs = f(w.t * w.x + (1 - w.t) * w.y, w.s * w.u + (1 - w.s) * w.w);
  const double rhs = w.t * w.s * f(w.x, w.u) + w.s * (1 - w.t) * f(w.y, w.u) + w.t * (1 - w.s) * f(w.x, w.w) +
                     (1 - w.t) * (1 - w.s) * f(w.y, w.w);
  return lhs - rhs;
}

ConvexityResult check_coordinated_convexity(const Function2D& f, const Rectangle& rect, int samples,
                                            std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("convexity check needs at least one sample");
  Rng rng(seed);
  ConvexityResult result{true, -std::numeric_limits<double>::infinity(), {}};
  for (int i = 0; i < samples; ++i) {
    ConvexityWitness w{};
    w.t = rng.uniform();
    w.s = rng.uniform();
    w.x = rng.uniform(rect.a(), rect.b());
    w.y = rng.uniform(rect.a(), rect.b());
    w.u = rng.uniform(rect.c(), rect.d());
    w.w = rng.uniform(rect.c(), rect.d());
    const double v = convexity_violation(f, w);
    if (v > result.worst_violation) {
      result.worst_violation = v;
      result.witness = w;
    }
  }
  result.holds = result.worst_violation <= convexity_tolerance;
  return result;
}

// ---------------------------------------------------------------------------
// Inequality checks

ChainResult verify_hadamard_chain(Oracle& oracle, const std::string& label, const Rectangle& rect) {
  const double cx = rect.center_x();
  const double cy = rect.center_y();
  std::array<double, 5> terms{};
  terms[0] = oracle.value(cx, cy);
  terms[1] = (oracle.line_mean_x(rect, cy) + oracle.line_mean_y(rect, cx)) / 2;
  terms[2] = oracle.mean(rect);
  terms[3] = (oracle.line_mean_x(rect, rect.c()) + oracle.line_mean_x(rect, rect.d()) +
              oracle.line_mean_y(rect, rect.a()) + oracle.line_mean_y(rect, rect.b())) /
             4;
  terms[4] = corner_average(oracle.function(), rect);
  auto link = [&](std::size_t i) {
    return make_case("chain" + std::to_string(i + 1), label, rect, terms[i], terms[i + 1]);
  };
  ChainResult out{terms, {link(0), link(1), link(2), link(3)}};
  return out;
}

std::vector<InequalityCase> verify_lipschitz_bounds(Oracle& oracle, const std::string& label,
                                                    const LipschitzConstants& lip, const Rectangle& rect) {
  const double mid = midpoint_value(oracle.function(), rect);
  const double corners = corner_average(oracle.function(), rect);
  const double mean = oracle.mean(rect);
  return {
      make_case("eq1", label, rect, std::abs(mid - mean), midpoint_mean_bound(rect, lip)),
      make_case("eq3", label, rect, std::abs(corners - mid), corner_midpoint_bound(rect, lip)),
      make_case("eq11", label, rect, std::abs(corners - mean), corner_mean_bound(rect, lip)),
  };
}

std::vector<InequalityCase> verify_h_properties(Oracle& oracle, const std::string& label, double l1, double l2,
                                                const Rectangle& rect, const std::vector<UnitPair>& grid) {
  const LipschitzConstants lip = LipschitzConstants::pairwise(l1, l2);
  const double mid = midpoint_value(oracle.function(), rect);
  const double mean = oracle.mean(rect);
  const auto [mod_t, mod_s] = h_lipschitz_modulus(rect, l1, l2);

  std::vector<InequalityCase> out;
  std::vector<double> h(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const UnitPair& ts = grid[i];
    h[i] = oracle.h(rect, ts);
    const double shrunk_corners = corner_average(oracle.function(), shrink_toward_center(rect, ts));
    const double eq10_lhs = std::abs(shrunk_corners - h[i]);
    out.push_back(make_case("eq6", label, rect, std::abs(h[i] - mid), h_vs_midpoint_bound(ts, rect, l1, l2)));
    out.push_back(make_case("eq7", label, rect, std::abs(h[i] - mean), h_vs_mean_bound(ts, rect, l1, l2)));
    out.push_back(make_case("eq10", label, rect, eq10_lhs, subrectangle_corner_bound(ts, rect, lip)));
    out.push_back(
        make_case("eq10-printed", label, rect, eq10_lhs, subrectangle_corner_bound_as_printed(ts, rect, lip)));
    if (i > 0) {
      const UnitPair& prev = grid[i - 1];
      const double rhs = mod_t * std::abs(ts.t() - prev.t()) + mod_s * std::abs(ts.s() - prev.s());
      out.push_back(make_case("eq9", label, rect, std::abs(h[i] - h[i - 1]), rhs));
    }
  }
  return out;
}

std::vector<UnitPair> unit_grid(int k) {
  if (k < 2) throw std::invalid_argument("unit grid needs at least 2 points per axis");
  std::vector<UnitPair> grid;
  grid.reserve(static_cast<std::size_t>(k) * static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      grid.emplace_back(static_cast<double>(i) / (k - 1), static_cast<double>(j) / (k - 1));
    }
  }
  return grid;
}

std::vector<InequalityCase> verify_1d_degenerate(const Function1D& f1, const std::string& label, double lip,
                                                 double a, double b, const std::vector<double>& kinks, int n) {
  const Rectangle rect(a, b, 0.0, 0.0);
  Oracle oracle([f1](double x, double) { return f1(x); }, Kinks{kinks, {}}, n);
  const double mean = oracle.mean(rect);
  const double width = b - a;
  return {
      make_case("1d-trap", label, rect, std::abs((f1(a) + f1(b)) / 2 - mean), oned_trapezoid_bound(width, lip)),
      make_case("1d-mid", label, rect, std::abs(f1((a + b) / 2) - mean), oned_midpoint_bound(width, lip)),
  };
}

// ---------------------------------------------------------------------------
// Random witnesses

ConeWitness random_cone(const RandomConeSpec& spec) {
  const Expr x = Expr::variable(Var::X);
  const Expr y = Expr::variable(Var::Y);
  // Scaled |v - apex|, dropping unit scale factors.
  auto kink_term = [](const Expr& v, double apex, double scale) {
    const Expr abs = Expr::unary(UnaryOp::Abs, Expr::binary(BinaryOp::Sub, v, Expr::constant(apex)));
    return scale == 1.0 ? abs : Expr::binary(BinaryOp::Mul, Expr::constant(scale), abs);
  };

  std::optional<Expr> sum;
  CompensatedSum l1;
  CompensatedSum l2;
  Kinks kinks;
  for (const auto& term : spec.terms) {
    for (double v : {term.c, term.alpha, term.beta}) {
      if (!(v >= 0) || !std::isfinite(v)) throw InvalidSpec("cone coefficients and weights must be nonnegative");
    }
    if (!std::isfinite(term.p) || !std::isfinite(term.q)) throw InvalidSpec("cone apex must be finite");
    const double sx = term.c * term.alpha;
    const double sy = term.c * term.beta;
    const Expr piece = Expr::binary(BinaryOp::Add, kink_term(x, term.p, sx), kink_term(y, term.q, sy));
    sum = sum ? Expr::binary(BinaryOp::Add, *sum, piece) : piece;
    l1.add(sx);
    l2.add(sy);
    kinks.x.push_back(term.p);
    kinks.y.push_back(term.q);
  }
  return {sum ? *sum : Expr::constant(0.0), l1.value(), l2.value(), std::move(kinks)};
}

RandomConeSpec draw_cone_spec(const Rectangle& rect, int terms, std::uint64_t seed) {
  if (terms < 0) throw InvalidSpec("term count must be nonnegative");
  Rng rng(seed);
  RandomConeSpec spec;
  for (int i = 0; i < terms; ++i) {
    RandomConeSpec::Term t{};
    t.c = rng.uniform();
    t.alpha = rng.uniform();
    t.beta = rng.uniform();
    t.p = rng.uniform(rect.a(), rect.b());
    t.q = rng.uniform(rect.c(), rect.d());
    spec.terms.push_back(t);
  }
  return spec;
}

Rectangle draw_rectangle(std::uint64_t seed) {
  Rng rng(seed);
  const double a = rng.uniform(-5.0, 5.0);
  const double c = rng.uniform(-5.0, 5.0);
  const double w = std::pow(10.0, rng.uniform(-1.0, 1.0));
  const double h = std::pow(10.0, rng.uniform(-1.0, 1.0));
  return {a, a + w, c, c + h};
}

// ---------------------------------------------------------------------------
// Suite

namespace {

// Stream identifiers for Rng::derive; one per suite section.
enum Stream : std::uint64_t {
  kSweepRect = 1,
  kSweepCone,
  kChainRect,
  kChainCone,
  kHRect,
  kHCone,
  kOneDim,
  kConvexity,
};

struct Section {
  std::vector<InequalityCase> cases;
  double gap = 0;
};

// Runs `trial` for every index in parallel and concatenates in index order.
template <class Trial>
void run_section(int count, Report& report, Trial&& trial) {
  std::vector<Section> parts(static_cast<std::size_t>(std::max(count, 0)));
  parallel_for(parts.size(), [&](std::size_t i) { parts[i] = trial(static_cast<int>(i)); });
  for (auto& part : parts) {
    report.cases.insert(report.cases.end(), part.cases.begin(), part.cases.end());
    report.max_oracle_gap = std::max(report.max_oracle_gap, part.gap);
  }
}

struct RandomInstance {
  Rectangle rect;
  ConeWitness cone;
};

RandomInstance draw_instance(std::uint64_t seed, Stream rect_stream, Stream cone_stream, int i) {
  const auto index = static_cast<std::uint64_t>(i);
  const Rectangle rect = draw_rectangle(Rng::derive(seed, rect_stream, index));
  Rng pick(Rng::derive(seed, cone_stream, index));
  const int terms = pick.integer(1, 4);
  return {rect, random_cone(draw_cone_spec(rect, terms, Rng::derive(seed, cone_stream + 100, index)))};
}

// Piecewise-linear cones are integrated exactly between kinks; n = 4 leaves
// only rounding in the self-consistency gap.
Oracle cone_oracle(const ConeWitness& cone) { return Oracle(cone.expr, cone.kinks, 4, 64); }

void append(std::vector<InequalityCase>& out, const std::vector<InequalityCase>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

}  // namespace

Report run_suite(const SuiteConfig& config) {
  Report report{config.seed, {}, 0, 0.0};
  const Rectangle unit = Rectangle::unit();
  const std::vector<UnitPair> grid = unit_grid(config.h_grid);

  // Builtins on the unit square with interval-certified constants.
  run_section(static_cast<int>(config.builtins.size()), report, [&](int i) {
    const std::string& name = config.builtins[static_cast<std::size_t>(i)];
    const Expr e = builtin(name);
    const auto [l1, l2] = certified_lipschitz(e, unit, config.subdivisions);
    Oracle oracle(e, {}, config.oracle_n);
    Section s;
    append(s.cases, verify_lipschitz_bounds(oracle, name, LipschitzConstants::pairwise(l1, l2), unit));
    append(s.cases, verify_h_properties(oracle, name, l1, l2, unit, grid));
    s.gap = oracle.max_gap();
    return s;
  });

  // Convexity classification; the chain is checked where it applies.
  run_section(static_cast<int>(config.convexity_functions.size()), report, [&](int i) {
    const std::string& name = config.convexity_functions[static_cast<std::size_t>(i)];
    const Expr e = builtin(name);
    const ConvexityResult conv = check_coordinated_convexity(
        e, unit, config.convexity_samples, Rng::derive(config.seed, kConvexity, static_cast<std::uint64_t>(i)));
    Section s;
    s.cases.push_back(make_case("convexity", name, unit, conv.worst_violation, convexity_tolerance));
    // The convexity case is judged on its own tolerance, not the slack policy.
    s.cases.back().holds = conv.holds;
    if (conv.holds) {
      Oracle oracle(e, {}, config.oracle_n);
      const ChainResult chain = verify_hadamard_chain(oracle, name, unit);
      s.cases.insert(s.cases.end(), chain.cases.begin(), chain.cases.end());
      s.gap = oracle.max_gap();
    }
    return s;
  });

  run_section(config.lipschitz_trials, report, [&](int i) {
    const RandomInstance inst = draw_instance(config.seed, kSweepRect, kSweepCone, i);
    Oracle oracle = cone_oracle(inst.cone);
    Section s;
    s.cases = verify_lipschitz_bounds(oracle, "sweep-cone-" + std::to_string(i),
                                      LipschitzConstants::pairwise(inst.cone.l1, inst.cone.l2), inst.rect);
    s.gap = oracle.max_gap();
    return s;
  });

  run_section(config.chain_trials, report, [&](int i) {
    const RandomInstance inst = draw_instance(config.seed, kChainRect, kChainCone, i);
    Oracle oracle = cone_oracle(inst.cone);
    const ChainResult chain = verify_hadamard_chain(oracle, "chain-cone-" + std::to_string(i), inst.rect);
    return Section{{chain.cases.begin(), chain.cases.end()}, oracle.max_gap()};
  });

  run_section(config.h_functions, report, [&](int i) {
    const RandomInstance inst = draw_instance(config.seed, kHRect, kHCone, i);
    Oracle oracle = cone_oracle(inst.cone);
    Section s;
    s.cases = verify_h_properties(oracle, "h-cone-" + std::to_string(i), inst.cone.l1, inst.cone.l2, inst.rect,
                                  grid);
    s.gap = oracle.max_gap();
    return s;
  });

  // One-dimensional bounds: the |x - 1/2| tightness witness, then random
  // sums of c_i |x - p_i|.
  run_section(config.oned_trials + 1, report, [&](int i) {
    if (i == 0) {
      return Section{verify_1d_degenerate([](double x) { return std::abs(x - 0.5); }, "abs-half", 1.0, 0.0, 1.0,
                                          {0.5}),
                     0.0};
    }
    Rng rng(Rng::derive(config.seed, kOneDim, static_cast<std::uint64_t>(i)));
    const double a = rng.uniform(-5.0, 5.0);
    const double b = a + std::pow(10.0, rng.uniform(-1.0, 1.0));
    const int terms = rng.integer(1, 4);
    std::vector<std::pair<double, double>> parts;  // (c, p)
    std::vector<double> kinks;
    CompensatedSum lip;
    for (int k = 0; k < terms; ++k) {
      const double c = rng.uniform();
      const double p = rng.uniform(a, b);
      parts.emplace_back(c, p);
      kinks.push_back(p);
      lip.add(c);
    }
    auto f1 = [parts](double x) {
      double v = 0;
      for (const auto& [c, p] : parts) v += c * std::abs(x - p);
      return v;
    };
    return Section{verify_1d_degenerate(f1, "oned-cone-" + std::to_string(i), lip.value(), a, b, kinks, 4), 0.0};
  });

  report.violations = static_cast<int>(std::count_if(report.cases.begin(), report.cases.end(), [](const auto& c) {
    return is_gating(c.name) && !c.holds;
  }));
  return report;
}

namespace {

std::string number(double v) {
  if (!std::isfinite(v)) return "null";
  return fmt::format("{:.17g}", v);
}

}  // namespace

std::string json_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          out += fmt::format("\\u{:04x}", static_cast<unsigned>(static_cast<unsigned char>(ch)));
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string report_json(const Report& report) {
  std::string out = fmt::format("{{\n  \"seed\": {},\n  \"cases\": [", report.seed);
  for (std::size_t i = 0; i < report.cases.size(); ++i) {
    const InequalityCase& c = report.cases[i];
    out += i == 0 ? "\n" : ",\n";
    out += fmt::format(
        "    {{\"name\": {}, \"function\": {}, \"rect\": [{}, {}, {}, {}], \"lhs\": {}, \"rhs\": {}, "
        "\"slack\": {}, \"holds\": {}}}",
        json_quote(c.name), json_quote(c.function), number(c.rect.a()), number(c.rect.b()), number(c.rect.c()),
        number(c.rect.d()), number(c.lhs), number(c.rhs), number(c.slack), c.holds ? "true" : "false");
  }
  out += report.cases.empty() ? "],\n" : "\n  ],\n";
  out += fmt::format("  \"violations\": {}\n}}\n", report.violations);
  return out;
}

std::string report_csv(const Report& report) {
  std::string out = "name,function,a,b,c,d,lhs,rhs,slack,holds\n";
  for (const InequalityCase& c : report.cases) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", csv_field(c.name), csv_field(c.function),
                       number(c.rect.a()), number(c.rect.b()), number(c.rect.c()), number(c.rect.d()),
                       number(c.lhs), number(c.rhs), number(c.slack), c.holds ? "true" : "false");
  }
  return out;
}

}  // namespace hc
