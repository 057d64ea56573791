#include "hc/cli.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hc/core.hpp"
#include "hc/errors.hpp"
#include "hc/expr.hpp"
#include "hc/integrator.hpp"
#include "hc/interval.hpp"
#include "hc/parallel.hpp"
#include "hc/quad.hpp"
#include "hc/verify.hpp"

namespace hc {

namespace {

constexpr const char* uncertified_label = "UNCERTIFIED: lower-bound estimate";

// Raised for user errors detected after flag parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Text, Json, Csv };

std::string num(double v) { return std::isfinite(v) ? fmt::format("{:.17g}", v) : "null"; }
std::string short_num(double v) { return fmt::format("{:.10g}", v); }

struct FunctionOptions {
  std::string fn;
  std::string expr;

  void attach(CLI::App& app) {
    auto* fn_opt = app.add_option("--fn", fn, "builtin function name");
    auto* expr_opt = app.add_option("--expr", expr, "expression in x and y");
    fn_opt->excludes(expr_opt);
  }

  Expr resolve() const {
    if (fn.empty() == expr.empty()) throw UsageError("exactly one of --fn or --expr is required");
    return fn.empty() ? parse(expr) : builtin(fn);
  }

  std::string label() const { return fn.empty() ? expr : fn; }
};

struct RectOption {
  std::vector<double> values;

  void attach(CLI::App& app) { app.add_option("--rect", values, "a b c d")->expected(4)->required(); }

  Rectangle resolve() const { return {values.at(0), values.at(1), values.at(2), values.at(3)}; }
};

struct LipschitzOptions {
  std::vector<double> lip;
  std::vector<double> lip8;
  std::string mode;
  int subdivisions = default_subdivisions;
  int samples = 10000;
  std::uint64_t seed = 0;

  void attach(CLI::App& app, bool allow_eight) {
    auto* pair = app.add_option("--lip", lip, "manual constants L1 L2")->expected(2);
    if (allow_eight) {
      app.add_option("--lip8", lip8, "manual per-corner constants L1..L8")->expected(8)->excludes(pair);
    }
    app.add_option("--lip-mode", mode, "manual | certified | sampled")
        ->check(CLI::IsMember({"manual", "certified", "sampled"}));
    app.add_option("--subdivisions", subdivisions, "boxes per axis for certified constants")
        ->check(CLI::PositiveNumber);
    app.add_option("--samples", samples, "random pairs per axis for sampled constants")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "seed for sampled constants");
  }

  struct Resolved {
    LipschitzConstants constants;
    std::string mode;
    bool certified;  // false only for sampled constants
  };

  Resolved resolve(const Expr& e, const Rectangle& rect) const {
    const bool manual_given = !lip.empty() || !lip8.empty();
    const std::string effective = !mode.empty() ? mode : (manual_given ? "manual" : "certified");
    if (effective == "manual") {
      if (!manual_given) throw UsageError("--lip-mode manual requires --lip (or --lip8)");
      if (!lip8.empty()) {
        std::array<double, 8> l{};
        std::copy(lip8.begin(), lip8.end(), l.begin());
        return {LipschitzConstants::eight_point(l), effective, true};
      }
      return {LipschitzConstants::pairwise(lip[0], lip[1]), effective, true};
    }
    if (manual_given) throw UsageError("--lip/--lip8 only apply with --lip-mode manual");
    if (effective == "certified") {
      const auto [l1, l2] = certified_lipschitz(e, rect, subdivisions);
      return {LipschitzConstants::pairwise(l1, l2), effective, true};
    }
    const auto [l1, l2] = sampled_lipschitz(e, rect, samples, seed);
    return {LipschitzConstants::pairwise(l1, l2), effective, false};
  }
};

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  return Format::Text;
}

std::string constants_json(const LipschitzConstants& lip) {
  std::string out = "[";
  const int count = lip.is_pairwise() ? 2 : 8;
  for (int i = 1; i <= count; ++i) out += (i > 1 ? ", " : "") + num(lip.l(i));
  return out + "]";
}

std::string constants_text(const LipschitzConstants& lip) {
  std::string out;
  const int count = lip.is_pairwise() ? 2 : 8;
  for (int i = 1; i <= count; ++i) out += fmt::format("{}L{}={}", i > 1 ? " " : "", i, short_num(lip.l(i)));
  return out;
}

// ---------------------------------------------------------------------------
// integrate

struct IntegrateCommand {
  FunctionOptions function;
  RectOption rect;
  LipschitzOptions lipschitz;
  double tol = 1e-3;
  std::string rule = "midpoint";
  std::size_t max_cells = default_max_cells;
  std::string format = "text";

  void attach(CLI::App& app) {
    function.attach(app);
    rect.attach(app);
    lipschitz.attach(app, true);
    app.add_option("--tol", tol, "absolute error tolerance");
    app.add_option("--rule", rule, "midpoint | corner")->check(CLI::IsMember({"midpoint", "corner"}));
    app.add_option("--max-cells", max_cells, "cell budget")->check(CLI::PositiveNumber);
    app.add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}));
  }

  int run(std::ostream& out) const {
    const Expr e = function.resolve();
    const Rectangle r = rect.resolve();
    if (!(tol > 0)) throw UsageError("--tol must be positive");
    const auto lip = lipschitz.resolve(e, r);
    const CertifiedResult res = integrate_certified(e, r, lip.constants, tol, parse_rule(rule), max_cells);

    switch (parse_format(format)) {
      case Format::Json:
        out << fmt::format(
            "{{\"estimate\": {}, \"error_bound\": {}, \"cells\": {}, \"evaluations\": {}, \"converged\": {}, "
            "\"rule\": \"{}\", \"lipschitz\": {{\"mode\": \"{}\", \"certified\": {}, \"constants\": {}{}}}}}\n",
            num(res.estimate), num(res.error_bound), res.cells, res.evaluations, res.converged, rule, lip.mode,
            lip.certified, constants_json(lip.constants),
            lip.certified ? "" : fmt::format(", \"label\": \"{}\"", uncertified_label));
        break;
      case Format::Csv:
        out << "estimate,error_bound,cells,evaluations,converged,rule,lipschitz_mode,certified\n";
        out << fmt::format("{},{},{},{},{},{},{},{}\n", num(res.estimate), num(res.error_bound), res.cells,
                           res.evaluations, res.converged, rule, lip.mode, lip.certified);
        break;
      case Format::Text: {
        const std::string tag = lip.certified ? "" : fmt::format(" ({})", uncertified_label);
        out << fmt::format("estimate     {}\n", short_num(res.estimate));
        out << fmt::format("error_bound  {}{}\n", short_num(res.error_bound), tag);
        out << fmt::format("cells        {}\n", res.cells);
        out << fmt::format("evaluations  {}\n", res.evaluations);
        out << fmt::format("converged    {}\n", res.converged);
        out << fmt::format("rule         {}\n", rule);
        out << fmt::format("lipschitz    {} {}{}\n", lip.mode, constants_text(lip.constants), tag);
        break;
      }
    }
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------
// bounds

struct BoundsCommand {
  RectOption rect;
  std::vector<double> lip;
  std::vector<double> lip8;
  std::vector<double> ts{0.5, 0.5};
  std::string format = "text";

  void attach(CLI::App& app) {
    rect.attach(app);
    auto* pair = app.add_option("--lip", lip, "constants L1 L2")->expected(2);
    app.add_option("--lip8", lip8, "per-corner constants L1..L8")->expected(8)->excludes(pair);
    app.add_option("--ts", ts, "shrink parameters t s for the pointwise and H bounds")->expected(2);
    app.add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}));
  }

  int run(std::ostream& out) const {
    const Rectangle r = rect.resolve();
    if (lip.empty() == lip8.empty()) throw UsageError("exactly one of --lip or --lip8 is required");
    std::optional<LipschitzConstants> constants;
    if (!lip.empty()) {
      constants = LipschitzConstants::pairwise(lip[0], lip[1]);
    } else {
      std::array<double, 8> l{};
      std::copy(lip8.begin(), lip8.end(), l.begin());
      constants = LipschitzConstants::eight_point(l);
    }
    const UnitPair pair(ts.at(0), ts.at(1));

    std::vector<std::pair<std::string, double>> rows{
        {"m1", constants->m1()},
        {"m2", constants->m2()},
        {"eq1", midpoint_mean_bound(r, *constants)},
        {"eq3", corner_midpoint_bound(r, *constants)},
        {"eq11", corner_mean_bound(r, *constants)},
        {"eq2", pointwise_gap_bound(pair, r, *constants)},
        {"eq10", subrectangle_corner_bound(pair, r, *constants)},
        {"eq10-printed", subrectangle_corner_bound_as_printed(pair, r, *constants)},
    };
    if (constants->is_pairwise()) {
      const double l1 = lip[0];
      const double l2 = lip[1];
      const auto [mod_t, mod_s] = h_lipschitz_modulus(r, l1, l2);
      rows.insert(rows.end(), {
                                  {"eq6", h_vs_midpoint_bound(pair, r, l1, l2)},
                                  {"eq7", h_vs_mean_bound(pair, r, l1, l2)},
                                  {"eq9-t", mod_t},
                                  {"eq9-s", mod_s},
                                  {"1d-mid", oned_midpoint_bound(r.width(), l1)},
                                  {"1d-trap", oned_trapezoid_bound(r.width(), l1)},
                              });
    }

    switch (parse_format(format)) {
      case Format::Json: {
        std::string body;
        for (const auto& [name, value] : rows) body += fmt::format("{}\"{}\": {}", body.empty() ? "" : ", ", name, num(value));
        out << "{" << body << "}\n";
        break;
      }
      case Format::Csv:
        out << "name,value\n";
        for (const auto& [name, value] : rows) out << name << ',' << num(value) << '\n';
        break;
      case Format::Text:
        for (const auto& [name, value] : rows) out << fmt::format("{:<13}{}\n", name, short_num(value));
        break;
    }
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------
// lipschitz

struct LipschitzCommand {
  FunctionOptions function;
  RectOption rect;
  std::string mode = "both";
  int subdivisions = default_subdivisions;
  int samples = 10000;
  std::uint64_t seed = 0;
  std::string format = "text";

  void attach(CLI::App& app) {
    function.attach(app);
    rect.attach(app);
    app.add_option("--lip-mode", mode, "certified | sampled | both")
        ->check(CLI::IsMember({"certified", "sampled", "both"}));
    app.add_option("--subdivisions", subdivisions)->check(CLI::PositiveNumber);
    app.add_option("--samples", samples)->check(CLI::PositiveNumber);
    app.add_option("--seed", seed);
    app.add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}));
  }

  int run(std::ostream& out) const {
    const Expr e = function.resolve();
    const Rectangle r = rect.resolve();
    std::optional<std::pair<double, double>> certified;
    std::optional<std::pair<double, double>> sampled;
    if (mode != "sampled") certified = certified_lipschitz(e, r, subdivisions);
    if (mode != "certified") sampled = sampled_lipschitz(e, r, samples, seed);

    switch (parse_format(format)) {
      case Format::Json: {
        std::string body;
        if (certified) {
          body += fmt::format("\"certified\": {{\"L1\": {}, \"L2\": {}, \"subdivisions\": {}}}", num(certified->first),
                              num(certified->second), subdivisions);
        }
        if (sampled) {
          body += fmt::format("{}\"sampled\": {{\"L1\": {}, \"L2\": {}, \"samples\": {}, \"label\": \"{}\"}}",
                              body.empty() ? "" : ", ", num(sampled->first), num(sampled->second), samples,
                              uncertified_label);
        }
        out << "{" << body << "}\n";
        break;
      }
      case Format::Csv:
        out << "mode,L1,L2,certified\n";
        if (certified) out << fmt::format("certified,{},{},true\n", num(certified->first), num(certified->second));
        if (sampled) out << fmt::format("sampled,{},{},false\n", num(sampled->first), num(sampled->second));
        break;
      case Format::Text:
        if (certified) {
          out << fmt::format("certified  L1={} L2={}\n", short_num(certified->first), short_num(certified->second));
        }
        if (sampled) {
          out << fmt::format("sampled    L1={} L2={} ({})\n", short_num(sampled->first), short_num(sampled->second),
                             uncertified_label);
        }
        break;
    }
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------
// verify

struct VerifyCommand {
  SuiteConfig config;
  std::string format = "text";
  std::string output;

  void attach(CLI::App& app) {
    app.add_option("--seed", config.seed);
    app.add_option("--n", config.oracle_n, "initial Simpson panel count for smooth builtins")
        ->check(CLI::PositiveNumber);
    app.add_option("--subdivisions", config.subdivisions)->check(CLI::PositiveNumber);
    app.add_option("--trials", config.lipschitz_trials, "random cones for eq1/eq3/eq11")->check(CLI::NonNegativeNumber);
    app.add_option("--chain-trials", config.chain_trials)->check(CLI::NonNegativeNumber);
    app.add_option("--h-functions", config.h_functions)->check(CLI::NonNegativeNumber);
    app.add_option("--h-grid", config.h_grid, "ts-grid points per axis")->check(CLI::Range(2, 1000));
    app.add_option("--oned-trials", config.oned_trials)->check(CLI::NonNegativeNumber);
    app.add_option("--convexity-samples", config.convexity_samples)->check(CLI::PositiveNumber);
    app.add_option("--builtin", config.builtins, "builtins checked on the unit square");
    app.add_option("--convexity", config.convexity_functions, "builtins run through the convexity classifier");
    app.add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--out", output, "write the report to a file instead of standard output");
  }

  int run(std::ostream& out) const {
    if (config.oracle_n % 2 != 0) throw UsageError("--n must be even");
    const Report report = run_suite(config);

    std::string text;
    switch (parse_format(format)) {
      case Format::Json: text = report_json(report); break;
      case Format::Csv: text = report_csv(report); break;
      case Format::Text: text = summary(report); break;
    }
    if (output.empty()) {
      out << text;
    } else {
      std::ofstream file(output, std::ios::binary);
      if (!file) throw UsageError("cannot write " + output);
      file << text;
    }
    return report.violations > 0 ? kExitViolation : kExitOk;
  }

  static std::string summary(const Report& report) {
    struct Tally {
      int count = 0;
      int failed = 0;
      double min_slack = std::numeric_limits<double>::infinity();
    };
    std::vector<std::string> order;
    std::map<std::string, Tally> tallies;
    for (const auto& c : report.cases) {
      if (!tallies.count(c.name)) order.push_back(c.name);
      Tally& t = tallies[c.name];
      ++t.count;
      t.failed += c.holds ? 0 : 1;
      t.min_slack = std::min(t.min_slack, c.slack);
    }
    std::string out = fmt::format("seed {}\n{:<14}{:>8}{:>8}  {}\n", report.seed, "case", "count", "failed", "min slack");
    for (const auto& name : order) {
      const Tally& t = tallies[name];
      out += fmt::format("{:<14}{:>8}{:>8}  {:.3e}{}\n", name, t.count, t.failed, t.min_slack,
                         is_gating(name) ? "" : "  (not gating)");
    }
    out += fmt::format("violations {}\n", report.violations);
    return out;
  }
};

// ---------------------------------------------------------------------------
// h-map

struct HMapCommand {
  FunctionOptions function;
  RectOption rect;
  LipschitzOptions lipschitz;
  int grid = 5;
  int n = 256;
  std::string format = "csv";

  void attach(CLI::App& app) {
    function.attach(app);
    rect.attach(app);
    lipschitz.attach(app, false);
    app.add_option("--grid", grid, "ts-grid points per axis")->check(CLI::Range(2, 1000));
    app.add_option("--n", n, "initial Simpson panel count")->check(CLI::PositiveNumber);
    app.add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}));
  }

  int run(std::ostream& out, std::ostream& err) const {
    if (n % 2 != 0) throw UsageError("--n must be even");
    const Expr e = function.resolve();
    const Rectangle r = rect.resolve();
    const auto lip = lipschitz.resolve(e, r);
    if (!lip.certified) err << "warning: " << uncertified_label << " constants; bounds are not guaranteed\n";
    const double l1 = lip.constants.l(1);
    const double l2 = lip.constants.l(2);
    const auto [mod_t, mod_s] = h_lipschitz_modulus(r, l1, l2);

    Oracle oracle(e, {}, n);
    const double mid = midpoint_value(e, r);
    const double mean = oracle.mean(r);
    const std::vector<UnitPair> points = unit_grid(grid);

    const bool json = parse_format(format) == Format::Json;
    if (json) {
      out << fmt::format("{{\"function\": {}, \"certified\": {}, \"L1\": {}, \"L2\": {}, \"rows\": [", json_quote(function.label()),
                         lip.certified, num(l1), num(l2));
    } else {
      out << "t,s,H,eq6_lhs,eq6_rhs,eq7_lhs,eq7_rhs,eq9_lhs,eq9_rhs,eq10_lhs,eq10_rhs,eq10_printed_rhs\n";
    }
    double previous_h = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const UnitPair& ts = points[i];
      const double h = oracle.h(r, ts);
      const double corners = corner_average(e, shrink_toward_center(r, ts));
      std::string eq9_lhs = json ? "null" : "";
      std::string eq9_rhs = eq9_lhs;
      if (i > 0) {
        eq9_lhs = num(std::abs(h - previous_h));
        eq9_rhs = num(mod_t * std::abs(ts.t() - points[i - 1].t()) + mod_s * std::abs(ts.s() - points[i - 1].s()));
      }
      const std::array<std::string, 12> cols{
          num(ts.t()),
          num(ts.s()),
          num(h),
          num(std::abs(h - mid)),
          num(h_vs_midpoint_bound(ts, r, l1, l2)),
          num(std::abs(h - mean)),
          num(h_vs_mean_bound(ts, r, l1, l2)),
          eq9_lhs,
          eq9_rhs,
          num(std::abs(corners - h)),
          num(subrectangle_corner_bound(ts, r, lip.constants)),
          num(subrectangle_corner_bound_as_printed(ts, r, lip.constants)),
      };
      if (json) {
        out << fmt::format(
            "{}{{\"t\": {}, \"s\": {}, \"H\": {}, \"eq6_lhs\": {}, \"eq6_rhs\": {}, \"eq7_lhs\": {}, \"eq7_rhs\": {}, "
            "\"eq9_lhs\": {}, \"eq9_rhs\": {}, \"eq10_lhs\": {}, \"eq10_rhs\": {}, \"eq10_printed_rhs\": {}}}",
            i == 0 ? "" : ", ", cols[0], cols[1], cols[2], cols[3], cols[4], cols[5], cols[6], cols[7], cols[8],
            cols[9], cols[10], cols[11]);
      } else {
        out << fmt::format("{}\n", fmt::join(cols, ","));
      }
      previous_h = h;
    }
    if (json) out << "]}\n";
    return kExitOk;
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (const char* env = std::getenv("HC_THREADS")) {
    if (!parse_thread_count(env)) {
      err << "error: HC_THREADS must be a positive integer\n";
      return kExitUsage;
    }
  }

  CLI::App app{"Certified 2-D cubature with Hadamard-type error bounds", "hcub"};
  app.require_subcommand(1);

  IntegrateCommand integrate;
  BoundsCommand bounds;
  LipschitzCommand lipschitz;
  VerifyCommand verify;
  HMapCommand hmap;
  auto* integrate_app = app.add_subcommand("integrate", "certified cubature");
  auto* bounds_app = app.add_subcommand("bounds", "closed-form bounds for a rectangle and constants");
  auto* lipschitz_app = app.add_subcommand("lipschitz", "certified and sampled Lipschitz constants");
  auto* verify_app = app.add_subcommand("verify", "run the inequality verification suite");
  auto* hmap_app = app.add_subcommand("h-map", "tabulate H(t,s) and its bounds over a ts-grid");
  integrate.attach(*integrate_app);
  bounds.attach(*bounds_app);
  lipschitz.attach(*lipschitz_app);
  verify.attach(*verify_app);
  hmap.attach(*hmap_app);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*integrate_app) return integrate.run(out);
    if (*bounds_app) return bounds.run(out);
    if (*lipschitz_app) return lipschitz.run(out);
    if (*verify_app) return verify.run(out);
    return hmap.run(out, err);
  } catch (const EvalError& e) {
    err << "error: evaluation failed: " << e.what() << "\n";
    return kExitEvaluation;
  } catch (const SingularityInDomain& e) {
    err << "error: SingularityInDomain: " << e.what() << "\n";
    return kExitEvaluation;
  } catch (const UnboundedDerivative& e) {
    err << "error: UnboundedDerivative: " << e.what() << "\n";
    return kExitEvaluation;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    // UnknownBuiltin, InvalidTolerance, InvalidSpec.
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace hc
