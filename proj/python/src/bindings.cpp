#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hc/core.hpp"
#include "hc/errors.hpp"
#include "hc/expr.hpp"
#include "hc/integrator.hpp"
#include "hc/interval.hpp"
#include "hc/quad.hpp"
#include "hc/verify.hpp"

namespace py = pybind11;
using namespace hc;

namespace {

using Rect4 = std::array<double, 4>;

Rectangle to_rect(const Rect4& r) { return {r[0], r[1], r[2], r[3]}; }

LipschitzConstants to_lip(const std::vector<double>& l) {
  if (l.size() == 2) return LipschitzConstants::pairwise(l[0], l[1]);
  if (l.size() == 8) {
    std::array<double, 8> a{};
    std::copy(l.begin(), l.end(), a.begin());
    return LipschitzConstants::eight_point(a);
  }
  throw std::invalid_argument("expected 2 or 8 Lipschitz constants");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Certified cubature and Hadamard-type bounds for Lipschitz functions on rectangles";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<EvalError>(m, "EvalError", base.ptr());
  py::register_exception<SingularityInDomain>(m, "SingularityInDomain", base.ptr());
  py::register_exception<UnboundedDerivative>(m, "UnboundedDerivative", base.ptr());
  py::register_exception<UnknownBuiltin>(m, "UnknownBuiltin", base.ptr());
  py::register_exception<InvalidTolerance>(m, "InvalidTolerance", base.ptr());
  py::register_exception<InvalidSpec>(m, "InvalidSpec", base.ptr());

  py::class_<Expr>(m, "Expr")
      .def("__call__", [](const Expr& e, double x, double y) { return evaluate(e, x, y); })
      .def("__str__", [](const Expr& e) { return to_string(e); })
      .def("__repr__", [](const Expr& e) { return "Expr('" + to_string(e) + "')"; })
      .def("__eq__", [](const Expr& a, const Expr& b) { return a == b; });

  m.def("parse", &parse, py::arg("text"));
  m.def("builtin", &builtin, py::arg("name"));
  m.def("builtin_names", &builtin_names);

  m.def(
      "bounds",
      [](const Rect4& r, const std::vector<double>& lip) {
        const Rectangle rect = to_rect(r);
        const LipschitzConstants l = to_lip(lip);
        return py::dict(py::arg("m1") = l.m1(), py::arg("m2") = l.m2(),
                        py::arg("eq1") = midpoint_mean_bound(rect, l), py::arg("eq3") = corner_midpoint_bound(rect, l),
                        py::arg("eq11") = corner_mean_bound(rect, l));
      },
      py::arg("rect"), py::arg("lip"));

  m.def(
      "certified_lipschitz",
      [](const Expr& e, const Rect4& r, int subdivisions) { return certified_lipschitz(e, to_rect(r), subdivisions); },
      py::arg("expr"), py::arg("rect"), py::arg("subdivisions") = default_subdivisions);

  m.def(
      "integrate",
      [](const Expr& e, const Rect4& r, const std::vector<double>& lip, double tol, const std::string& rule,
         std::size_t max_cells) {
        CertifiedResult res;
        {
          py::gil_scoped_release release;
          res = integrate_certified(e, to_rect(r), to_lip(lip), tol, parse_rule(rule), max_cells);
        }
        return py::dict(py::arg("estimate") = res.estimate, py::arg("error_bound") = res.error_bound,
                        py::arg("cells") = res.cells, py::arg("evaluations") = res.evaluations,
                        py::arg("converged") = res.converged);
      },
      py::arg("expr"), py::arg("rect"), py::arg("lip"), py::arg("tol") = 1e-3, py::arg("rule") = "midpoint",
      py::arg("max_cells") = default_max_cells);

  m.def(
      "mean",
      [](const Expr& e, const Rect4& r, int n) { return mean_value_oracle(e, to_rect(r), n); },
      py::arg("expr"), py::arg("rect"), py::arg("n") = 256);

  m.def(
      "h_value",
      [](const Expr& e, const Rect4& r, double t, double s, int n) {
        return h_value(e, to_rect(r), UnitPair(t, s), n);
      },
      py::arg("expr"), py::arg("rect"), py::arg("t"), py::arg("s"), py::arg("n") = 256);

  m.def(
      "verify",
      [](std::uint64_t seed, int trials, int chain_trials, int h_functions, int oned_trials) {
        SuiteConfig cfg;
        cfg.seed = seed;
        cfg.lipschitz_trials = trials;
        cfg.chain_trials = chain_trials;
        cfg.h_functions = h_functions;
        cfg.oned_trials = oned_trials;
        py::gil_scoped_release release;
        return report_json(run_suite(cfg));
      },
      py::arg("seed") = 0, py::arg("trials") = 500, py::arg("chain_trials") = 100, py::arg("h_functions") = 20,
      py::arg("oned_trials") = 100);
}
