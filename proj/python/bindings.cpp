#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <sstream>

#include "saddlemg/analysis.hpp"
#include "saddlemg/error.hpp"
#include "saddlemg/experiment.hpp"
#include "saddlemg/hierarchy.hpp"
#include "saddlemg/solver.hpp"

namespace py = pybind11;
using namespace saddlemg;

namespace {

TrigPoly poly_from_dict(const std::map<int, cplx>& coeffs) {
  TrigPoly p;
  for (const auto& [j, c] : coeffs) p = p + TrigPoly::monomial(j, c);
  return p;
}

std::map<int, cplx> poly_to_dict(const TrigPoly& p) {
  std::map<int, cplx> out;
  for (int j = -p.degree(); j <= p.degree(); ++j) {
    if (p.coeff(j) != cplx{}) out[j] = p.coeff(j);
  }
  return out;
}

ExperimentConfig make_config(const std::string& problem, int t, const std::string& cycle,
                             const std::string& omega, double rho, const std::string& projector,
                             double eps, int max_iter) {
  ExperimentConfig cfg;
  apply_config(cfg, {{"problem", problem}, {"t", std::to_string(t)}, {"cycle", cycle},
                     {"omega", omega}, {"projector", projector}, {"eps", std::to_string(eps)},
                     {"max_iter", std::to_string(max_iter)}});
  cfg.rho = rho;
  cfg.eps = eps;
  cfg.validate();
  return cfg;
}

py::dict report_dict(const TheoryReport& r) {
  py::dict d;
  d["alpha"] = r.alpha;
  d["fChat"] = poly_to_dict(r.fChat);
  d["a0_Chat"] = r.a0_Chat;
  d["kappa_A"] = r.constants.kappa_A;
  d["kappa_Chat"] = r.constants.kappa_Chat;
  d["kappa_tilde"] = r.constants.kappa_tilde();
  d["gamma_A"] = r.constants.gamma_A;
  d["gamma_Chat"] = r.constants.gamma_Chat;
  d["gamma_tilde"] = r.constants.gamma_tilde();
  d["omega_upper"] = r.omega_hi;
  d["omega_opt"] = r.opt.omega;
  d["mu_opt"] = r.opt.mu;
  py::list checks;
  for (const auto& v : r.verdicts) {
    py::dict c;
    c["name"] = v.name;
    c["passed"] = v.passed;
    c["warning"] = v.warning;
    c["value"] = v.value;
    c["witness"] = v.witness;
    checks.append(c);
  }
  d["checks"] = checks;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multigrid for circulant and Toeplitz saddle-point systems";

  py::register_exception<HypothesisFailure>(m, "HypothesisFailure");
  py::register_exception<Divergence>(m, "Divergence");
  py::register_exception<UnboundedRatio>(m, "UnboundedRatio");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  py::class_<TrigPoly>(m, "TrigPoly")
      .def(py::init([](const std::map<int, cplx>& c) { return poly_from_dict(c); }), py::arg("coeffs"))
      .def_property_readonly("degree", &TrigPoly::degree)
      .def("coeff", &TrigPoly::coeff)
      .def("coeffs", &poly_to_dict)
      .def("__call__", [](const TrigPoly& p, double theta) { return p(theta); })
      .def("__add__", [](const TrigPoly& a, const TrigPoly& b) { return a + b; })
      .def("__sub__", [](const TrigPoly& a, const TrigPoly& b) { return a - b; })
      .def("__mul__", [](const TrigPoly& a, const TrigPoly& b) { return a * b; })
      .def("__repr__", [](const TrigPoly& p) {
        std::ostringstream os;
        write_symbol(os, p);
        return "TrigPoly(\n" + os.str() + ")";
      });

  m.def("modulus_squared", &modulus_squared);
  m.def("psi_coarsen", &psi_coarsen);
  m.def("galerkin_coarse_symbol", &galerkin_coarse_symbol, py::arg("p1"), py::arg("f"), py::arg("p2"));
  m.def("hatC_symbol", &hatC_symbol, py::arg("fA"), py::arg("fB"), py::arg("fC"), py::arg("alpha"));
  m.def("sup_norm", [](const TrigPoly& p) { return sup_norm(p); });

  m.def("elasticity_symbols", [](double rho) {
    const auto s = elasticity_symbols(rho);
    return py::make_tuple(s.fA, s.fB, s.fC);
  }, py::arg("rho") = 0.5);

  m.def("analyze", [](double rho, const std::string& projector) {
    const auto s = elasticity_symbols(rho);
    return report_dict(analyze(s.fA, s.fB, s.fC, projectors_for(parse_projector(projector))));
  }, py::arg("rho") = 0.5, py::arg("projector") = "full",
     "Symbol analysis of the elasticity problem.");

  m.def("mu_bound", [](double omega, double kA, double kC, double gA, double gC) {
    return mu_bound(omega, MuConstants{kA, kC, gA, gC});
  }, py::arg("omega"), py::arg("kappa_A"), py::arg("kappa_Chat"), py::arg("gamma_A"), py::arg("gamma_Chat"));

  m.def("solve", [](const std::string& problem, int t, const std::string& cycle, const std::string& omega,
                    double rho, const std::string& projector, double eps, int max_iter) {
    const ExperimentConfig cfg = make_config(problem, t, cycle, omega, rho, projector, eps, max_iter);
    SolveReport r;
    {
      py::gil_scoped_release release;
      r = run_single(cfg, t);
    }
    py::dict d;
    d["iterations"] = r.iterations;
    d["converged"] = r.converged;
    d["history"] = r.history;
    return d;
  }, py::arg("problem") = "elasticity-circulant", py::arg("t") = 9, py::arg("cycle") = "w",
     py::arg("omega") = "adaptive", py::arg("rho") = 0.5, py::arg("projector") = "full",
     py::arg("eps") = 1e-6, py::arg("max_iter") = 2000);

  m.def("hierarchy", [](const std::string& problem, int t, double rho, const std::string& projector) {
    const ExperimentConfig cfg = make_config(problem, t, "w", "adaptive", rho, projector, 1e-6, 2000);
    const Hierarchy h = build_hierarchy(assemble_problem(cfg, t), projectors_for(cfg.projector));
    py::list out;
    for (const auto& lv : h.levels()) {
      py::dict d;
      d["level"] = lv.index;
      d["n"] = lv.n;
      d["alpha"] = lv.system.alpha();
      d["omega"] = lv.omega;
      d["fA"] = poly_to_dict(lv.system.fA());
      d["fB"] = poly_to_dict(lv.system.fB());
      d["fC"] = poly_to_dict(lv.system.fC());
      out.append(d);
    }
    return out;
  }, py::arg("problem") = "elasticity-circulant", py::arg("t") = 9, py::arg("rho") = 0.5,
     py::arg("projector") = "full");

  m.def("presets", &preset_names);
}
