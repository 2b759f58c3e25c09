#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "sdlab/fractional.hpp"
#include "sdlab/runner.hpp"

namespace py = pybind11;
using namespace sdlab;

namespace {

RunConfig make_config(const std::string& formulation, const std::string& precond,
                      const std::string& boundary, int nx, double mu, double k, double alpha,
                      std::optional<double> beta_n, std::uint64_t seed, double reduction,
                      int max_iter) {
  RunConfig cfg;
  if (formulation == "la")
    cfg.formulation = Formulation::la;
  else if (formulation == "ro")
    cfg.formulation = Formulation::ro;
  else
    throw ConfigError("formulation must be 'la' or 'ro'");
  if (precond == "exact")
    cfg.precond = PrecondKind::exact;
  else if (precond == "naive")
    cfg.precond = PrecondKind::naive;
  else
    throw ConfigError("precond must be 'exact' or 'naive'");
  if (boundary == "example21")
    cfg.boundary = BoundaryPreset::example21;
  else if (boundary == "appendixC")
    cfg.boundary = BoundaryPreset::appendixC;
  else
    throw ConfigError("boundary must be 'example21' or 'appendixC'");
  cfg.nx = nx;
  cfg.params = PhysicalParams{mu, k, alpha};
  cfg.beta_n = beta_n ? BetaN{BetaNMode::fixed, *beta_n} : BetaN{};
  cfg.seed = seed;
  cfg.reduction = reduction;
  cfg.max_iter = max_iter;
  return cfg;
}

py::dict errors_dict(const FieldErrors& e) {
  py::dict d;
  d["ux"] = e.ux;
  d["uy"] = e.uy;
  d["pS"] = e.ps;
  d["pD"] = e.pd;
  if (e.has_pgamma) d["pGamma"] = e.pgamma;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "coupled free-flow/porous-medium solver and preconditioner laboratory";

  py::register_exception<ConfigError>(m, "SdlabConfigError", PyExc_ValueError);
  py::register_exception<CapabilityError>(m, "SdlabCapabilityError", PyExc_RuntimeError);

  m.def(
      "solve",
      [](const std::string& formulation, const std::string& precond, const std::string& boundary,
         int nx, double mu, double k, double alpha, std::optional<double> beta_n,
         std::uint64_t seed, double reduction, int max_iter) {
        const RunResult r = run_solve(make_config(formulation, precond, boundary, nx, mu, k,
                                                  alpha, beta_n, seed, reduction, max_iter));
        py::dict d;
        d["iterations"] = r.iterations;
        d["converged"] = r.converged;
        d["residual_history"] = r.residual_history;
        d["errors"] = errors_dict(r.err);
        d["wall_time_s"] = r.wall_time_s;
        return d;
      },
      py::arg("formulation") = "la", py::arg("precond") = "exact",
      py::arg("boundary") = "example21", py::arg("nx") = 16, py::arg("mu") = 1.0,
      py::arg("k") = 1.0, py::arg("alpha") = 1.0, py::arg("beta_n") = py::none(),
      py::arg("seed") = 1, py::arg("reduction") = 1e-8, py::arg("max_iter") = 10000,
      "One preconditioned MinRes solve of the manufactured problem; returns iteration count, "
      "convergence flag, residual history, and discrete L2 errors.");

  m.def(
      "convergence",
      [](const std::vector<int>& nx_list, const std::string& formulation,
         const std::string& boundary, double mu, double k, double alpha) {
        RunConfig cfg = make_config(formulation, "exact", boundary, nx_list.empty() ? 16 : nx_list[0],
                                    mu, k, alpha, std::nullopt, 1, 1e-8, 10000);
        const auto rows = run_convergence(cfg, nx_list);
        py::list out;
        for (const ConvergenceRow& r : rows) {
          py::dict d;
          d["nx"] = r.nx;
          d["h"] = r.h;
          d["errors"] = errors_dict(r.err);
          py::dict o;
          o["ux"] = r.order_ux;
          o["uy"] = r.order_uy;
          o["pS"] = r.order_ps;
          o["pD"] = r.order_pd;
          if (r.err.has_pgamma) o["pGamma"] = r.order_pgamma;
          d["orders"] = o;
          out.append(d);
        }
        return out;
      },
      py::arg("nx_list"), py::arg("formulation") = "la", py::arg("boundary") = "example21",
      py::arg("mu") = 1.0, py::arg("k") = 1.0, py::arg("alpha") = 1.0,
      "Direct-solve refinement study; returns per-level errors and observed orders.");

  m.def(
      "condition_number",
      [](const std::string& formulation, const std::string& precond, const std::string& boundary,
         int nx, double mu, double k, double alpha) {
        return run_condition(
            make_config(formulation, precond, boundary, nx, mu, k, alpha, std::nullopt, 1, 1e-8,
                        10000));
      },
      py::arg("formulation") = "la", py::arg("precond") = "exact",
      py::arg("boundary") = "example21", py::arg("nx") = 16, py::arg("mu") = 1.0,
      py::arg("k") = 1.0, py::arg("alpha") = 1.0,
      "Extreme generalized eigenvalue ratio of the preconditioned operator (dense path).");

  m.def(
      "fractional_matrix",
      [](int nx, const std::string& variant, double mu, double exponent) {
        InterfaceVariant v;
        if (variant == "neumann")
          v = InterfaceVariant::neumann;
        else if (variant == "dirichlet")
          v = InterfaceVariant::dirichlet;
        else
          throw ConfigError("variant must be 'neumann' or 'dirichlet'");
        return build_fractional(interface_laplacian(nx, v), mu, exponent).S;
      },
      py::arg("nx"), py::arg("variant") = "neumann", py::arg("mu") = 1.0,
      py::arg("exponent") = -0.5,
      "Dense spectral realization of (2 mu)^{-1} (interface operator)^exponent.");
}
