// sdlab: solves the coupled free-flow/porous-medium problem on staggered grids and
// reports Krylov iteration counts, discretization errors, and condition numbers as CSV.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sdlab/runner.hpp"

namespace {

using namespace sdlab;

struct CliOptions {
  std::string formulation = "la";
  std::string precond = "exact";
  std::string boundary = "example21";
  std::string fractional;  // empty = implied by the boundary layout
  int nx = 16, ny_s = 0, ny_d = 0;
  double mu = 1.0, k = 1.0, alpha = 1.0;
  double S = 1.0, Da = 1.0;
  std::string beta_n = "consistent";
  std::uint64_t seed = 1;
  double reduction = 1e-8;
  int max_iter = 10000;
  std::string out;
  std::string dump_dir;

  // set while wiring the parser
  CLI::Option* opt_mu = nullptr;
  CLI::Option* opt_k = nullptr;
  CLI::Option* opt_S = nullptr;
  CLI::Option* opt_Da = nullptr;
};

RunConfig make_run_config(const CliOptions& o) {
  RunConfig cfg;
  cfg.formulation = o.formulation == "la" ? Formulation::la : Formulation::ro;
  cfg.precond = o.precond == "exact" ? PrecondKind::exact : PrecondKind::naive;
  cfg.boundary = o.boundary == "example21" ? BoundaryPreset::example21 : BoundaryPreset::appendixC;
  if (o.fractional == "neumann")
    cfg.fractional_variant = InterfaceVariant::neumann;
  else if (o.fractional == "dirichlet")
    cfg.fractional_variant = InterfaceVariant::dirichlet;
  cfg.nx = o.nx;
  cfg.ny_s = o.ny_s;
  cfg.ny_d = o.ny_d;

  const bool physical = o.opt_mu->count() > 0 || o.opt_k->count() > 0;
  const bool dimensionless = o.opt_S->count() > 0 || o.opt_Da->count() > 0;
  if (physical && dimensionless)
    throw ConfigError("give either --mu/--k or --S/--Da, not both");
  if (dimensionless) {
    DimensionlessParams d;
    d.S = o.S;
    d.Da = o.Da;
    d.alpha = o.alpha;
    cfg.params = from_dimensionless(d);
  } else {
    cfg.params = PhysicalParams{o.mu, o.k, o.alpha};
  }
  cfg.params.validate();

  if (o.beta_n == "consistent") {
    cfg.beta_n = BetaN{BetaNMode::consistent, 0.0};
  } else {
    char* end = nullptr;
    const double v = std::strtod(o.beta_n.c_str(), &end);
    if (end == o.beta_n.c_str() || *end != '\0' || !(v > 0))
      throw ConfigError("--beta-n expects 'consistent' or a positive number, got '" + o.beta_n +
                        "'");
    cfg.beta_n = BetaN{BetaNMode::fixed, v};
  }

  cfg.seed = o.seed;
  cfg.reduction = o.reduction;
  cfg.max_iter = o.max_iter;
  return cfg;
}

/// Stream sink: --out path or stdout.
class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish() {
    stream().flush();
    if (file_.is_open() && !file_) throw std::runtime_error("error writing output file");
  }

 private:
  std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Monolithic solver and preconditioner laboratory for coupled free-flow /\n"
      "porous-medium problems on 2D staggered grids."};
  app.require_subcommand(1);

  CliOptions o;
  app.set_config("--config")->description("plain key=value config file");
  app.add_option("--formulation", o.formulation, "monolithic formulation")
      ->check(CLI::IsMember({"la", "ro"}))
      ->capture_default_str();
  app.add_option("--precond", o.precond, "preconditioner choice")
      ->check(CLI::IsMember({"exact", "naive"}))
      ->capture_default_str();
  app.add_option("--boundary", o.boundary,
                 "boundary layout: example21 = top velocity Dirichlet / bottom pressure "
                 "Dirichlet, appendixC = lateral Dirichlet edges meeting the interface")
      ->check(CLI::IsMember({"example21", "appendixC"}))
      ->capture_default_str();
  app.add_option("--fractional", o.fractional,
                 "override the interface-operator variant implied by the layout")
      ->check(CLI::IsMember({"neumann", "dirichlet"}));
  app.add_option("--nx", o.nx, "cells across the interface")->capture_default_str();
  app.add_option("--ny-s,--ny_s", o.ny_s, "free-flow cells in y (0: same as nx)");
  app.add_option("--ny-d,--ny_d", o.ny_d, "porous cells in y (0: same as nx)");
  o.opt_mu = app.add_option("--mu", o.mu, "viscosity");
  o.opt_k = app.add_option("--k", o.k, "permeability");
  app.add_option("--alpha", o.alpha, "slip coefficient")->capture_default_str();
  o.opt_S = app.add_option("--S", o.S, "characteristic free-flow number (sets mu)");
  o.opt_Da = app.add_option("--Da", o.Da, "Darcy number (sets k)");
  app.add_option("--beta-n,--beta_n", o.beta_n,
                 "interface Robin coefficient: 'consistent' (h_K/kappa) or a value")
      ->capture_default_str();
  app.add_option("--seed", o.seed, "random initial guess seed")->capture_default_str();
  app.add_option("--reduction", o.reduction, "relative residual reduction target")
      ->capture_default_str();
  app.add_option("--max-iter,--max_iter", o.max_iter, "iteration cap")->capture_default_str();
  app.add_option("--out", o.out, "output CSV path (default: stdout)");
  app.add_option("--dump-matrix,--dump_matrix", o.dump_dir,
                 "write the assembled system as MatrixMarket A.mtx/b.mtx into this directory");

  CLI::App* cmd_solve = app.add_subcommand("solve", "one preconditioned Krylov solve");
  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "parameter-robustness sweep (one solve per grid point)");
  CLI::App* cmd_conv =
      app.add_subcommand("convergence", "direct-solve grid convergence study");
  CLI::App* cmd_cond =
      app.add_subcommand("cond", "condition number of the preconditioned operator");

  std::vector<double> sweep_S = default_sweep_S();
  std::vector<double> sweep_Da = default_sweep_Da();
  std::vector<double> sweep_alpha = default_sweep_alpha();
  std::vector<int> sweep_nx = default_sweep_nx();
  cmd_sweep->add_option("--S-list", sweep_S, "sweep values for S")->delimiter(',');
  cmd_sweep->add_option("--Da-list", sweep_Da, "sweep values for Da")->delimiter(',');
  cmd_sweep->add_option("--alpha-list", sweep_alpha, "sweep values for alpha")->delimiter(',');
  cmd_sweep->add_option("--nx-list", sweep_nx, "sweep values for nx")->delimiter(',');

  std::vector<int> conv_nx{16, 32, 64, 128};
  cmd_conv->add_option("--nx-list", conv_nx, "mesh sizes of the refinement study")
      ->delimiter(',');

  for (CLI::App* c : {cmd_solve, cmd_sweep, cmd_conv, cmd_cond}) c->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return sdlab::exit_config_error;
  }

  try {
    const RunConfig cfg = make_run_config(o);
    if (!o.dump_dir.empty()) dump_matrix_market(cfg, o.dump_dir);
    OutputSink sink(o.out);

    if (cmd_solve->parsed()) {
      const RunResult r = run_solve(cfg);
      sink.stream() << csv_header_solve() << '\n' << csv_row(r) << '\n';
      sink.finish();
      return r.converged ? exit_ok : exit_no_convergence;
    }
    if (cmd_sweep->parsed()) {
      SweepConfig sc;
      sc.base = cfg;
      sc.S = sweep_S;
      sc.Da = sweep_Da;
      sc.alpha = sweep_alpha;
      sc.nx = sweep_nx;
      const std::vector<RunResult> rows = run_sweep(sc);
      write_csv(sink.stream(), rows);
      sink.finish();
      for (const RunResult& r : rows)
        if (!r.converged) return exit_no_convergence;
      return exit_ok;
    }
    if (cmd_conv->parsed()) {
      const std::vector<ConvergenceRow> rows = run_convergence(cfg, conv_nx);
      write_csv(sink.stream(), rows);
      sink.finish();
      return exit_ok;
    }
    // cond
    const double c = run_condition(cfg);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%s,%.17g,%.17g,%.17g,%d,%.17g",
                  cfg.formulation == Formulation::la ? "la" : "ro",
                  cfg.precond == PrecondKind::exact ? "exact" : "naive", cfg.params.mu,
                  cfg.params.k, cfg.params.alpha, cfg.nx, c);
    sink.stream() << "formulation,precond,mu,k,alpha,nx,cond\n" << buf << '\n';
    sink.finish();
    return exit_ok;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << '\n';
    return exit_capability_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
