#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sdlab/assembly.hpp"
#include "sdlab/precond.hpp"

namespace sdlab {

/// Named boundary layouts selectable on the CLI.
enum class BoundaryPreset {
  example21,  // top velocity Dirichlet, bottom pressure Dirichlet, lateral Neumann
  appendixC,  // swapped: lateral Dirichlet, top/bottom Neumann
};
BoundaryLayout boundary_layout(BoundaryPreset preset);

struct RunConfig {
  Formulation formulation = Formulation::la;
  PrecondKind precond = PrecondKind::exact;
  BoundaryPreset boundary = BoundaryPreset::example21;
  int nx = 16;
  int ny_s = 0;  // 0 -> nx
  int ny_d = 0;  // 0 -> nx
  PhysicalParams params{};
  BetaN beta_n{};
  std::uint64_t seed = 1;
  double reduction = 1e-8;
  int max_iter = 10000;
  /// Override the fractional variant implied by the layout (trend studies).
  std::optional<InterfaceVariant> fractional_variant;

  StaggeredMesh make_mesh() const;
};

struct RunResult {
  RunConfig cfg;
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;
  FieldErrors err;
  double wall_time_s = 0.0;
};

/// Assemble, precondition, MinRes from a seeded random initial guess, measure errors.
RunResult run_solve(const RunConfig& cfg);

/// Assemble and return the system together with its preconditioner (shared plumbing
/// for solves and condition numbers).
struct PreparedSystem {
  AssembledSystem sys;
  BlockPreconditioner precond;
};
PreparedSystem prepare(const RunConfig& cfg);

struct SweepConfig {
  RunConfig base{};
  std::vector<double> S = default_sweep_S();
  std::vector<double> Da = default_sweep_Da();
  std::vector<double> alpha = default_sweep_alpha();
  std::vector<int> nx = default_sweep_nx();
};

/// One run per grid point in deterministic grid order (S, Da, alpha, nx innermost).
/// Cases may execute concurrently; worker count is capped by the SDLAB_SWEEP_WORKERS
/// environment variable (default: hardware concurrency, at most 8).
std::vector<RunResult> run_sweep(const SweepConfig& cfg);

/// Direct-solve convergence study over the given mesh sizes.
std::vector<ConvergenceRow> run_convergence(const RunConfig& cfg, const std::vector<int>& nxs);

/// Condition number of the preconditioned operator (dense path, size-gated).
double run_condition(const RunConfig& cfg);

/// CSV emission. Columns for solve/sweep rows:
/// formulation,precond,mu,k,alpha,nx,iterations,converged,err_pD,err_pS,err_ux,err_uy,
/// err_pGamma,wall_time_s  (err_pGamma empty for Ro). Every column except wall_time_s
/// is bit-deterministic for a fixed config + seed.
std::string csv_header_solve();
std::string csv_row(const RunResult& r);
void write_csv(std::ostream& os, const std::vector<RunResult>& rows);

std::string csv_header_convergence();
void write_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);

/// Write A.mtx and b.mtx (MatrixMarket) for the assembled system of cfg.
void dump_matrix_market(const RunConfig& cfg, const std::string& dir);

/// Process exit codes used by the CLI.
enum ExitCode : int {
  exit_ok = 0,
  exit_config_error = 2,
  exit_no_convergence = 3,
  exit_capability_error = 4,
};

}  // namespace sdlab
