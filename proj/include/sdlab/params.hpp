#pragma once

#include <vector>

#include "sdlab/common.hpp"
#include "sdlab/mesh.hpp"

namespace sdlab {

/// Physical parameters of the coupled problem and the derived coefficients.
struct PhysicalParams {
  double mu = 1.0;     // viscosity
  double k = 1.0;      // permeability
  double alpha = 1.0;  // BJS slip coefficient

  double kappa() const { return k / mu; }
  double beta_tau() const { return mu * alpha / std::sqrt(k); }

  /// Throws ConfigError unless mu > 0, k > 0, alpha >= 0.
  void validate() const;
};

/// How the interface Robin coefficient beta_n is chosen.
enum class BetaNMode {
  consistent,  // beta_n = h_K / kappa (the only flux-consistent choice)
  fixed,       // beta_n = user value (model-parameter study)
};

struct BetaN {
  BetaNMode mode = BetaNMode::consistent;
  double value = 0.0;  // used in fixed mode

  /// Resolve to a number for the given mesh/params. Result is always > 0.
  double resolve(const StaggeredMesh& mesh, const PhysicalParams& p) const;
};

/// Dimensionless description: characteristic free-flow number S and Darcy number Da,
/// plus the characteristic scales (defaults 1).
struct DimensionlessParams {
  double S = 1.0;
  double Da = 1.0;
  double alpha = 1.0;
  double U0 = 1.0, DeltaP0 = 1.0, L0 = 1.0, rho0 = 1.0;
};

/// Map to physical parameters; with unit scales mu = S and k = Da.
PhysicalParams from_dimensionless(const DimensionlessParams& d);

/// One sweep case: parameters plus mesh size.
struct SweepCase {
  PhysicalParams params;
  double S;
  double Da;
  int nx;
};

/// Cartesian product in deterministic order (S outer, then Da, alpha, nx inner).
std::vector<SweepCase> sweep_grid(const std::vector<double>& S, const std::vector<double>& Da,
                                  const std::vector<double>& alpha, const std::vector<int>& nx);

/// The default robustness sweep axes.
const std::vector<double>& default_sweep_S();
const std::vector<double>& default_sweep_Da();
const std::vector<double>& default_sweep_alpha();
const std::vector<int>& default_sweep_nx();

}  // namespace sdlab
