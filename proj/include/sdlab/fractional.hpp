#pragma once

#include "sdlab/common.hpp"
#include "sdlab/linalg.hpp"
#include "sdlab/mesh.hpp"

namespace sdlab {

/// Boundary handling of the interface Laplacian eigenproblem.
/// neumann: stiffness + facet-mass shift (nonsingular; constant mode has eigenvalue 1).
/// dirichlet: pure stiffness with half-cell endpoint closures (used when the interface
/// endpoints touch pressure-Dirichlet lateral boundaries).
enum class InterfaceVariant { neumann, dirichlet };

/// Pick the variant implied by a boundary layout.
InterfaceVariant variant_for_layout(const BoundaryLayout& layout);

/// 1D interface operator: A (tridiagonal TPFA) and the diagonal facet mass M.
struct InterfaceOperator {
  SparseMatrix A;
  Vec mass;
  InterfaceVariant variant;
};

InterfaceOperator interface_laplacian(const StaggeredMesh& mesh, InterfaceVariant variant);
InterfaceOperator interface_laplacian(int nx, InterfaceVariant variant);

/// Spectral realization of scale * (interface operator)^exponent through the weighted
/// generalized eigenproblem A u = lambda M u:  S = scale * M U E^exponent U^T M.
struct SpectralFractionalOp {
  DenseEigenDecomp decomp;
  double scale = 1.0;       // (2 mu)^{-1} in the preconditioners
  double exponent = -0.5;
  InterfaceVariant variant = InterfaceVariant::neumann;
  Mat S;  // dense symmetric positive definite
};

SpectralFractionalOp build_fractional(const InterfaceOperator& op, double mu,
                                      double exponent = -0.5);

/// Congruence lift P^T S P into the Darcy pressure space, where P restricts a Darcy
/// cell vector to the interface-adjacent (top row) cells. Supported only there.
SparseMatrix lift_to_pressure(const SpectralFractionalOp& S, const StaggeredMesh& mesh);

}  // namespace sdlab
