#include "sdlab/fractional.hpp"

#include <cmath>

namespace sdlab {

InterfaceVariant variant_for_layout(const BoundaryLayout& layout) {
  const bool lateral_dirichlet = layout.darcy_left == DarcyBc::pressure_dirichlet &&
                                 layout.darcy_right == DarcyBc::pressure_dirichlet;
  return lateral_dirichlet ? InterfaceVariant::dirichlet : InterfaceVariant::neumann;
}

InterfaceOperator interface_laplacian(int nx, InterfaceVariant variant) {
  if (nx < 1) throw ConfigError("interface_laplacian: nx must be positive");
  const double hx = 1.0 / nx;
  std::vector<Triplet> T;
  auto link = [&](int a, int b, double t) {
    T.emplace_back(a, a, t);
    T.emplace_back(b, b, t);
    T.emplace_back(a, b, -t);
    T.emplace_back(b, a, -t);
  };
  for (int i = 0; i + 1 < nx; ++i) link(i, i + 1, 1.0 / hx);
  if (variant == InterfaceVariant::dirichlet) {
    T.emplace_back(0, 0, 2.0 / hx);
    T.emplace_back(nx - 1, nx - 1, 2.0 / hx);
  } else {
    // mass shift makes the all-Neumann stiffness positive definite; the constant
    // mode then sits at generalized eigenvalue exactly 1
    for (int i = 0; i < nx; ++i) T.emplace_back(i, i, hx);
  }
  InterfaceOperator op;
  op.A = SparseMatrix(nx, nx);
  op.A.setFromTriplets(T.begin(), T.end());
  op.A.makeCompressed();
  op.mass = Vec::Constant(nx, hx);
  op.variant = variant;
  return op;
}

InterfaceOperator interface_laplacian(const StaggeredMesh& mesh, InterfaceVariant variant) {
  return interface_laplacian(mesh.nx, variant);
}

SpectralFractionalOp build_fractional(const InterfaceOperator& op, double mu, double exponent) {
  if (mu <= 0) throw ConfigError("build_fractional: mu must be positive");
  SpectralFractionalOp f;
  f.decomp = dense_sym_gevp(to_dense(op.A), op.mass);
  f.scale = 1.0 / (2.0 * mu);
  f.exponent = exponent;
  f.variant = op.variant;
  const int n = int(op.mass.size());
  Vec e_pow(n);
  for (int i = 0; i < n; ++i) {
    const double lam = f.decomp.eigenvalues[i];
    if (lam <= 0) throw DefinitenessError("interface operator is not positive definite");
    e_pow[i] = std::pow(lam, exponent);
  }
  const Mat MU = op.mass.asDiagonal() * f.decomp.vectors;
  f.S = f.scale * (MU * e_pow.asDiagonal() * MU.transpose());
  f.S = 0.5 * (f.S + f.S.transpose()).eval();
  return f;
}

SparseMatrix lift_to_pressure(const SpectralFractionalOp& S, const StaggeredMesh& mesh) {
  const int nx = mesh.nx;
  if (S.S.rows() != nx)
    throw ConfigError("lift_to_pressure: facet count does not match the mesh");
  std::vector<Triplet> T;
  T.reserve(std::size_t(nx) * nx);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nx; ++j)
      T.emplace_back(mesh.pd(i, mesh.ny_d - 1), mesh.pd(j, mesh.ny_d - 1), S.S(i, j));
  SparseMatrix L(mesh.n_pd(), mesh.n_pd());
  L.setFromTriplets(T.begin(), T.end());
  L.makeCompressed();
  return L;
}

}  // namespace sdlab
