#include "sdlab/precond.hpp"

namespace sdlab {

Vec PrecondBlock::apply(const Vec& x) const {
  switch (type) {
    case Type::diag:
      return x.cwiseQuotient(diag);
    case Type::factor:
      return solver->solve(x);
    case Type::sum_of_inverses:
      return solver->solve(x) + solver2->solve(x);
  }
  throw std::logic_error("unreachable");
}

Mat PrecondBlock::dense_norm() const {
  switch (type) {
    case Type::diag:
      return Mat(diag.asDiagonal());
    case Type::factor:
      return to_dense(norm);
    case Type::sum_of_inverses: {
      Mat applier = dense_spd_inverse(to_dense(norm)) + dense_spd_inverse(to_dense(norm2));
      return dense_spd_inverse(std::move(applier));
    }
  }
  throw std::logic_error("unreachable");
}

Vec BlockPreconditioner::apply(const Vec& x) const {
  Vec y(n);
  for (const PrecondBlock& b : diag_blocks)
    y.segment(b.offset, b.size) = b.apply(x.segment(b.offset, b.size));
  return y;
}

LinOp BlockPreconditioner::as_linop() const {
  return [self = *this](const Vec& v) { return self.apply(v); };
}

Mat BlockPreconditioner::dense_norm() const {
  if (n > kDenseThreshold)
    throw CapabilityError("preconditioner norm matrix too large for the dense path");
  Mat N = Mat::Zero(n, n);
  for (const PrecondBlock& b : diag_blocks)
    N.block(b.offset, b.offset, b.size, b.size) = b.dense_norm();
  return N;
}

namespace {

PrecondBlock velocity_factor_block(const AssembledSystem& sys) {
  PrecondBlock b;
  b.type = PrecondBlock::Type::factor;
  b.offset = 0;
  b.size = sys.blocks.n_u;
  b.norm = sys.velocity_block();
  b.solver = std::make_shared<Factorization>(b.norm, FactorKind::spd);
  return b;
}

PrecondBlock pressure_mass_block(const AssembledSystem& sys) {
  PrecondBlock b;
  b.type = PrecondBlock::Type::diag;
  b.offset = sys.blocks.off_ps();
  b.size = sys.blocks.n_ps;
  b.diag = sys.cell_volumes_s() / (2.0 * sys.params.mu);
  return b;
}

// coupled (pd, pg) norm:
//   [ kappa L (+ mass_shift I) + t_if I_top , -t_if C ; -t_if C^T , t_if I + S ]
// with C the top-cell/facet incidence; factorized as one SPD unit. An empty S
// omits the fractional part (naive variant).
PrecondBlock coupled_darcy_block(const AssembledSystem& sys, const Mat& S, double mass_shift) {
  const StaggeredMesh& m = sys.mesh;
  const double t_if = sys.t_interface();
  const int n_pd = sys.blocks.n_pd, n_pg = sys.blocks.n_pg;

  PrecondBlock b;
  b.type = PrecondBlock::Type::factor;
  b.offset = sys.blocks.off_pd();
  b.size = n_pd + n_pg;
  std::vector<Triplet> T;
  for (int r = 0; r < sys.darcy_stiff.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(sys.darcy_stiff, r); it; ++it)
      T.emplace_back(r, int(it.col()), it.value());
  if (mass_shift != 0.0)
    for (int K = 0; K < n_pd; ++K) T.emplace_back(K, K, mass_shift);
  for (int i = 0; i < m.nx; ++i) {
    const int K = m.pd(i, m.ny_d - 1), G = n_pd + i;
    T.emplace_back(K, K, t_if);
    T.emplace_back(G, G, t_if);
    T.emplace_back(K, G, -t_if);
    T.emplace_back(G, K, -t_if);
  }
  for (int i = 0; i < n_pg; ++i)
    for (int j = 0; j < n_pg; ++j)
      if (S.size() > 0 && S(i, j) != 0.0) T.emplace_back(n_pd + i, n_pd + j, S(i, j));
  b.norm = SparseMatrix(b.size, b.size);
  b.norm.setFromTriplets(T.begin(), T.end());
  b.norm.makeCompressed();
  b.solver = std::make_shared<Factorization>(b.norm, FactorKind::spd);
  return b;
}

}  // namespace

BlockPreconditioner build_precond_la(const AssembledSystem& sys, const Mat& S) {
  if (sys.formulation != Formulation::la)
    throw ConfigError("build_precond_la: system is not the multiplier formulation");

  BlockPreconditioner P;
  P.formulation = sys.formulation;
  P.kind = PrecondKind::exact;
  P.n = sys.blocks.size();
  P.diag_blocks.push_back(velocity_factor_block(sys));
  P.diag_blocks.push_back(pressure_mass_block(sys));
  P.diag_blocks.push_back(coupled_darcy_block(sys, S, 0.0));
  return P;
}

BlockPreconditioner build_precond_ro(const AssembledSystem& sys, const SparseMatrix& S_lifted) {
  if (sys.formulation != Formulation::ro)
    throw ConfigError("build_precond_ro: system is not the Robin formulation");
  const StaggeredMesh& m = sys.mesh;
  const double t_if = sys.t_interface();

  BlockPreconditioner P;
  P.formulation = sys.formulation;
  P.kind = PrecondKind::exact;
  P.n = sys.blocks.size();
  P.diag_blocks.push_back(velocity_factor_block(sys));
  P.diag_blocks.push_back(pressure_mass_block(sys));

  PrecondBlock b;
  b.type = PrecondBlock::Type::sum_of_inverses;
  b.offset = sys.blocks.off_pd();
  b.size = sys.blocks.n_pd;
  SparseMatrix shift(b.size, b.size);
  {
    std::vector<Triplet> T;
    for (int i = 0; i < m.nx; ++i) T.emplace_back(m.pd(i, m.ny_d - 1), m.pd(i, m.ny_d - 1), t_if);
    shift.setFromTriplets(T.begin(), T.end());
  }
  b.norm = sys.darcy_stiff + shift;
  b.norm2 = sys.darcy_stiff + S_lifted;
  b.norm.makeCompressed();
  b.norm2.makeCompressed();
  b.solver = std::make_shared<Factorization>(b.norm, FactorKind::spd);
  b.solver2 = std::make_shared<Factorization>(b.norm2, FactorKind::spd);
  P.diag_blocks.push_back(std::move(b));
  return P;
}

BlockPreconditioner build_precond_naive(const AssembledSystem& sys) {
  const StaggeredMesh& m = sys.mesh;
  // Same structure as the exact preconditioners with the fractional operator
  // omitted; the Darcy block gains a kappa-scaled cell-mass shift so it stays
  // definite even without pressure Dirichlet data.
  const double mass_shift = sys.params.kappa() * m.hx * m.hy_d;

  BlockPreconditioner P;
  P.formulation = sys.formulation;
  P.kind = PrecondKind::naive;
  P.n = sys.blocks.size();
  P.diag_blocks.push_back(velocity_factor_block(sys));
  P.diag_blocks.push_back(pressure_mass_block(sys));

  if (sys.formulation == Formulation::la) {
    P.diag_blocks.push_back(coupled_darcy_block(sys, Mat(), mass_shift));
    return P;
  }

  PrecondBlock b;
  b.type = PrecondBlock::Type::sum_of_inverses;
  b.offset = sys.blocks.off_pd();
  b.size = sys.blocks.n_pd;
  SparseMatrix shift(b.size, b.size), mass(b.size, b.size);
  {
    const double t_if = sys.t_interface();
    std::vector<Triplet> T;
    for (int i = 0; i < m.nx; ++i) T.emplace_back(m.pd(i, m.ny_d - 1), m.pd(i, m.ny_d - 1), t_if);
    shift.setFromTriplets(T.begin(), T.end());
  }
  mass.setIdentity();
  b.norm = sys.darcy_stiff + shift;
  b.norm2 = sys.darcy_stiff + SparseMatrix(mass_shift * mass);
  b.norm.makeCompressed();
  b.norm2.makeCompressed();
  b.solver = std::make_shared<Factorization>(b.norm, FactorKind::spd);
  b.solver2 = std::make_shared<Factorization>(b.norm2, FactorKind::spd);
  P.diag_blocks.push_back(std::move(b));
  return P;
}

BlockPreconditioner build_preconditioner(const AssembledSystem& sys, PrecondKind kind,
                                         InterfaceVariant variant) {
  if (kind == PrecondKind::naive) return build_precond_naive(sys);
  InterfaceOperator op = interface_laplacian(sys.mesh, variant);
  SpectralFractionalOp f = build_fractional(op, sys.params.mu);
  if (sys.formulation == Formulation::la) return build_precond_la(sys, f.S);
  return build_precond_ro(sys, lift_to_pressure(f, sys.mesh));
}

BlockPreconditioner build_preconditioner(const AssembledSystem& sys, PrecondKind kind) {
  return build_preconditioner(sys, kind, variant_for_layout(sys.mesh.layout));
}

}  // namespace sdlab
