#include <cmath>

#include "doctest.h"
#include "sdlab/fractional.hpp"

using namespace sdlab;

namespace {

// Independent oracle: scale * M^{1/2} f(M^{-1/2} A M^{-1/2}) M^{1/2} with f(x) = x^e,
// evaluated through Eigen's self-adjoint eigensolver (a different code path than the
// LAPACK generalized solver used by the implementation).
Mat matrix_function_oracle(const InterfaceOperator& op, double scale, double expo) {
  const Mat A = to_dense(op.A);
  const Vec ms = op.mass.cwiseSqrt();
  const Mat C = ms.cwiseInverse().asDiagonal() * A * ms.cwiseInverse().asDiagonal();
  Eigen::SelfAdjointEigenSolver<Mat> es(C);
  Vec f = es.eigenvalues();
  for (int i = 0; i < f.size(); ++i) f[i] = std::pow(f[i], expo);
  const Mat core = es.eigenvectors() * f.asDiagonal() * es.eigenvectors().transpose();
  return scale * Mat(ms.asDiagonal() * core * ms.asDiagonal());
}

}  // namespace

TEST_CASE("fractional: variant selection follows the Darcy lateral tags") {
  CHECK(variant_for_layout(BoundaryLayout::top_dirichlet()) == InterfaceVariant::neumann);
  CHECK(variant_for_layout(BoundaryLayout::side_dirichlet()) == InterfaceVariant::dirichlet);
  // mixed lateral tags keep the Neumann eigenproblem
  BoundaryLayout mixed = BoundaryLayout::side_dirichlet();
  mixed.darcy_left = DarcyBc::flux_neumann;
  CHECK(variant_for_layout(mixed) == InterfaceVariant::neumann);
}

TEST_CASE("fractional: two-facet Neumann operator is the hand-assembled pair") {
  const InterfaceOperator op = interface_laplacian(2, InterfaceVariant::neumann);
  const Mat A = to_dense(op.A);
  REQUIRE(A.rows() == 2);
  // interior transmissibility 1/hx = 2; facet-mass shift hx = 1/2 on the diagonal
  CHECK(A(0, 0) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(A(1, 1) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(A(0, 1) == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(A(1, 0) == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(op.mass[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(op.mass[1] == doctest::Approx(0.5).epsilon(1e-15));

  const SpectralFractionalOp f = build_fractional(op, 1.0);
  CHECK(f.decomp.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.decomp.eigenvalues[1] == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("fractional: two-facet spectral matrix at scale one") {
  // mu = 1/2 makes the (2 mu)^{-1} prefactor equal to 1
  const SpectralFractionalOp f =
      build_fractional(interface_laplacian(2, InterfaceVariant::neumann), 0.5);
  CHECK(f.scale == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(f.S(0, 0) - 1.0 / 3.0) <= 1e-12);
  CHECK(std::abs(f.S(1, 1) - 1.0 / 3.0) <= 1e-12);
  CHECK(std::abs(f.S(0, 1) - 1.0 / 6.0) <= 1e-12);
  CHECK(std::abs(f.S(1, 0) - 1.0 / 6.0) <= 1e-12);

  // constant vector is the lambda = 1 eigenvector: S.(1,1) = M.(1,1)
  Vec ones = Vec::Ones(2);
  CHECK(((f.S * ones) - Vec::Constant(2, 0.5)).lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("fractional: Neumann constant mode has eigenvalue one at every size") {
  for (int nx : {2, 4, 8, 16, 64, 256}) {
    const InterfaceOperator op = interface_laplacian(nx, InterfaceVariant::neumann);
    const Vec r = op.A * Vec::Ones(nx) - Vec(op.mass);
    CHECK(r.lpNorm<Eigen::Infinity>() <= 1e-12);  // A.1 = M.1
    const SpectralFractionalOp f = build_fractional(op, 1.0);
    CHECK(f.decomp.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("fractional: Dirichlet variant is definite with active endpoint closures") {
  const InterfaceOperator op = interface_laplacian(2, InterfaceVariant::dirichlet);
  const Mat A = to_dense(op.A);
  // stiffness [[2,-2],[-2,2]] plus half-cell endpoint closures 2/hx = 4
  CHECK(A(0, 0) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(A(0, 1) == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK((A * Vec::Ones(2)).lpNorm<Eigen::Infinity>() > 1.0);  // constants are not in the kernel

  for (int nx : {2, 5, 8, 32}) {
    const SpectralFractionalOp f =
        build_fractional(interface_laplacian(nx, InterfaceVariant::dirichlet), 1.0);
    CHECK(f.decomp.eigenvalues[0] > 0.0);
  }
}

TEST_CASE("fractional: spectral matrix matches the matrix-function oracle") {
  for (const InterfaceVariant v : {InterfaceVariant::neumann, InterfaceVariant::dirichlet})
    for (int nx : {2, 3, 5, 8})
      for (double mu : {1.0, 0.5, 1e-3}) {
        const InterfaceOperator op = interface_laplacian(nx, v);
        const SpectralFractionalOp f = build_fractional(op, mu);
        const Mat ref = matrix_function_oracle(op, 1.0 / (2.0 * mu), -0.5);
        CHECK((f.S - ref).lpNorm<Eigen::Infinity>() <= 1e-10 * ref.lpNorm<Eigen::Infinity>());
      }
}

TEST_CASE("fractional: spectral reconstruction identity on every eigenvector") {
  const InterfaceOperator op = interface_laplacian(8, InterfaceVariant::neumann);
  const SpectralFractionalOp f = build_fractional(op, 2.0);
  for (int i = 0; i < 8; ++i) {
    const Vec u = f.decomp.vectors.col(i);
    const Vec want =
        f.scale * std::pow(f.decomp.eigenvalues[i], -0.5) * Vec(op.mass.asDiagonal() * u);
    CHECK((f.S * u - want).lpNorm<Eigen::Infinity>() <= 1e-10);
  }
}

TEST_CASE("fractional: scale and exponent laws") {
  const InterfaceOperator op = interface_laplacian(6, InterfaceVariant::neumann);
  const Mat S1 = build_fractional(op, 1.0).S;
  const Mat S2 = build_fractional(op, 2.0).S;
  CHECK((S1 - 2.0 * S2).lpNorm<Eigen::Infinity>() <= 1e-14);  // doubling mu halves S

  // exponent 0 collapses to the scaled mass matrix
  const Mat S0 = build_fractional(op, 0.5, 0.0).S;
  CHECK((S0 - Mat(op.mass.asDiagonal())).lpNorm<Eigen::Infinity>() <= 1e-12);

  // symmetry and positive definiteness of the -1/2 realization
  const Mat Sh = build_fractional(op, 1.0).S;
  CHECK((Sh - Sh.transpose()).lpNorm<Eigen::Infinity>() <= 1e-12);
  CHECK(dense_sym_eigenvalues(Sh)[0] > 0.0);
}

TEST_CASE("fractional: lift into the Darcy pressure space") {
  const StaggeredMesh m = build_mesh(2, 2, 2);
  const SpectralFractionalOp f =
      build_fractional(interface_laplacian(m, InterfaceVariant::neumann), 0.5);
  const SparseMatrix L = lift_to_pressure(f, m);
  REQUIRE(L.rows() == m.n_pd());
  CHECK(symmetry_gap(L) == 0.0);

  const Mat Ld = to_dense(L);
  // supported only on the interface-adjacent (top row) cells, equal to S entrywise
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(Ld(m.pd(i, 1), m.pd(j, 1)) == doctest::Approx(f.S(i, j)).epsilon(1e-14));
  for (int c = 0; c < m.n_pd(); ++c) {
    CHECK(Ld(m.pd(0, 0), c) == 0.0);
    CHECK(Ld(m.pd(1, 0), c) == 0.0);
  }

  // vectors vanishing on the top row are annihilated
  Vec x = Vec::Zero(m.n_pd());
  x[m.pd(0, 0)] = 3.0;
  x[m.pd(1, 0)] = -2.0;
  CHECK((L * x).lpNorm<Eigen::Infinity>() == 0.0);
}
