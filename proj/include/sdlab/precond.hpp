#pragma once

#include <memory>
#include <vector>

#include "sdlab/assembly.hpp"
#include "sdlab/common.hpp"
#include "sdlab/fractional.hpp"
#include "sdlab/linalg.hpp"

namespace sdlab {

enum class PrecondKind { exact, naive };

/// One diagonal block of a block preconditioner. The applier inverts the stored norm
/// matrix; sum_of_inverses applies two factorized solves and adds them (its norm is
/// the inverse of the sum of the two inverses, materialized densely on demand).
struct PrecondBlock {
  enum class Type { factor, diag, sum_of_inverses };
  Type type = Type::diag;
  int offset = 0;
  int size = 0;

  SparseMatrix norm;   // factor / first summand
  SparseMatrix norm2;  // second summand (sum_of_inverses)
  Vec diag;            // diagonal norm entries (diag type)

  std::shared_ptr<Factorization> solver;
  std::shared_ptr<Factorization> solver2;

  Vec apply(const Vec& x) const;
  Mat dense_norm() const;
};

/// Symmetric positive definite block-diagonal preconditioner.
struct BlockPreconditioner {
  Formulation formulation = Formulation::la;
  PrecondKind kind = PrecondKind::exact;
  std::vector<PrecondBlock> diag_blocks;
  int n = 0;

  Vec apply(const Vec& x) const;
  LinOp as_linop() const;
  /// Assembled norm matrix N (B = N^{-1}); dense, block diagonal.
  Mat dense_norm() const;
};

/// Exact block preconditioner for the multiplier formulation:
/// blkdiag( A_u, (2mu)^{-1} M_ps, coupled (pd,pg) block
///          [kappa L + beta_n^{-1} M,  -beta_n^{-1} M;
///           -beta_n^{-1} M,  beta_n^{-1} M + S ] )^{-1},
/// the (pd,pg) block factorized as one unit. S is the spectral fractional matrix
/// (pass a zero matrix to study its omission).
BlockPreconditioner build_precond_la(const AssembledSystem& sys, const Mat& S);

/// Exact block preconditioner for the Robin formulation: the velocity block includes
/// the beta_n facet mass; the pd block applies the SUM of two inverses
/// (kappa L + beta_n^{-1} I_G)^{-1} + (kappa L + lifted S)^{-1}.
BlockPreconditioner build_precond_ro(const AssembledSystem& sys, const SparseMatrix& S_lifted);

/// Baseline: the exact block structure with the fractional operator omitted and the
/// Darcy block regularized to kappa (L + M_cells) (without S the coupled block would
/// lose definiteness under all-Neumann outer closures). La keeps the coupled (pd,pg)
/// factor with S = 0; Ro keeps the sum of inverses with (kappa L + lifted S) replaced
/// by kappa (L + M_cells).
BlockPreconditioner build_precond_naive(const AssembledSystem& sys);

/// Convenience: build the requested preconditioner, constructing the fractional
/// operator variant implied by the mesh's boundary layout.
BlockPreconditioner build_preconditioner(const AssembledSystem& sys, PrecondKind kind);
BlockPreconditioner build_preconditioner(const AssembledSystem& sys, PrecondKind kind,
                                         InterfaceVariant variant);

}  // namespace sdlab
