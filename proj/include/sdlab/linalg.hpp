#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <vector>

#include "sdlab/common.hpp"

namespace sdlab {

/// Matrices larger than this never take the dense eigenvalue path.
inline constexpr int kDenseThreshold = 20000;

/// Largest |A_ij - A_ji| over the union sparsity pattern (0 means exactly symmetric).
double symmetry_gap(const SparseMatrix& A);
bool is_symmetric(const SparseMatrix& A, double tol = 0.0);

/// Copy of the block A[r0:r0+nr, c0:c0+nc).
SparseMatrix slice(const SparseMatrix& A, int r0, int nr, int c0, int nc);

Mat to_dense(const SparseMatrix& A);

enum class FactorKind { spd, symmetric_indefinite };

/// Direct factorization giving numerically exact solves (the "LU-inverted" blocks).
/// spd uses a sparse LDL^T and verifies all pivots are positive; symmetric_indefinite
/// uses sparse LU (only the solve contract matters).
class Factorization {
 public:
  Factorization(const SparseMatrix& A, FactorKind kind);
  ~Factorization();
  Factorization(Factorization&&) noexcept;
  Factorization& operator=(Factorization&&) noexcept;

  Vec solve(const Vec& b) const;
  int size() const { return n_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int n_ = 0;
};

using LinOp = std::function<Vec(const Vec&)>;

struct SolveReport {
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;  // preconditioned residual norms, [0] = initial
  double wall_time = 0.0;                // seconds, filled by callers that time the solve
};

/// Preconditioned MinRes (Paige-Saunders recurrence). Convergence is measured in the
/// B-inner-product residual norm sqrt(r^T B r) where B is the (SPD) preconditioner
/// application; terminates once it drops below reduction * initial. The recurrence
/// estimate is monotone nonincreasing by construction. b = A x exactly at x0 gives a
/// 0-iteration converged report.
SolveReport minres(const LinOp& A, const LinOp& B, const Vec& b, Vec& x,
                   double reduction = 1e-8, int max_iter = 10000);

/// Uniform draws in [0,1) from a fixed-seed mt19937_64 stream (platform independent:
/// value = (word >> 11) * 2^-53), with masked (Dirichlet) entries forced to 0.
/// mask may be empty (nothing masked) or size n with nonzero = masked.
Vec random_initial_guess(std::uint64_t seed, int n, const std::vector<std::uint8_t>& mask);

struct DenseEigenDecomp {
  Vec eigenvalues;  // ascending
  Mat vectors;      // columns, M-orthonormal: U^T diag(mass) U = I
  Vec mass;         // the diagonal mass matrix
};

/// Dense symmetric generalized eigenproblem A u = lambda M u with diagonal positive M.
DenseEigenDecomp dense_sym_gevp(const Mat& A, const Vec& mass_diag);

/// Eigenvalues only of A x = theta N x for symmetric A and SPD N (dense, ascending).
Vec dense_pencil_eigenvalues(Mat A, Mat N);

/// Eigenvalues only of a dense symmetric matrix (ascending).
Vec dense_sym_eigenvalues(Mat A);

/// Dense inverse of an SPD matrix.
Mat dense_spd_inverse(Mat A);

/// max|theta| / min|theta| over the generalized eigenvalues of A x = theta N x,
/// where N is the assembled (SPD) norm matrix whose inverse is the preconditioner.
/// Sizes above kDenseThreshold raise CapabilityError.
double condition_number(const Mat& A, const Mat& N);
double condition_number(const SparseMatrix& A, const Mat& N);

/// MatrixMarket writers (coordinate real general / array real).
void write_matrix_market(std::ostream& os, const SparseMatrix& A);
void write_matrix_market(std::ostream& os, const Vec& v);

}  // namespace sdlab
