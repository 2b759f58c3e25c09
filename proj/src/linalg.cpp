#include "sdlab/linalg.hpp"

#include <lapacke.h>

#include <Eigen/SparseLU>
#include <cmath>
#include <ostream>
#include <random>

namespace sdlab {

namespace {
using ColMat = Eigen::SparseMatrix<double>;

void format_double(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf;
}
}  // namespace

double symmetry_gap(const SparseMatrix& A) {
  SparseMatrix At = SparseMatrix(A.transpose());
  SparseMatrix D = A - At;
  double gap = 0;
  for (int r = 0; r < D.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(D, r); it; ++it) gap = std::max(gap, std::abs(it.value()));
  return gap;
}

bool is_symmetric(const SparseMatrix& A, double tol) {
  return A.rows() == A.cols() && symmetry_gap(A) <= tol;
}

SparseMatrix slice(const SparseMatrix& A, int r0, int nr, int c0, int nc) {
  std::vector<Triplet> t;
  for (int r = r0; r < r0 + nr; ++r)
    for (SparseMatrix::InnerIterator it(A, r); it; ++it)
      if (it.col() >= c0 && it.col() < c0 + nc) t.emplace_back(r - r0, int(it.col()) - c0, it.value());
  SparseMatrix B(nr, nc);
  B.setFromTriplets(t.begin(), t.end());
  B.makeCompressed();
  return B;
}

Mat to_dense(const SparseMatrix& A) { return Mat(A); }

struct Factorization::Impl {
  FactorKind kind;
  Eigen::SimplicialLDLT<ColMat> ldlt;
  Eigen::SparseLU<ColMat> lu;
};

Factorization::Factorization(const SparseMatrix& A, FactorKind kind)
    : impl_(std::make_unique<Impl>()), n_(int(A.rows())) {
  if (A.rows() != A.cols()) throw ConfigError("factorize: matrix must be square");
  impl_->kind = kind;
  ColMat Ac(A);
  Ac.makeCompressed();
  if (kind == FactorKind::spd) {
    impl_->ldlt.compute(Ac);
    if (impl_->ldlt.info() != Eigen::Success)
      throw DefinitenessError("spd factorization failed structurally");
    const Vec d = impl_->ldlt.vectorD();
    for (int i = 0; i < d.size(); ++i)
      if (!(d[i] > 0) || !std::isfinite(d[i]))
        throw DefinitenessError("spd factorization met a nonpositive pivot");
  } else {
    impl_->lu.compute(Ac);
    if (impl_->lu.info() != Eigen::Success)
      throw std::runtime_error("sparse LU factorization failed (singular matrix?)");
  }
}

Factorization::~Factorization() = default;
Factorization::Factorization(Factorization&&) noexcept = default;
Factorization& Factorization::operator=(Factorization&&) noexcept = default;

Vec Factorization::solve(const Vec& b) const {
  if (b.size() != n_) throw ConfigError("factorize/solve: size mismatch");
  return impl_->kind == FactorKind::spd ? Vec(impl_->ldlt.solve(b)) : Vec(impl_->lu.solve(b));
}

SolveReport minres(const LinOp& A, const LinOp& B, const Vec& b, Vec& x, double reduction,
                   int max_iter) {
  SolveReport rep;
  const int n = int(b.size());
  if (x.size() != n) throw ConfigError("minres: x0 size mismatch");

  Vec r1 = b - A(x);
  Vec y = B(r1);
  double dot = r1.dot(y);
  if (dot < 0) {
    if (std::abs(dot) <= 1e-13 * (r1.norm() * y.norm() + 1e-300))
      dot = 0;
    else
      throw std::runtime_error("minres: preconditioner is not positive definite");
  }
  const double beta1 = std::sqrt(dot);
  rep.residual_history.push_back(beta1);
  if (beta1 == 0) {  // x0 already solves the system
    rep.converged = true;
    return rep;
  }

  double oldb = 0, beta = beta1, dbar = 0, epsln = 0, phibar = beta1;
  double cs = -1, sn = 0;
  Vec w = Vec::Zero(n), w2 = Vec::Zero(n), r2 = r1;

  for (int itn = 1; itn <= max_iter; ++itn) {
    const double s = 1.0 / beta;
    Vec v = s * y;
    y = A(v);
    if (itn >= 2) y -= (beta / oldb) * r1;
    const double alfa = v.dot(y);
    y -= (alfa / beta) * r2;
    r1 = r2;
    r2 = y;
    y = B(r2);
    oldb = beta;
    double bdot = r2.dot(y);
    if (bdot < 0) {
      if (std::abs(bdot) <= 1e-13 * (r2.norm() * y.norm() + 1e-300))
        bdot = 0;
      else
        throw std::runtime_error("minres: preconditioner is not positive definite");
    }
    beta = std::sqrt(bdot);
    if (!std::isfinite(beta)) throw std::runtime_error("minres: breakdown (NaN)");

    // one Givens step of the QR factorization of the tridiagonal
    const double oldeps = epsln;
    const double delta = cs * dbar + sn * alfa;
    const double gbar = sn * dbar - cs * alfa;
    epsln = sn * beta;
    dbar = -cs * beta;
    double gamma = std::sqrt(gbar * gbar + beta * beta);
    gamma = std::max(gamma, 1e-300);
    cs = gbar / gamma;
    sn = beta / gamma;
    const double phi = cs * phibar;
    phibar = sn * phibar;

    Vec w1 = w2;
    w2 = w;
    w = (v - oldeps * w1 - delta * w2) / gamma;
    x += phi * w;

    rep.iterations = itn;
    rep.residual_history.push_back(phibar);
    if (phibar <= reduction * beta1) {
      rep.converged = true;
      break;
    }
  }
  return rep;
}

Vec random_initial_guess(std::uint64_t seed, int n, const std::vector<std::uint8_t>& mask) {
  if (!mask.empty() && int(mask.size()) != n)
    throw ConfigError("random_initial_guess: mask size mismatch");
  std::mt19937_64 gen(seed);
  Vec x(n);
  for (int i = 0; i < n; ++i) x[i] = double(gen() >> 11) * 0x1.0p-53;
  if (!mask.empty())
    for (int i = 0; i < n; ++i)
      if (mask[i]) x[i] = 0.0;
  return x;
}

DenseEigenDecomp dense_sym_gevp(const Mat& A, const Vec& mass_diag) {
  const int n = int(A.rows());
  if (A.cols() != n || mass_diag.size() != n) throw ConfigError("dense_sym_gevp: size mismatch");
  for (int i = 0; i < n; ++i)
    if (!(mass_diag[i] > 0)) throw ConfigError("dense_sym_gevp: mass entries must be positive");
  Mat Z = A;
  Mat B = Mat::Zero(n, n);
  B.diagonal() = mass_diag;
  Vec w(n);
  lapack_int info =
      LAPACKE_dsygvd(LAPACK_COL_MAJOR, 1, 'V', 'L', n, Z.data(), n, B.data(), n, w.data());
  if (info != 0) throw std::runtime_error("dsygvd failed, info=" + std::to_string(info));
  DenseEigenDecomp d;
  d.eigenvalues = w;
  d.vectors = Z;
  d.mass = mass_diag;
  return d;
}

Vec dense_pencil_eigenvalues(Mat A, Mat N) {
  const int n = int(A.rows());
  if (A.cols() != n || N.rows() != n || N.cols() != n)
    throw ConfigError("dense_pencil_eigenvalues: size mismatch");
  Vec w(n);
  lapack_int info =
      LAPACKE_dsygv(LAPACK_COL_MAJOR, 1, 'N', 'L', n, A.data(), n, N.data(), n, w.data());
  if (info > n) throw DefinitenessError("pencil right-hand matrix is not positive definite");
  if (info != 0) throw std::runtime_error("dsygv failed, info=" + std::to_string(info));
  return w;
}

Vec dense_sym_eigenvalues(Mat A) {
  const int n = int(A.rows());
  Vec w(n);
  lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, A.data(), n, w.data());
  if (info != 0) throw std::runtime_error("dsyevd failed, info=" + std::to_string(info));
  return w;
}

Mat dense_spd_inverse(Mat A) {
  const int n = int(A.rows());
  lapack_int info = LAPACKE_dpotrf(LAPACK_COL_MAJOR, 'L', n, A.data(), n);
  if (info != 0) throw DefinitenessError("dpotrf failed: matrix not positive definite");
  info = LAPACKE_dpotri(LAPACK_COL_MAJOR, 'L', n, A.data(), n);
  if (info != 0) throw std::runtime_error("dpotri failed, info=" + std::to_string(info));
  A.triangularView<Eigen::StrictlyUpper>() = A.transpose().triangularView<Eigen::StrictlyUpper>();
  return A;
}

double condition_number(const Mat& A, const Mat& N) {
  if (A.rows() > kDenseThreshold)
    throw CapabilityError("condition_number: size " + std::to_string(A.rows()) +
                          " exceeds the dense-path threshold " + std::to_string(kDenseThreshold));
  Vec theta = dense_pencil_eigenvalues(A, N);
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  for (int i = 0; i < theta.size(); ++i) {
    lo = std::min(lo, std::abs(theta[i]));
    hi = std::max(hi, std::abs(theta[i]));
  }
  return lo == 0 ? std::numeric_limits<double>::infinity() : hi / lo;
}

double condition_number(const SparseMatrix& A, const Mat& N) {
  if (A.rows() > kDenseThreshold)
    throw CapabilityError("condition_number: size " + std::to_string(A.rows()) +
                          " exceeds the dense-path threshold " + std::to_string(kDenseThreshold));
  return condition_number(to_dense(A), N);
}

void write_matrix_market(std::ostream& os, const SparseMatrix& A) {
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << A.rows() << " " << A.cols() << " " << A.nonZeros() << "\n";
  for (int r = 0; r < A.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(A, r); it; ++it) {
      os << (r + 1) << " " << (it.col() + 1) << " ";
      format_double(os, it.value());
      os << "\n";
    }
}

void write_matrix_market(std::ostream& os, const Vec& v) {
  os << "%%MatrixMarket matrix array real general\n";
  os << v.size() << " 1\n";
  for (int i = 0; i < v.size(); ++i) {
    format_double(os, v[i]);
    os << "\n";
  }
}

}  // namespace sdlab
