#include <random>
#include <sstream>

#include "doctest.h"
#include "sdlab/linalg.hpp"

using namespace sdlab;

namespace {

SparseMatrix from_triplets(int n, int m, std::vector<Triplet> t) {
  SparseMatrix A(n, m);
  A.setFromTriplets(t.begin(), t.end());
  A.makeCompressed();
  return A;
}

SparseMatrix sparse_of(const Mat& D) {
  std::vector<Triplet> t;
  for (int i = 0; i < D.rows(); ++i)
    for (int j = 0; j < D.cols(); ++j)
      if (D(i, j) != 0.0) t.emplace_back(i, j, D(i, j));
  return from_triplets(int(D.rows()), int(D.cols()), std::move(t));
}

Mat random_spd(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat B(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B(i, j) = u(gen);
  return Mat(B * B.transpose() + double(n) * Mat::Identity(n, n));
}

}  // namespace

TEST_CASE("linalg: symmetry gap") {
  SparseMatrix A = from_triplets(2, 2, {{0, 0, 1.0}, {0, 1, 2.0}, {1, 0, 2.0 + 1e-3}});
  CHECK(symmetry_gap(A) == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK_FALSE(is_symmetric(A));
  CHECK(is_symmetric(A, 1e-2));

  SparseMatrix S = from_triplets(3, 3, {{0, 1, -4.0}, {1, 0, -4.0}, {2, 2, 7.0}});
  CHECK(symmetry_gap(S) == 0.0);
  CHECK(is_symmetric(S));

  // one-sided entries count against the gap
  SparseMatrix H = from_triplets(2, 2, {{0, 1, 3.0}});
  CHECK(symmetry_gap(H) == 3.0);
}

TEST_CASE("linalg: block slice") {
  Mat D(3, 4);
  D << 1, 2, 0, 3, 0, 4, 5, 0, 6, 0, 0, 7;
  const SparseMatrix A = sparse_of(D);
  CHECK(to_dense(slice(A, 1, 2, 1, 3)) == Mat(D.block(1, 1, 2, 3)));
  CHECK(to_dense(slice(A, 0, 3, 0, 4)) == D);
  CHECK(slice(A, 0, 2, 2, 2).nonZeros() == 2);
}

TEST_CASE("linalg: SPD factorization solves and guards definiteness") {
  const SparseMatrix D = from_triplets(2, 2, {{0, 0, 2.0}, {1, 1, 3.0}});
  Factorization f(D, FactorKind::spd);
  Vec b(2);
  b << 2.0, 3.0;
  CHECK((f.solve(b) - Vec::Ones(2)).lpNorm<Eigen::Infinity>() <= 1e-14);

  // 1D diffusion with identity shift (size 4) is SPD
  std::vector<Triplet> t;
  for (int i = 0; i < 4; ++i) t.emplace_back(i, i, 1.0);
  for (int i = 0; i + 1 < 4; ++i) {
    t.emplace_back(i, i, 1.0);
    t.emplace_back(i + 1, i + 1, 1.0);
    t.emplace_back(i, i + 1, -1.0);
    t.emplace_back(i + 1, i, -1.0);
  }
  const SparseMatrix L = from_triplets(4, 4, std::move(t));
  CHECK_NOTHROW(Factorization(L, FactorKind::spd));

  const SparseMatrix ind = from_triplets(2, 2, {{0, 0, 1.0}, {1, 1, -1.0}});
  CHECK_THROWS_AS(Factorization(ind, FactorKind::spd), DefinitenessError);
}

TEST_CASE("linalg: symmetric-indefinite factorization solves saddle systems") {
  // [2 1; 1 0] has one negative eigenvalue
  const SparseMatrix A = from_triplets(2, 2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 0, 1.0}});
  Factorization f(A, FactorKind::symmetric_indefinite);
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    Vec b(2);
    b << u(gen), u(gen);
    const Vec x = f.solve(b);
    CHECK((to_dense(A) * x - b).norm() <= 1e-12 * (b.norm() + 1.0));
  }
}

TEST_CASE("linalg: minres basics") {
  const Mat Ad = (Mat(2, 2) << 1.0, 0.0, 0.0, 2.0).finished();
  const LinOp A = [&](const Vec& v) { return Vec(Ad * v); };
  const LinOp I = [](const Vec& v) { return v; };
  Vec b(2);
  b << 1.0, 1.0;

  // two distinct eigenvalues: converges in <= 2 iterations
  Vec x = Vec::Zero(2);
  SolveReport rep = minres(A, I, b, x);
  CHECK(rep.converged);
  CHECK(rep.iterations <= 2);
  CHECK((Ad * x - b).norm() <= 1e-8);

  // preconditioner = exact inverse: identity preconditioned spectrum, 1 iteration
  Factorization f(sparse_of(Ad), FactorKind::spd);
  const LinOp B = [&](const Vec& v) { return f.solve(v); };
  x.setZero();
  rep = minres(A, B, b, x);
  CHECK(rep.converged);
  CHECK(rep.iterations <= 1);

  // starting at the solution: 0 iterations, converged
  Vec x0 = Ad.inverse() * b;
  rep = minres(A, I, b, x0);
  CHECK(rep.converged);
  CHECK(rep.iterations == 0);
  CHECK(rep.residual_history.size() == 1);

  // max_iter exhaustion flags non-convergence
  Mat big = random_spd(40, 3);
  const LinOp Abig = [&](const Vec& v) { return Vec(big * v); };
  Vec xb = Vec::Zero(40);
  rep = minres(Abig, I, Vec::Ones(40), xb, 1e-14, 3);
  CHECK_FALSE(rep.converged);
  CHECK(rep.iterations == 3);
}

TEST_CASE("linalg: minres recurrence history is monotone and scale invariant") {
  const Mat S = random_spd(30, 11);
  const LinOp I = [](const Vec& v) { return v; };
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec b(30), x0(30);
  for (int i = 0; i < 30; ++i) {
    b[i] = u(gen);
    x0[i] = u(gen);
  }

  const LinOp A = [&](const Vec& v) { return Vec(S * v); };
  Vec x = x0;
  const SolveReport rep = minres(A, I, b, x, 1e-10);
  CHECK(rep.converged);
  for (size_t i = 1; i < rep.residual_history.size(); ++i)
    CHECK(rep.residual_history[i] <= rep.residual_history[i - 1] * (1.0 + 1e-14));

  // A -> cA, b -> cb leaves the iteration count unchanged
  const double c = 37.5;
  const LinOp Ac = [&](const Vec& v) { return Vec(c * (S * v)); };
  Vec xc = x0;
  const SolveReport repc = minres(Ac, I, Vec(c * b), xc, 1e-10);
  CHECK(repc.iterations == rep.iterations);
  CHECK((xc - x).lpNorm<Eigen::Infinity>() <= 1e-8);
}

TEST_CASE("linalg: seeded initial guess stream") {
  const Vec a = random_initial_guess(42, 1000, {});
  const Vec b = random_initial_guess(42, 1000, {});
  CHECK(a == b);  // bitwise determinism
  CHECK(random_initial_guess(43, 1000, {}) != a);

  double mean = 0;
  for (int i = 0; i < a.size(); ++i) {
    CHECK(a[i] >= 0.0);
    CHECK(a[i] < 1.0);
    mean += a[i];
  }
  mean /= double(a.size());
  CHECK(mean > 0.4);
  CHECK(mean < 0.6);

  // documented generator: value = (mt19937_64 word >> 11) * 2^-53
  std::mt19937_64 gen(42);
  CHECK(a[0] == double(gen() >> 11) * 0x1.0p-53);

  // masked (Dirichlet) entries forced to zero without disturbing the stream
  std::vector<std::uint8_t> mask(1000, 0);
  mask[0] = mask[999] = 1;
  const Vec m = random_initial_guess(42, 1000, mask);
  CHECK(m[0] == 0.0);
  CHECK(m[999] == 0.0);
  CHECK(m[1] == a[1]);
  CHECK(m[500] == a[500]);

  const std::vector<std::uint8_t> all(5, 1);
  CHECK(random_initial_guess(1, 5, all).isZero(0.0));

  CHECK_THROWS_AS(random_initial_guess(1, 4, mask), ConfigError);
}

TEST_CASE("linalg: generalized eigensolver on the hand-solved 2x2") {
  Mat A(2, 2);
  A << 2.5, -2.0, -2.0, 2.5;
  Vec m(2);
  m << 0.5, 0.5;
  const DenseEigenDecomp d = dense_sym_gevp(A, m);
  REQUIRE(d.eigenvalues.size() == 2);
  CHECK(d.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(d.eigenvalues[1] == doctest::Approx(9.0).epsilon(1e-13));
  // eigenvectors are (1,1) and (1,-1) up to sign, M-orthonormal
  CHECK(std::abs(d.vectors(0, 0)) == doctest::Approx(std::abs(d.vectors(1, 0))).epsilon(1e-12));
  CHECK(d.vectors(0, 1) == doctest::Approx(-d.vectors(1, 1)).epsilon(1e-12));
  const Mat G = d.vectors.transpose() * m.asDiagonal() * d.vectors;
  CHECK((G - Mat::Identity(2, 2)).lpNorm<Eigen::Infinity>() <= 1e-12);

  // A = M: all eigenvalues 1
  const DenseEigenDecomp id = dense_sym_gevp(Mat(m.asDiagonal()), m);
  CHECK(id.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(id.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-13));

  Vec bad(2);
  bad << 1.0, 0.0;
  CHECK_THROWS_AS(dense_sym_gevp(A, bad), ConfigError);
}

TEST_CASE("linalg: generalized eigensolver against closed-form 2x2 and independent 3x3") {
  std::mt19937 gen(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    // 2x2: roots of det(A - lambda M) = 0 by the quadratic formula
    const double a = u(gen) + 2.0, c = u(gen) + 2.0, b = u(gen);
    const double m1 = u(gen) + 1.5, m2 = u(gen) + 1.5;
    Mat A(2, 2);
    A << a, b, b, c;
    Vec m(2);
    m << m1, m2;
    const double qa = m1 * m2, qb = -(a * m2 + c * m1), qc = a * c - b * b;
    const double disc = std::sqrt(qb * qb - 4 * qa * qc);
    const double lo = (-qb - disc) / (2 * qa), hi = (-qb + disc) / (2 * qa);
    const DenseEigenDecomp d = dense_sym_gevp(A, m);
    CHECK(d.eigenvalues[0] == doctest::Approx(lo).epsilon(1e-10));
    CHECK(d.eigenvalues[1] == doctest::Approx(hi).epsilon(1e-10));
  }
  for (int trial = 0; trial < 25; ++trial) {
    // 3x3: symmetrized pencil M^{-1/2} A M^{-1/2} via Eigen's own solver
    Mat B(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) B(i, j) = B(j, i) = u(gen);
    Vec m(3);
    for (int i = 0; i < 3; ++i) m[i] = u(gen) + 1.5;
    const Vec ms = m.cwiseSqrt().cwiseInverse();
    const Mat C = ms.asDiagonal() * B * ms.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Mat> ref(C);
    const DenseEigenDecomp d = dense_sym_gevp(B, m);
    for (int i = 0; i < 3; ++i)
      CHECK(d.eigenvalues[i] == doctest::Approx(ref.eigenvalues()[i]).epsilon(1e-10));
  }
}

TEST_CASE("linalg: generalized eigensolver residual property at size 50") {
  const Mat A = random_spd(50, 23);
  std::mt19937 gen(29);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  Vec m(50);
  for (int i = 0; i < 50; ++i) m[i] = u(gen);
  const DenseEigenDecomp d = dense_sym_gevp(A, m);
  const Mat R = A * d.vectors - m.asDiagonal() * d.vectors * d.eigenvalues.asDiagonal();
  CHECK(R.lpNorm<Eigen::Infinity>() <= 1e-10 * A.lpNorm<Eigen::Infinity>());
  const Mat G = d.vectors.transpose() * m.asDiagonal() * d.vectors;
  CHECK((G - Mat::Identity(50, 50)).lpNorm<Eigen::Infinity>() <= 1e-10);
  for (int i = 1; i < 50; ++i) CHECK(d.eigenvalues[i] >= d.eigenvalues[i - 1]);
}

TEST_CASE("linalg: dense helpers") {
  Mat A(2, 2);
  A << 2.0, 1.0, 1.0, 2.0;
  const Vec e = dense_sym_eigenvalues(A);
  CHECK(e[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(e[1] == doctest::Approx(3.0).epsilon(1e-13));

  const Vec p = dense_pencil_eigenvalues(Mat((Mat(2, 2) << 1, 0, 0, 4).finished()),
                                         Mat::Identity(2, 2));
  CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(p[1] == doctest::Approx(4.0).epsilon(1e-13));

  const Mat S = random_spd(6, 31);
  CHECK((S * dense_spd_inverse(S) - Mat::Identity(6, 6)).lpNorm<Eigen::Infinity>() <= 1e-11);
  CHECK_THROWS_AS(dense_spd_inverse(Mat((Mat(2, 2) << 1, 0, 0, -1).finished())),
                  DefinitenessError);
}

TEST_CASE("linalg: condition number") {
  const Mat S = random_spd(8, 37);
  CHECK(condition_number(S, S) == doctest::Approx(1.0).epsilon(1e-8));

  Mat D = Mat::Zero(2, 2);
  D(0, 0) = 1.0;
  D(1, 1) = 4.0;
  CHECK(condition_number(D, Mat::Identity(2, 2)) == doctest::Approx(4.0).epsilon(1e-12));

  // indefinite operators are measured through |theta|
  D(0, 0) = -2.0;
  D(1, 1) = 1.0;
  CHECK(condition_number(D, Mat::Identity(2, 2)) == doctest::Approx(2.0).epsilon(1e-12));

  SparseMatrix big(kDenseThreshold + 1, kDenseThreshold + 1);
  CHECK_THROWS_AS(condition_number(big, Mat()), CapabilityError);
}

TEST_CASE("linalg: MatrixMarket writers") {
  const SparseMatrix A = from_triplets(2, 3, {{0, 0, 1.5}, {1, 2, -2.0}});
  std::ostringstream os;
  write_matrix_market(os, A);
  CHECK(os.str() ==
        "%%MatrixMarket matrix coordinate real general\n"
        "2 3 2\n"
        "1 1 1.5\n"
        "2 3 -2\n");

  Vec v(2);
  v << 0.25, -1.0;
  std::ostringstream vs;
  write_matrix_market(vs, v);
  CHECK(vs.str() ==
        "%%MatrixMarket matrix array real general\n"
        "2 1\n"
        "0.25\n"
        "-1\n");
}
