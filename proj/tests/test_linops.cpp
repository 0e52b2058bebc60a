#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "qfuse/linops.hpp"

using namespace qfuse;

namespace {

Matrix random_matrix(Index n, Index p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix X(n, p);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < p; ++j) X(i, j) = gauss(rng);
  return X;
}

Vector random_vector(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = gauss(rng);
  return v;
}

// Dense counterpart of the difference operator, for cross-checks only.
Matrix dense_diff(Index p) {
  Matrix F = Matrix::Zero(p - 1, p);
  for (Index j = 0; j < p - 1; ++j) {
    F(j, j) = 1.0;
    F(j, j + 1) = -1.0;
  }
  return F;
}

}  // namespace

TEST_CASE("difference operator matches its dense form") {
  for (Index p : {2, 3, 17}) {
    DifferenceOperator F(p);
    CHECK(F.rows() == p - 1);
    CHECK(F.cols() == p);
    const Matrix Fd = dense_diff(p);
    const Vector beta = random_vector(p, 100 + p);
    const Vector v = random_vector(p - 1, 200 + p);
    CHECK((F.apply(beta) - Fd * beta).norm() < 1e-12);
    CHECK((F.applyAdjoint(v) - Fd.transpose() * v).norm() < 1e-12);
  }
}

TEST_CASE("difference operator adjoint identity <F b, v> == <b, F^T v>") {
  const Index p = 31;
  DifferenceOperator F(p);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const Vector b = random_vector(p, rng());
    const Vector v = random_vector(p - 1, rng());
    const double lhs = F.apply(b).dot(v);
    const double rhs = b.dot(F.applyAdjoint(v));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("dense design applies X and its adjoint") {
  const Index n = 9, p = 5;
  const Matrix X = random_matrix(n, p, 17);
  const Vector gamma = Vector::Ones(n);
  const DesignOperator D = DesignOperator::dense(X, gamma);
  CHECK(D.rows() == n);
  CHECK(D.cols() == p);
  CHECK(D.hasIntercept());

  const Vector beta = random_vector(p, 18);
  const Vector res = random_vector(n, 19);
  CHECK((D.apply(beta) - X * beta).norm() < 1e-12);
  CHECK((D.applyAdjoint(res) - X.transpose() * res).norm() < 1e-12);
  CHECK(D.gammaDot(res) == doctest::Approx(res.sum()));
}

TEST_CASE("identity design is a pass-through without intercept") {
  const Index p = 7;
  const DesignOperator D = DesignOperator::identity(p);
  CHECK(D.rows() == p);
  CHECK(D.cols() == p);
  CHECK_FALSE(D.hasIntercept());
  const Vector beta = random_vector(p, 21);
  CHECK((D.apply(beta) - beta).norm() == 0.0);
  CHECK((D.applyAdjoint(beta) - beta).norm() == 0.0);
  CHECK(D.gammaDot(beta) == 0.0);
}

TEST_CASE("stacked gram matches the dense matrix product") {
  const Index n = 8, p = 6;
  const Matrix X = random_matrix(n, p, 5);
  const Vector gamma = Vector::Ones(n);
  const DesignOperator D = DesignOperator::dense(X, gamma);
  const DifferenceOperator F(p);
  const double mu1 = 0.3, mu2 = 1.7;
  StackedGram g{&D, &F, mu1, mu2};
  CHECK(g.dim() == p + 1);

  // Dense Xbar = [gamma | X], Fbar = [0 | F]
  Matrix Xbar(n, p + 1);
  Xbar.col(0) = gamma;
  Xbar.rightCols(p) = X;
  Matrix Fbar = Matrix::Zero(p - 1, p + 1);
  Fbar.rightCols(p) = dense_diff(p);
  const Matrix G =
      mu1 * Xbar.transpose() * Xbar + mu2 * Fbar.transpose() * Fbar;

  const Vector tb = random_vector(p + 1, 6);
  CHECK((g.apply(tb) - G * tb).norm() < 1e-10);
}

TEST_CASE("power method approximates the top eigenvalue") {
  const Index n = 12, p = 8;
  const Matrix X = random_matrix(n, p, 9);
  const Vector gamma = Vector::Ones(n);
  const DesignOperator D = DesignOperator::dense(X, gamma);
  const DifferenceOperator F(p);
  StackedGram g{&D, &F, 0.5, 0.5};

  Matrix Xbar(n, p + 1);
  Xbar.col(0) = gamma;
  Xbar.rightCols(p) = X;
  Matrix Fbar = Matrix::Zero(p - 1, p + 1);
  Fbar.rightCols(p) = dense_diff(p);
  const Matrix G =
      0.5 * Xbar.transpose() * Xbar + 0.5 * Fbar.transpose() * Fbar;
  const double exact =
      Eigen::SelfAdjointEigenSolver<Matrix>(G).eigenvalues().maxCoeff();

  const PowerResult r = power_method(g, 1e-6, 2000);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(exact).epsilon(1e-4));
}

TEST_CASE("power method on the identity design") {
  const Index p = 10;
  const DesignOperator D = DesignOperator::identity(p);
  const DifferenceOperator F(p);
  StackedGram g{&D, &F, 1.0, 1.0};
  CHECK(g.dim() == p);
  // I + F^T F has top eigenvalue 1 + lambda_max(F^T F) < 5.
  const PowerResult r = power_method(g, 1e-8, 5000);
  CHECK(r.value > 1.0);
  CHECK(r.value < 5.0);
}
