#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "curvlayer/krylov.hpp"

using namespace curvlayer;

namespace {

Eigen::MatrixXd random_matrix(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d;
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = d(rng);
  return m;
}

Eigen::MatrixXd spd(int n, unsigned seed) {
  const Eigen::MatrixXd a = random_matrix(n, seed);
  return a.transpose() * a / n + Eigen::MatrixXd::Identity(n, n) * 0.1;
}

LinearMap as_map(const Eigen::MatrixXd& m) {
  return [&m](const Eigen::VectorXd& in, Eigen::VectorXd& out) { out = m * in; };
}

}  // namespace

TEST(Krylov, GmresSolvesNonsymmetricSystem) {
  const int n = 120;
  const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) + 0.3 * random_matrix(n, 3) / std::sqrt(n);
  const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(n, -1.0, 2.0);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  const SolveReport r = gmres(as_map(A), b, x, 1e-13, 30, 2000);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.relative_residual, 1e-13);
  const Eigen::VectorXd ref = A.partialPivLu().solve(b);
  EXPECT_LT((x - ref).norm() / ref.norm(), 1e-11);
}

TEST(Krylov, GmresZeroRightHandSide) {
  const Eigen::MatrixXd A = spd(10, 1);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(10);
  const SolveReport r = gmres(as_map(A), Eigen::VectorXd::Zero(10), x);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(x.norm(), 1e-13);
}

TEST(Krylov, LanczosExtremes) {
  const int n = 200;
  const Eigen::MatrixXd A = spd(n, 7);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  const EigenPair hi = lanczos_extreme(as_map(A), n, Extreme::Largest, {}, 1e-11);
  const EigenPair lo = lanczos_extreme(as_map(A), n, Extreme::Smallest, {}, 1e-11);
  EXPECT_TRUE(hi.converged);
  EXPECT_TRUE(lo.converged);
  EXPECT_NEAR(hi.value, es.eigenvalues()(n - 1), 1e-9);
  EXPECT_NEAR(lo.value, es.eigenvalues()(0), 1e-9);
  EXPECT_NEAR(lo.vector.norm(), 1.0, 1e-12);
  EXPECT_LT((A * lo.vector - lo.value * lo.vector).norm(), 1e-8);
}

TEST(Krylov, LanczosIsDeterministic) {
  const Eigen::MatrixXd A = spd(80, 11);
  const EigenPair a = lanczos_extreme(as_map(A), 80, Extreme::Smallest, {});
  const EigenPair b = lanczos_extreme(as_map(A), 80, Extreme::Smallest, {});
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Krylov, ArnoldiSmallestRealPart) {
  const int n = 150;
  // similar to a diagonal matrix with known real spectrum
  Eigen::VectorXd d = Eigen::VectorXd::LinSpaced(n, -2.0, 5.0);
  const Eigen::MatrixXd S = Eigen::MatrixXd::Identity(n, n) + 0.2 * random_matrix(n, 5) / std::sqrt(n);
  const Eigen::MatrixXd A = S * d.asDiagonal() * S.inverse();
  const EigenPair e = arnoldi_smallest_real(as_map(A), n, {}, 1e-11);
  EXPECT_TRUE(e.converged);
  EXPECT_NEAR(e.value, -2.0, 1e-8);
}

TEST(Krylov, LobpcgMatchesDense) {
  const int n = 300;
  // 1D Dirichlet Laplacian plus a well
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = 2.0 - 1.5 * std::exp(-std::pow((i - n / 2) / 20.0, 2));
    if (i > 0) A(i, i - 1) = A(i - 1, i) = -1.0;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  const Preconditioner identity = [](const Eigen::VectorXd& in, Eigen::VectorXd& out, double) { out = in; };
  const Eigen::VectorXd start = Eigen::VectorXd::Ones(n);
  const EigenPair e = lobpcg_smallest(as_map(A), identity, start, 1e-9, 5000, 1.0);
  EXPECT_TRUE(e.converged);
  EXPECT_NEAR(e.value, es.eigenvalues()(0), 1e-9);
  EXPECT_LT(e.residual, 1e-8);
}
