#include <gtest/gtest.h>

#include <cmath>

#include "curvlayer/quadrature.hpp"
#include "curvlayer/specfun.hpp"
#include "curvlayer/transverse.hpp"

using namespace curvlayer;

TEST(Transverse, EigenfunctionsAreOrthonormal) {
  const double a = 0.7;
  const TransverseBasis b(a, 6);
  const QuadratureRule q = gauss_legendre(80, -a, a);
  for (int i = 1; i <= 6; ++i)
    for (int j = 1; j <= 6; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < q.nodes.size(); ++k) s += q.weights[k] * b.chi(i, q.nodes[k]) * b.chi(j, q.nodes[k]);
      EXPECT_NEAR(s, i == j ? 1.0 : 0.0, 1e-13);
    }
}

TEST(Transverse, ThresholdsAndGaps) {
  const TransverseBasis b(kPi / 2.0, 4);
  EXPECT_DOUBLE_EQ(b.kappa(1), 1.0);
  EXPECT_DOUBLE_EQ(b.kappa_sq(3), 9.0);
  EXPECT_DOUBLE_EQ(b.k_sq(2), 3.0);
}

TEST(Transverse, OverlapClosedFormMatchesQuadrature) {
  for (double a : {0.25, 1.0, 3.0}) {
    const TransverseBasis b(a, 12);
    const QuadratureRule q = gauss_legendre(120, -a, a);
    for (int j = 1; j <= 12; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < q.nodes.size(); ++k) s += q.weights[k] * q.nodes[k] * b.chi(1, q.nodes[k]) * b.chi(j, q.nodes[k]);
      EXPECT_NEAR(b.overlap(j), s, 1e-13 * std::max(1.0, a));
      EXPECT_DOUBLE_EQ(b.overlap(j), overlap_closed_form(a, j));
    }
    EXPECT_EQ(b.overlap(1), 0.0);
    EXPECT_EQ(b.overlap(3), 0.0);
  }
}

TEST(Transverse, FirstMomentNorm) {
  // ||u chi_1||^2 = (pi^2 - 6) / (12 kappa_1^2)
  const double a = 0.9;
  const TransverseBasis b(a, 2);
  const QuadratureRule q = gauss_legendre(60, -a, a);
  double s = 0.0;
  for (std::size_t k = 0; k < q.nodes.size(); ++k) s += q.weights[k] * std::pow(q.nodes[k] * b.chi(1, q.nodes[k]), 2);
  EXPECT_NEAR(b.u_norm_sq(), s, 1e-14);
  EXPECT_NEAR(b.u_norm_sq(), (kPi * kPi - 6.0) / (12.0 * b.kappa_sq(1)), 1e-15);
}

// Property: partial sums increase monotonically towards their limits.
TEST(Transverse, OverlapSumsApproachTargets) {
  double prev0 = 0.0, prev2 = 0.0;
  for (int N : {4, 16, 64, 256}) {
    const OverlapSums o = overlap_sums(TransverseBasis(kPi / 2.0, N));
    EXPECT_NEAR(o.s0_target, (kPi * kPi - 6.0) / 12.0, 1e-15);
    EXPECT_GE(o.s0, prev0);
    EXPECT_GE(o.s2, prev2);
    EXPECT_LE(o.s0, o.s0_target + 1e-15);
    EXPECT_LE(o.s2, 1.0 + 1e-15);
    prev0 = o.s0;
    prev2 = o.s2;
  }
}

TEST(Transverse, RejectsBadArguments) {
  EXPECT_THROW(TransverseBasis(0.0, 3), std::invalid_argument);
  EXPECT_THROW(TransverseBasis(1.0, 0), std::invalid_argument);
}
