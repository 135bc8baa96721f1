#include <gtest/gtest.h>

#include <cmath>

#include "curvlayer/asymptotics.hpp"
#include "curvlayer/birman_schwinger.hpp"
#include "curvlayer/specfun.hpp"

using namespace curvlayer;

namespace {

ModeProjectedPotential project(const std::string& name, const ParameterMap& params, double half_extent, double h,
                               int modes, double a = kPi / 2.0) {
  return project_potential(make_potential(name, params), TransverseBasis(a, modes), Grid2D::centered(half_extent, h),
                           2 * modes + 8);
}

const ModeProjectedPotential& small_well() {
  static const auto p = project("gaussian_well", {{"depth", 2.0}, {"tilt", 0.6}}, 5.0, 0.5, 4);
  return p;
}

double rel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return (a - b).norm() / b.norm(); }

}  // namespace

TEST(BSKernels, SplitReproducesDirectAssembly) {
  for (double w : {-0.3, -1.0, -4.0}) {
    const BSKernelSet k = assemble_M(w, 0.5, small_well());
    const Eigen::MatrixXd direct = assemble_direct(w, small_well());
    EXPECT_LT(rel(k.L + k.A + k.B, direct), 1e-12) << w;
    // L is rank one
    EXPECT_LT(rel(k.L, k.L(0, 0) / (k.psi_x(0) * k.psi_y(0)) * k.psi_x * k.psi_y.transpose()), 1e-13);
  }
}

TEST(BSKernels, MatrixFreeMatchesDense) {
  BSOperator op(small_well());
  const double w = -0.7;
  op.set_w(w);
  const BSKernelSet k = assemble_M(w, 0.5, small_well());
  const Eigen::Index n = op.dimension();
  ASSERT_EQ(n, k.A.rows());
  const Eigen::MatrixXd M = k.A + k.B;
  Eigen::VectorXd v(n), out(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = std::sin(0.1 * i) + 0.2;
  op.apply_M(v, out);
  EXPECT_LT((out - M * v).norm() / (M * v).norm(), 1e-12);
  op.apply_K(v, out);
  EXPECT_LT((out - (M + k.L) * v).norm() / ((M + k.L) * v).norm(), 1e-12);
  op.apply_MT(v, out);
  EXPECT_LT((out - M.transpose() * v).norm() / (M.transpose() * v).norm(), 1e-12);
  EXPECT_LT((op.psi_x() - k.psi_x).norm(), 1e-14);
}

TEST(BSKernels, NonPositivePotentialGivesSymmetricXGX) {
  BSOperator op(project("gaussian_well", {{"depth", 2.0}}, 5.0, 0.5, 3));
  EXPECT_EQ(op.sign_class(), SignClass::NonPositive);
  op.set_s(0.2);
  const Eigen::Index n = op.dimension();
  Eigen::VectorXd a = Eigen::VectorXd::LinSpaced(n, -1.0, 1.0), b = Eigen::VectorXd::LinSpaced(n, 2.0, 0.5);
  Eigen::VectorXd Ga(n), Gb(n), Ka(n);
  op.apply_XGX(a, Ga);
  op.apply_XGX(b, Gb);
  op.apply_K(a, Ka);
  EXPECT_NEAR(b.dot(Ga), a.dot(Gb), 1e-12 * std::abs(b.dot(Ga)));
  EXPECT_LT((Ka + Ga).norm(), 1e-12 * Ga.norm());
}

TEST(BSKernels, SignClasses) {
  EXPECT_EQ(BSOperator(project("compact_bump", {}, 4.0, 0.5, 2)).sign_class(), SignClass::NonNegative);
  EXPECT_EQ(BSOperator(project("dipole_uv", {}, 4.0, 0.5, 2)).sign_class(), SignClass::Indefinite);
  EXPECT_EQ(BSOperator(project("gaussian_well", {{"depth", 0.0}}, 4.0, 0.5, 2)).sign_class(), SignClass::Zero);
}

// The regular part stays bounded as w -> 0-; the logarithmic part does not.
TEST(BSKernels, RegularPartBoundedAtWeakCoupling) {
  const BSKernelSet a = assemble_M(-0.05, 0.1, small_well());
  const BSKernelSet b = assemble_M(-0.025, 0.1, small_well());
  EXPECT_LT(rel(b.A, a.A), 1e-6);
  EXPECT_NEAR(b.L.norm() / a.L.norm(), 2.0, 1e-12);
}

TEST(BSSolve, VanishingPotentialHasNoBoundState) {
  const auto proj = project("gaussian_well", {{"depth", 0.0}}, 4.0, 0.5, 2);
  BSOperator op(proj);
  EXPECT_EQ(bs_F(op, 0.5, -1.0), 0.0);
  EXPECT_THROW(solve_implicit(0.5, proj), NoBoundState);
}

TEST(BSSolve, RepulsivePotentialHasNoBoundState) {
  const auto proj = project("compact_bump", {}, 4.0, 0.25, 4);
  EXPECT_THROW(solve_implicit(0.2, proj), NoBoundState);
  EXPECT_THROW(bs_eigen_rootfind(0.2, proj), std::runtime_error);
}

TEST(BSSolve, FixedPointAndRootfindAgree) {
  const auto proj = project("gaussian_well", {{"depth", 4.0}, {"tilt", 0.3}}, 6.0, 0.2, 4);
  const BSResult f = solve_implicit(0.3, proj);
  const BSResult r = bs_eigen_rootfind(0.3, proj);
  EXPECT_LT(f.contraction, 1.0);
  EXPECT_TRUE(f.unique);
  EXPECT_GE(f.condition_estimate, 1.0);
  EXPECT_LE(f.residual, 1e-11);
  EXPECT_NEAR(f.w_star, r.w_star, 1e-9 * std::abs(f.w_star));
  EXPECT_NEAR(f.E, r.E, 1e-10);
  EXPECT_DOUBLE_EQ(f.E, energy_from_w(f.w_star, TransverseBasis(kPi / 2.0, 4).kappa(1)).E);
  ASSERT_FALSE(f.history.empty());
  EXPECT_NEAR(f.history.back().w, f.w_star, 1e-11 * std::abs(f.w_star));
}

TEST(BSSolve, StartValueDoesNotMatter) {
  const BSResult a = solve_implicit(0.4, small_well());
  const BSResult b = solve_implicit(0.4, small_well(), {}, 3.0 * a.w_star);
  EXPECT_NEAR(a.w_star, b.w_star, 1e-11 * std::abs(a.w_star));
}

// Property: mu(s) is non-decreasing in s for V <= 0.
TEST(BSSolve, MuMonotoneInS) {
  BSOperator op(small_well());
  double prev = -1e300;
  for (double s : {1e-8, 1e-5, 1e-3, 0.05, 0.5, 0.99}) {
    const double mu = bs_mu(op, s, {});
    EXPECT_LT(mu, 0.0);
    EXPECT_GE(mu, prev);
    prev = mu;
  }
}

// Weak coupling: w_BS - w_expansion = O(lambda^3).
TEST(BSSolve, AgreesWithExpansionToThirdOrder) {
  const auto proj = project("gaussian_well", {{"depth", 1.0}, {"tilt", 0.5}}, 6.0, 0.2, 6);
  double prev = 0.0;
  for (double lambda : {0.1, 0.05, 0.025}) {
    const double d = std::abs(solve_implicit(lambda, proj).w_star - expansion_w(lambda, proj).w);
    if (prev > 0.0) EXPECT_NEAR(prev / d, 8.0, 1.0) << lambda;
    prev = d;
  }
}

// ||lambda M|| shrinks with lambda along the fixed-point branch.
TEST(BSSolve, ConditionImprovesAtWeakCoupling) {
  const BSResult a = solve_implicit(0.4, small_well());
  const BSResult b = solve_implicit(0.1, small_well());
  EXPECT_LT(b.condition_estimate, a.condition_estimate);
  EXPECT_LT(b.condition_estimate / a.condition_estimate, 1.0);
  EXPECT_LT(a.condition_estimate, 3.0);
}

TEST(BSSolve, DipoleZeroMeanCase) {
  const auto proj = project("dipole_uv", {{"strength", 4.0}}, 6.0, 0.25, 4);
  const BSResult f = solve_implicit(0.5, proj);
  const BSResult r = bs_eigen_rootfind(0.5, proj);
  EXPECT_LT(f.w_star, 0.0);
  EXPECT_NEAR(f.w_star, r.w_star, 1e-8 * std::abs(f.w_star));
}
