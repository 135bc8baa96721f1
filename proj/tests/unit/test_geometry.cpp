#include <gtest/gtest.h>

#include <cmath>

#include "curvlayer/geometry.hpp"
#include "curvlayer/quadrature.hpp"

using namespace curvlayer;

namespace {

const Grid2D& small_grid() {
  static const Grid2D g = Grid2D::centered(6.0, 0.1);
  return g;
}

std::size_t center(const Grid2D& g) { return g.index((g.nx - 1) / 2, (g.ny - 1) / 2); }

}  // namespace

TEST(Geometry, LinearSurfaceJet) {
  const SurfaceJet jet = build_surface_jet(*make_planar_surface(3.0, 5.0), small_grid());
  for (std::size_t p = 0; p < small_grid().size(); p += 97) {
    EXPECT_EQ(jet.partial(1, 0)[p], 3.0);
    EXPECT_EQ(jet.partial(0, 1)[p], 5.0);
    EXPECT_EQ(jet.partial(2, 0)[p], 0.0);
    EXPECT_EQ(jet.partial(1, 3)[p], 0.0);
  }
}

TEST(Geometry, QuadraticSurfaceJet) {
  const Grid2D& g = small_grid();
  const SurfaceJet jet = build_surface_jet(*make_parabolic_cylinder(1.0), g);
  for (int i = 0; i < g.nx; i += 13) {
    const std::size_t p = g.index(i, 7);
    EXPECT_DOUBLE_EQ(jet.partial(1, 0)[p], g.x(i));
    EXPECT_EQ(jet.partial(2, 0)[p], 1.0);
    EXPECT_EQ(jet.partial(3, 0)[p], 0.0);
    EXPECT_EQ(jet.partial(4, 0)[p], 0.0);
  }
}

TEST(Geometry, SampledJetMatchesAnalytic) {
  const Grid2D g = Grid2D::centered(8.0, 0.05);
  const auto s = make_gaussian_bump(1.0, 1.0);
  const Field2D f = sample(g, [&](double x, double y) { return s->partial(0, 0, x, y); });
  const SurfaceJet jet = build_surface_jet(f);
  EXPECT_NEAR(jet.partial(2, 0)[center(g)], -1.0, 1e-6);
  const SurfaceJet exact = build_surface_jet(*s, g);
  double worst = 0.0;
  for (int n1 = 0; n1 <= 4; ++n1)
    for (int n2 = 0; n1 + n2 <= 4; ++n2)
      for (int j = 4; j < g.ny - 4; j += 11)
        for (int i = 4; i < g.nx - 4; i += 11) {
          const std::size_t p = g.index(i, j);
          worst = std::max(worst, std::abs(jet.partial(n1, n2)[p] - exact.partial(n1, n2)[p]));
        }
  EXPECT_LT(worst, 1e-6);
}

TEST(Geometry, SampledJetRejectsSmallOrNonFiniteInput) {
  EXPECT_THROW(build_surface_jet(Field2D(Grid2D(8, 12, 0.1, 0.1, 0, 0))), std::invalid_argument);
  Field2D f(Grid2D(12, 12, 0.1, 0.1, 0, 0));
  f[5] = std::nan("");
  EXPECT_THROW(build_surface_jet(f), std::invalid_argument);
}

TEST(Geometry, PlanarCurvaturesVanish) {
  const SurfaceJet jet = build_surface_jet(*make_planar_surface(0.3, -0.2), small_grid());
  const CurvatureBundle b = curvatures(jet, 0.5);
  EXPECT_EQ(b.k0.max_abs(), 0.0);
  EXPECT_EQ(b.m0.max_abs(), 0.0);
  EXPECT_EQ(b.m1.max_abs(), 0.0);
  EXPECT_EQ(b.K.max_abs(), 0.0);
  EXPECT_EQ(b.M.max_abs(), 0.0);
  const LayerConstants lc = layer_constants_from(1.0, 0.5, 0.0, 0.0);
  EXPECT_EQ(lc.c_minus, 1.0);
  EXPECT_EQ(lc.C_plus, 1.0);
  EXPECT_EQ(lc.sigma_minus, 1.0);
  EXPECT_EQ(lc.sigma_plus, 1.0);
}

TEST(Geometry, ParabolicCylinderAtOrigin) {
  const Grid2D& g = small_grid();
  const CurvatureBundle b = curvatures(build_surface_jet(*make_parabolic_cylinder(1.0), g), 0.1);
  const std::size_t p = center(g);
  EXPECT_NEAR(b.k0[p], 0.0, 1e-15);
  EXPECT_NEAR(b.m0[p], 0.5, 1e-15);
  EXPECT_NEAR(b.m1[p], 0.0, 1e-15);
  EXPECT_NEAR(b.M[p], 0.05, 1e-15);
  EXPECT_NEAR(b.K[p], 0.0, 1e-15);
}

TEST(Geometry, GaussianBumpAtOrigin) {
  const Grid2D& g = small_grid();
  const CurvatureBundle b = curvatures(build_surface_jet(*make_gaussian_bump(1.0, 1.0), g), 0.2);
  const std::size_t p = center(g);
  EXPECT_NEAR(b.k0[p], 1.0, 1e-14);
  EXPECT_NEAR(b.m0[p], -1.0, 1e-14);
  EXPECT_NEAR(b.m1[p], 0.0, 1e-14);
}

// Pointwise invariants on a non-symmetric surface.
TEST(Geometry, CurvatureInvariants) {
  const Grid2D& g = small_grid();
  const SurfaceJet jet = build_surface_jet(*make_ripple(0.8, 1.3, 1.2), g);
  const double eps = 0.3;
  const CurvatureBundle b = curvatures(jet, eps);
  for (std::size_t p = 0; p < g.size(); p += 7) {
    EXPECT_GE(b.g[p], 1.0);
    EXPECT_NEAR(b.K[p], eps * eps * b.k0[p] / (b.g[p] * b.g[p]), 1e-14);
    EXPECT_NEAR(b.M[p], eps * std::pow(b.g[p], -1.5) * (b.m0[p] + eps * eps * b.m1[p]), 1e-14);
    const double d = b.kappa1[p] - b.kappa2[p];
    const double lhs = b.K[p] - b.M[p] * b.M[p];
    EXPECT_LE(lhs, 1e-15);
    EXPECT_NEAR(lhs, -0.25 * d * d, 1e-10 * std::max(1.0, std::abs(lhs)));
    // metric times inverse metric
    const MetricAt m = metric_at(jet, eps, p);
    const double a11 = m.lower[0] * m.upper[0] + m.lower[1] * m.upper[1];
    const double a12 = m.lower[0] * m.upper[1] + m.lower[1] * m.upper[2];
    const double a22 = m.lower[1] * m.upper[1] + m.lower[2] * m.upper[2];
    EXPECT_NEAR(a11, 1.0, 1e-12);
    EXPECT_NEAR(a12, 0.0, 1e-12);
    EXPECT_NEAR(a22, 1.0, 1e-12);
  }
}

TEST(Geometry, LayerConstantsFormulas) {
  const LayerConstants lc = layer_constants_from(1.0, 0.1, 0.0, 0.1);
  EXPECT_NEAR(lc.C_plus, 1.21, 1e-15);
  EXPECT_NEAR(lc.C_minus, 0.81, 1e-15);
  EXPECT_THROW(layer_constants_from(1.0, 0.1, 0.0, 2.0), std::domain_error);
  const LayerConstants l2 = layer_constants_from(0.5, 0.2, 0.3, 0.4);
  EXPECT_LE(l2.c_minus, 1.0);
  EXPECT_GE(l2.c_plus, 1.0);
  EXPECT_NEAR(l2.sigma_minus * l2.sigma_minus,
              std::pow(l2.c_plus, 3) * l2.C_plus * l2.C_plus / (l2.c_minus * l2.c_minus * l2.C_minus), 1e-14);
}

TEST(Geometry, EffectivePotentials) {
  const Grid2D g = Grid2D::centered(6.0, 0.1);
  const double a = 0.5, eps = 0.05;
  const SurfaceJet jet = build_surface_jet(*make_gaussian_bump(1.0, 1.0), g);
  const CurvatureBundle b = curvatures(jet, eps);
  const QuadratureRule q = gauss_legendre(9, -a, a);  // odd: contains u = 0
  const EffectivePotentialField f = effective_potentials(jet, b, a, q);
  for (double v : f.V2) EXPECT_LE(v, 0.0);
  const int mid = 4;
  ASSERT_NEAR(q.nodes[mid], 0.0, 1e-15);
  for (std::size_t p = 0; p < g.size(); p += 5)
    EXPECT_NEAR(f.V2[f.index(p, mid)], b.K[p] - b.M[p] * b.M[p], 1e-12);

  const SurfaceJet flat = build_surface_jet(*make_planar_surface(0.0, 0.0), g);
  const EffectivePotentialField z = effective_potentials(flat, curvatures(flat, eps), a, q);
  for (std::size_t i = 0; i < z.v1.size(); i += 13) {
    EXPECT_EQ(z.v1[i], 0.0);
    EXPECT_EQ(z.V_plus[i], 0.0);
    EXPECT_EQ(z.V_minus[i], 0.0);
  }
}

TEST(Geometry, TotalCurvatureAndMeanFields) {
  const Grid2D g = Grid2D::centered(10.0, 0.05);
  const SurfaceJet jet = build_surface_jet(*make_gaussian_bump(1.0, 1.0), g);
  const GaussCurvatureTotals t = total_gauss_curvature(curvatures(jet, 0.1));
  EXPECT_TRUE(t.trusted);
  EXPECT_NEAR(t.integral_k0, 0.0, 1e-8);
  const MeanCurvatureFields m = leading_order_fields(jet);
  Field2D green(g);
  for (std::size_t p = 0; p < g.size(); ++p) green[p] = m.m0[p] * m.lap_m0[p] + m.grad_m0_sq[p];
  EXPECT_NEAR(integrate(green), 0.0, 1e-6);

  const SurfaceJet flat = build_surface_jet(*make_planar_surface(1.0, 0.0), Grid2D::centered(3.0, 0.1));
  EXPECT_EQ(total_gauss_curvature(curvatures(flat, 0.1)).total, 0.0);
}

// Harmonic saddle: m0 vanishes, so k0 must be non-positive.
TEST(Geometry, VanishingMeanCurvatureImpliesNonPositiveK0) {
  const Grid2D g = Grid2D::centered(3.0, 0.1);
  const Field2D f = sample(g, [](double x, double y) { return 0.5 * (x * x - y * y); });
  const SurfaceJet jet = build_surface_jet(f);
  const CurvatureBundle b = curvatures(jet, 0.1);
  EXPECT_LT(b.m0.max_abs(), 1e-12);
  for (std::size_t p = 0; p < g.size(); ++p) EXPECT_LE(b.k0[p], 1e-12);
}
