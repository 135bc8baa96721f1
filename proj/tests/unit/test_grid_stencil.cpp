#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "curvlayer/field_io.hpp"
#include "curvlayer/grid.hpp"
#include "curvlayer/stencil.hpp"

using namespace curvlayer;

TEST(Grid, ValidatesShape) {
  EXPECT_THROW(Grid2D(2, 5, 0.1, 0.1, 0, 0), std::invalid_argument);
  EXPECT_THROW(Grid2D(5, 5, 0.0, 0.1, 0, 0), std::invalid_argument);
  EXPECT_THROW(Grid2D::centered(1.0, 0.3), std::invalid_argument);
  const Grid2D g = Grid2D::centered(2.0, 0.5);
  EXPECT_EQ(g.nx, 9);
  EXPECT_DOUBLE_EQ(g.x(0), -2.0);
  EXPECT_DOUBLE_EQ(g.x(8), 2.0);
  EXPECT_EQ(g.index(3, 2), 2u * 9u + 3u);
}

TEST(Grid, TrapezoidIntegratesGaussian) {
  const Grid2D g = Grid2D::centered(8.0, 0.25);
  const Field2D f = sample(g, [](double x, double y) { return std::exp(-(x * x + y * y)); });
  EXPECT_NEAR(integrate(f), M_PI, 1e-13);
}

TEST(Grid, BilinearReproducesAffineAndVanishesOutside) {
  const Grid2D g = Grid2D::centered(1.0, 0.25);
  const Field2D f = sample(g, [](double x, double y) { return 2.0 + 3.0 * x - y; });
  EXPECT_NEAR(bilinear(f, 0.13, -0.41), 2.0 + 0.39 + 0.41, 1e-14);
  EXPECT_EQ(bilinear(f, 1.5, 0.0), 0.0);
}

TEST(Stencil, CentralWeightsAreExactOnPolynomials) {
  // 9-point weights differentiate polynomials of degree <= 8 exactly.
  for (int m = 1; m <= 4; ++m) {
    const std::vector<double>& w = central_weights(m);
    ASSERT_EQ(w.size(), 9u);
    for (int deg = 0; deg <= 8; ++deg) {
      double s = 0.0;
      for (int k = -4; k <= 4; ++k) s += w[k + 4] * std::pow(static_cast<double>(k), deg);
      const double exact = deg == m ? std::tgamma(m + 1.0) : 0.0;
      EXPECT_NEAR(s, exact, 1e-9) << "m = " << m << " deg = " << deg;
    }
  }
}

TEST(Stencil, FornbergMatchesKnownThreePointWeights) {
  const std::vector<double> w = fornberg_weights(2, {-1.0, 0.0, 1.0}, 0.0);
  EXPECT_NEAR(w[0], 1.0, 1e-15);
  EXPECT_NEAR(w[1], -2.0, 1e-15);
  EXPECT_NEAR(w[2], 1.0, 1e-15);
}

// Property: the h-refinement slope of sampled derivatives matches the stencil order.
TEST(Stencil, ConvergenceOrderOnGaussian) {
  double errs[2];
  int k = 0;
  for (double h : {0.2, 0.1}) {
    const Grid2D g = Grid2D::centered(6.0, h);
    const Field2D f = sample(g, [](double x, double y) { return std::exp(-0.5 * (x * x + y * y)); });
    const Field2D d = central_partial(f, 2, 0);
    const int c = (g.nx - 1) / 2;
    errs[k++] = std::abs(d(c + 5, c) - ((g.x(c + 5) * g.x(c + 5) - 1.0) * std::exp(-0.5 * g.x(c + 5) * g.x(c + 5))));
  }
  const double slope = std::log2(errs[0] / errs[1]);
  EXPECT_GT(slope, 7.0);
}

TEST(FieldIO, RoundTripsCsvAndBinary) {
  const Grid2D g(5, 4, 0.3, 0.2, -1.0, 0.5);
  const Field2D f = sample(g, [](double x, double y) { return std::sin(3.1 * x) * std::cos(y) + 1.0 / 3.0; });
  const auto dir = std::filesystem::temp_directory_path() / "curvlayer_fieldio";
  std::filesystem::create_directories(dir);
  for (const std::string name : {"f.csv", "f.bin"}) {
    const std::string path = (dir / name).string();
    if (name == "f.csv") write_field_csv(path, f);
    else write_field_binary(path, f);
    const Field2D r = read_field(path);
    ASSERT_TRUE(r.grid().same_as(g));
    for (std::size_t p = 0; p < f.size(); ++p) EXPECT_EQ(r[p], f[p]);
  }
}
