#include <gtest/gtest.h>

#include <boost/math/special_functions/expint.hpp>
#include <cmath>

#include "curvlayer/fft.hpp"
#include "curvlayer/kernels.hpp"
#include "curvlayer/specfun.hpp"

using namespace curvlayer;

namespace {

Field2D gaussian(const Grid2D& g, double s = 1.0) {
  return sample(g, [s](double x, double y) { return std::exp(-(x * x + y * y) / (s * s)); });
}

}  // namespace

TEST(Fft, GoodSizes) {
  EXPECT_EQ(good_fft_size(1), 1);
  EXPECT_EQ(good_fft_size(11), 12);
  EXPECT_EQ(good_fft_size(127), 128);
  EXPECT_EQ(good_fft_size(243), 243);
}

TEST(Fft, LinearConvolutionMatchesDirectSum) {
  const int nx = 7, ny = 5;
  LinearConvolver conv(nx, ny);
  std::vector<double> table((2 * nx - 1) * (2 * ny - 1));
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = std::sin(0.37 * i) + 0.1 * i;
  std::vector<double> in(nx * ny), out(nx * ny);
  for (std::size_t i = 0; i < in.size(); ++i) in[i] = std::cos(1.3 * i);
  conv.apply(conv.transform_kernel(table), in.data(), out.data());
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      double s = 0.0;
      for (int q = 0; q < ny; ++q)
        for (int p = 0; p < nx; ++p) s += table[(i - p + nx - 1) + (j - q + ny - 1) * (2 * nx - 1)] * in[q * nx + p];
      EXPECT_NEAR(out[j * nx + i], s, 1e-12);
    }
}

TEST(Fft, DirichletSolverInvertsFivePointLaplacian) {
  const int n = 13;
  const double h = 0.2, shift = 0.7;
  DirichletPoissonSolver solver(n, n, h);
  std::vector<double> rhs(n * n), x(n * n);
  for (int i = 0; i < n * n; ++i) rhs[i] = std::sin(0.9 * i) + 0.3;
  solver.solve(rhs.data(), x.data(), shift);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      auto at = [&](int a, int b) { return (a < 0 || b < 0 || a >= n || b >= n) ? 0.0 : x[b * n + a]; };
      const double lap = (4.0 * at(i, j) - at(i - 1, j) - at(i + 1, j) - at(i, j - 1) - at(i, j + 1)) / (h * h);
      EXPECT_NEAR(lap + shift * at(i, j), rhs[j * n + i], 1e-11);
    }
  const double s = std::sin(kPi / (2.0 * (n + 1)));
  EXPECT_NEAR(solver.min_eigenvalue(), 8.0 * s * s / (h * h), 1e-12);
}

TEST(Fft, PowerSpectrumParseval) {
  const Grid2D g = Grid2D::centered(8.0, 0.1);
  const Field2D f = gaussian(g);
  const PowerSpectrum ps = power_spectrum(f, 2);
  double total = 0.0;
  for (std::size_t i = 0; i < ps.power.size(); ++i) total += ps.weight[i] * ps.power[i] * ps.d_area;
  Field2D sq(g);
  for (std::size_t p = 0; p < g.size(); ++p) sq[p] = f[p] * f[p];
  EXPECT_NEAR(total, integrate(sq), 1e-10);
}

// Closed forms for Gaussians g = exp(-|x|^2):
//   double integral of g g ln|x - y| = (pi^2 / 2)(ln 2 - gamma)
//   double integral of g g K0(k|x - y|) = (pi^2 / 2) exp(k^2 / 2) E1(k^2 / 2)
namespace {

double k0_exact(double k) { return 0.5 * kPi * kPi * std::exp(k * k / 2.0) * boost::math::expint(1, k * k / 2.0); }

template <class F>
std::vector<double> errors(F&& value, double exact) {
  std::vector<double> e;
  for (double h : {0.2, 0.1, 0.05}) {
    const Grid2D g = Grid2D::centered(6.0, h);
    e.push_back(std::abs(value(g, gaussian(g)) / exact - 1.0));
  }
  return e;
}

}  // namespace

TEST(Kernels, LogKernelFourthOrder) {
  const auto e = errors([](const Grid2D& g, const Field2D& f) { return double_integral(f, log_kernel_table(g), f); },
                        0.5 * kPi * kPi * (kEulerGamma - kLn2));
  EXPECT_LT(e[1], 2e-5);
  EXPECT_NEAR(std::log2(e[0] / e[1]), 4.0, 0.3);
  EXPECT_NEAR(std::log2(e[1] / e[2]), 4.0, 0.3);
}

TEST(Kernels, BesselKernelFourthOrder) {
  for (double k : {0.3, 1.7, 6.0}) {
    for (DiagonalRule rule : {DiagonalRule::LogCorrected, DiagonalRule::MassMatched}) {
      const auto e = errors(
          [&](const Grid2D& g, const Field2D& f) { return double_integral(f, bessel_k0_table(g, k, rule), f); },
          k0_exact(k));
      EXPECT_LT(e[2], 1e-4) << k;
      EXPECT_NEAR(std::log2(e[1] / e[2]), 4.0, 0.3) << k;
    }
  }
}

// MassMatched keeps the error small once k h is O(1); LogCorrected does not.
TEST(Kernels, MassMatchedAtLargeKh) {
  const Grid2D g = Grid2D::centered(6.0, 0.1);
  const Field2D f = gaussian(g);
  const double k = 12.0;
  const double mm = std::abs(double_integral(f, bessel_k0_table(g, k, DiagonalRule::MassMatched), f) / k0_exact(k) - 1.0);
  const double lc = std::abs(double_integral(f, bessel_k0_table(g, k, DiagonalRule::LogCorrected), f) / k0_exact(k) - 1.0);
  EXPECT_LT(mm, 2e-4);
  EXPECT_LT(20.0 * mm, lc);
}

TEST(Kernels, MassMatchedDiagonalReproducesLatticeMass) {
  const double k = 3.0, h = 0.1;
  const double d = mass_matched_diagonal(k, h);
  double s = d;
  const int R = static_cast<int>(std::ceil(60.0 / (k * h)));
  for (int i = -R; i <= R; ++i)
    for (int j = -R; j <= R; ++j)
      if (i || j) s += bessel_k0(k * h * std::hypot(i, j));
  EXPECT_NEAR(h * h * s, 2.0 * kPi / (k * k), 1e-9);
}

TEST(Kernels, ShiftedResolventIsK0PlusLog) {
  const Grid2D g = Grid2D::centered(1.0, 0.25);
  const double k = 0.03;
  const KernelTable a = shifted_resolvent_table(g, k);
  const KernelTable b = bessel_k0_table(g, k, DiagonalRule::LogCorrected);
  for (int dj = -3; dj <= 3; ++dj)
    for (int di = -3; di <= 3; ++di) EXPECT_NEAR(a.at(di, dj), b.at(di, dj) + std::log(k), 1e-12);
  EXPECT_NEAR(a.diagonal(), -(std::log(0.25) + kLatticeLogConstant) + kLn2 - kEulerGamma, 1e-14);
}

TEST(Kernels, DirectAndFftQuadratureAgree) {
  const Grid2D g = Grid2D::centered(3.15, 0.1);  // 64 x 64
  ASSERT_EQ(g.nx, 64);
  const Field2D a = gaussian(g), b = gaussian(g, 1.3);
  const KernelTable t = bessel_k0_table(g, 1.2);
  const double d = double_integral(a, t, b, QuadratureMethod::Direct);
  const double f = double_integral(a, t, b, QuadratureMethod::Fft);
  EXPECT_NEAR(d, f, 1e-5 * std::abs(d));
  EXPECT_NEAR(d, f, 1e-12 * std::abs(d));
}
