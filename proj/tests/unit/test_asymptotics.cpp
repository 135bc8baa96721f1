#include <gtest/gtest.h>

#include <cmath>

#include "curvlayer/asymptotics.hpp"
#include "curvlayer/fft.hpp"
#include "curvlayer/geometry.hpp"
#include "curvlayer/specfun.hpp"

using namespace curvlayer;

namespace {

struct Setup {
  Grid2D grid;
  MeanCurvatureFields fields;
};

const Setup& bump() {
  static const Setup s = [] {
    const Grid2D g = Grid2D::centered(9.0, 0.1);
    return Setup{g, leading_order_fields(build_surface_jet(*make_gaussian_bump(1.0, 1.0), g))};
  }();
  return s;
}

}  // namespace

TEST(Energy, MapFromW) {
  const EnergyMap e = energy_from_w(-1.0, 1.0);
  EXPECT_NEAR(e.E, 1.0 - std::exp(-2.0), 1e-15);
  EXPECT_NEAR(e.E, 0.864665, 1e-6);
  EXPECT_DOUBLE_EQ(e.log_gap, -2.0);
  EXPECT_FALSE(e.gap_underflow);

  const EnergyMap tiny = energy_from_w(-0.01, 1.0);
  EXPECT_DOUBLE_EQ(tiny.log_gap, -200.0);
  EXPECT_FALSE(tiny.gap_underflow);
  EXPECT_EQ(tiny.E, 1.0);  // gap 1.4e-87 is below double resolution of 1

  const EnergyMap under = energy_from_w(-0.001, 2.0);
  EXPECT_TRUE(under.gap_underflow);
  EXPECT_EQ(under.E, 4.0);
  EXPECT_DOUBLE_EQ(under.log_gap, -2000.0);

  EXPECT_THROW(energy_from_w(0.1, 1.0), NoBoundState);
  EXPECT_THROW(energy_from_w(0.0, 1.0), NoBoundState);
}

TEST(Energy, MonotoneInW) {
  double prev = -1.0;
  for (double w = -5.0; w < -0.05; w += 0.25) {
    const double E = energy_from_w(w, 1.0).E;
    EXPECT_GT(E, prev);
    EXPECT_LT(E, 1.0);
    prev = E;
  }
}

TEST(W1, RoutesAgreeOnGaussianBump) {
  const TransverseBasis basis(kPi / 2.0, 64);
  const SpectralResult f = w1_fourier(bump().fields.m0, basis);
  const SpectralResult r = w1_realspace(bump().fields.m0, basis);
  const IntermediateResult i = w1_intermediate(bump().fields, basis);
  EXPECT_LT(f.w, 0.0);
  EXPECT_NEAR(r.w / f.w, 1.0, 1e-5);
  EXPECT_NEAR(i.w / f.w, 1.0, 1e-4);
  EXPECT_NEAR(f.m0_norm_sq, r.m0_norm_sq, 1e-10);
  EXPECT_NEAR(i.integral_k0, 0.0, 1e-10);
  EXPECT_NEAR(i.green_residual, 0.0, 1e-8);
  ASSERT_EQ(f.per_mode.size(), r.per_mode.size());
  for (std::size_t k = 0; k < f.per_mode.size(); ++k) {
    EXPECT_GE(f.per_mode[k].s, 0.0);
    EXPECT_GE(r.per_mode[k].s, 0.0);
    EXPECT_NEAR(r.per_mode[k].s, f.per_mode[k].s, 1e-5 * std::abs(f.w));
  }
}

// Each mode term equals a convolution with the free resolvent:
// S_j = T_j^2 k_j^4 (2 pi)^{-1} (m0, G_k m0), (m0, G_k m0) = int |m~|^2 / (|w|^2 + k^2).
TEST(W1, ModeTermMatchesSpectralIntegral) {
  const TransverseBasis basis(1.0, 4);
  const PowerSpectrum ps = power_spectrum(bump().fields.m0, 2);
  const double k2 = basis.k_sq(2);
  double integral = 0.0;
  for (std::size_t i = 0; i < ps.power.size(); ++i) integral += ps.weight[i] * ps.power[i] * ps.d_area / (ps.omega_sq[i] + k2);
  const SpectralResult f = w1_fourier(bump().fields.m0, basis);
  const double t = basis.overlap(2);
  EXPECT_NEAR(f.per_mode[0].s, t * t * k2 * k2 * integral / (2.0 * kPi), 1e-13);
}

TEST(W1, CumulativeSumIsMonotone) {
  const TransverseBasis basis(kPi / 2.0, 24);
  const SpectralResult f = w1_fourier(bump().fields.m0, basis);
  double prev = 0.0;
  for (const auto& c : f.per_mode) {
    EXPECT_LE(c.cumulative, prev + 1e-18);
    prev = c.cumulative;
  }
  EXPECT_DOUBLE_EQ(prev, f.w);
}

TEST(W1, TailCorrectionShrinksTruncationError) {
  const TransverseBasis ref(kPi / 2.0, 512);
  const double w_ref = w1_fourier(bump().fields.m0, ref).w_tail_corrected;
  for (int n : {8, 16, 32}) {
    const SpectralResult f = w1_fourier(bump().fields.m0, TransverseBasis(kPi / 2.0, n));
    EXPECT_LT(f.tail_estimate, 0.0);
    EXPECT_LT(std::abs(f.w_tail_corrected - w_ref), std::abs(f.w - w_ref)) << n;
  }
}

TEST(W1, QuadraticInAmplitude) {
  const TransverseBasis basis(kPi / 2.0, 32);
  const Grid2D g = Grid2D::centered(9.0, 0.1);
  const auto m1 = leading_order_fields(build_surface_jet(*make_gaussian_bump(0.5, 1.0), g)).m0;
  const auto m2 = leading_order_fields(build_surface_jet(*make_gaussian_bump(1.0, 1.0), g)).m0;
  EXPECT_NEAR(w1_fourier(m2, basis).w / w1_fourier(m1, basis).w, 4.0, 1e-12);
  EXPECT_NEAR(w1_realspace(m2, basis).w / w1_realspace(m1, basis).w, 4.0, 1e-12);
}

// Metamorphic: x -> x / 2 in f with a -> a / 2 leaves w1 invariant
// (m0 scales by 2, areas by 1/4, k_j^2 by 4, T_j by 1/2, kernel mass by 1/4).
TEST(W1, JointSpatialScaling) {
  const Grid2D g1 = Grid2D::centered(9.0, 0.1);
  const Grid2D g2 = Grid2D::centered(4.5, 0.05);
  const auto m1 = leading_order_fields(build_surface_jet(*make_gaussian_bump(1.0, 1.0), g1)).m0;
  const auto m2 = leading_order_fields(build_surface_jet(*make_gaussian_bump(0.5, 0.5), g2)).m0;
  const double w1 = w1_fourier(m1, TransverseBasis(1.2, 32)).w;
  const double w2 = w1_fourier(m2, TransverseBasis(0.6, 32)).w;
  EXPECT_NEAR(w2 / w1, 1.0, 1e-10);
}

TEST(W1, PlanarSurfaceGivesZero) {
  const Grid2D g = Grid2D::centered(5.0, 0.1);
  const auto fields = leading_order_fields(build_surface_jet(*make_planar_surface(0.3, -0.2), g));
  const TransverseBasis basis(1.0, 16);
  EXPECT_EQ(w1_fourier(fields.m0, basis).w, 0.0);
  EXPECT_EQ(w1_realspace(fields.m0, basis).w, 0.0);
  EXPECT_EQ(w1_intermediate(fields, basis).w, 0.0);
}

TEST(W1, ThinLayerLaw) {
  const Field2D& m0 = bump().fields.m0;
  double prev_err = 0.0;
  for (double d : {0.4, 0.2, 0.1}) {
    const TransverseBasis basis(0.5 * d, 256);
    const double w = w1_fourier(m0, basis).w_tail_corrected;
    const ThinLayerResult t = w1_thin(m0, d, &basis);
    EXPECT_NEAR(t.m0_norm_sq, inner(m0, m0), 1e-10);
    const double err = std::abs(w - (t.leading + t.d2_term));
    EXPECT_LT(std::abs(w - t.leading), std::abs(t.leading));
    if (prev_err > 0.0) EXPECT_GT(prev_err / err, 10.0) << d;  // O(d^4) remainder
    prev_err = err;
    EXPECT_NEAR(t.full, w1_fourier(m0, basis).w, 1e-6 * std::abs(w));
  }
}

TEST(W1, DecayOrderReported) {
  AsymptoticOptions opt;
  opt.decay_exponent = 1.0;
  const SpectralResult r = w1_fourier(bump().fields.m0, TransverseBasis(1.0, 8), opt);
  EXPECT_DOUBLE_EQ(r.gamma_order, 0.5);
  opt.decay_exponent = 6.0;
  EXPECT_DOUBLE_EQ(w1_fourier(bump().fields.m0, TransverseBasis(1.0, 8), opt).gamma_order, 1.0);
}
