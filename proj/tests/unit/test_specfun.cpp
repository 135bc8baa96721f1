#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "curvlayer/specfun.hpp"

using namespace curvlayer;
using big = boost::multiprecision::cpp_bin_float_50;

namespace {

double k0_oracle(double u) { return static_cast<double>(boost::math::cyl_bessel_k(0, big(u))); }
double i0_oracle(double u) { return static_cast<double>(boost::math::cyl_bessel_i(0, big(u))); }

}  // namespace

TEST(Specfun, K0MatchesMultiprecisionOracle) {
  for (double u = 1e-6; u < 700.0; u *= 1.37) {
    const double ref = k0_oracle(u);
    EXPECT_NEAR(bessel_k0(u) / ref, 1.0, 2e-14) << "u = " << u;
  }
}

TEST(Specfun, K0RegimeBoundariesAreContinuous) {
  for (double u : {2.0, 40.0}) {
    const double lo = bessel_k0(std::nextafter(u, 0.0)), hi = bessel_k0(std::nextafter(u, 100.0));
    EXPECT_NEAR(lo / hi, 1.0, 4e-14);  // two-sided 2e-14 accuracy
  }
}

TEST(Specfun, I0MatchesMultiprecisionOracle) {
  for (double u = 1e-4; u < 600.0; u *= 1.51) EXPECT_NEAR(bessel_i0(u) / i0_oracle(u), 1.0, 2e-14) << "u = " << u;
}

TEST(Specfun, K0Limits) {
  EXPECT_EQ(bessel_k0(800.0), 0.0);
  EXPECT_THROW(bessel_k0(0.0), std::domain_error);
  EXPECT_THROW(bessel_k0(-1.0), std::domain_error);
  // K0(u) + ln(u/2) + gamma -> 0 as u -> 0
  EXPECT_NEAR(bessel_k0_regular(1e-8), 0.0, 1e-14);
}

TEST(Specfun, DecompositionReconstructsK0) {
  for (double u = 1e-3; u <= 30.0; u *= 1.05) {
    const double recon = interp_f(u) * std::log(u) + interp_g(u);
    EXPECT_NEAR(recon / bessel_k0(u), 1.0, 1e-12) << "u = " << u;
  }
}

TEST(Specfun, DecompositionSmallArgumentValues) {
  EXPECT_NEAR(interp_f(1e-3), -1.0, 1e-5);
  EXPECT_NEAR(interp_g(1e-3), kLn2 - kEulerGamma, 1e-4);
  EXPECT_NEAR(interp_f_plus_one(1e-3), interp_f(1e-3) + 1.0, 1e-15);
}

TEST(Specfun, DecompositionExponentialBound) {
  for (double u = 0.5; u <= 30.0; u += 0.01) {
    EXPECT_LE(std::max(interp_f(u), interp_g(u)), 2.0 * std::exp(-u)) << "u = " << u;
  }
}

TEST(Specfun, LatticeConstantMatchesGammaQuarter) {
  const double c = std::log(2.0 * std::sqrt(kPi) / std::pow(std::tgamma(0.25), 2));
  EXPECT_NEAR(kLatticeLogConstant, c, 1e-15);
}
