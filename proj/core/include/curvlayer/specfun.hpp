#pragma once

// Modified Bessel functions of order zero and the interpolation pair (f, g)
// satisfying K0(u) = f(u) ln u + g(u).

namespace curvlayer {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kLn2 = 0.69314718055994530941723212145817657;

// Lattice constant of the 2D logarithm: the limit of
//   h^2 sum_{n != 0} ln|n h|  -  \int ln|x| dx  (minus the diagonal share)
// used to correct the diagonal cell of log-singular quadratures.
// Equals ln(2 sqrt(pi) / Gamma(1/4)^2).
inline constexpr double kLatticeLogConstant = -1.3105329259115095183;

double bessel_i0(double u);
double bessel_k0(double u);

// K0(u) + ln(u/2) + gamma_E, accurate as u -> 0 (it vanishes like u^2 ln u).
double bessel_k0_regular(double u);

double interp_f(double u);
double interp_g(double u);
// 1 + f(u), free of cancellation for small u.
double interp_f_plus_one(double u);

}  // namespace curvlayer
