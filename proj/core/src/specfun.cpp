#include "curvlayer/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace curvlayer {
namespace {

constexpr double kSeriesLimit = 2.0;
constexpr double kAsymptoticLimit = 40.0;
constexpr double kI0SeriesLimit = 30.0;

void require_positive(double u, const char* name) {
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw std::domain_error(std::string(name) + ": argument must be positive and finite");
  }
}

// sum_{k>=1} (u^2/4)^k / (k!)^2, i.e. I0(u) - 1.
double i0_minus_one_series(double u) {
  const double q = 0.25 * u * u;
  double term = 1.0;
  double sum = 0.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

// sum_{k>=1} (u^2/4)^k / (k!)^2 * H_k with harmonic numbers H_k.
double k0_harmonic_series(double u) {
  const double q = 0.25 * u * u;
  double term = 1.0;
  double harmonic = 0.0;
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    sum += term * harmonic;
    if (term * harmonic < 1e-18 * sum) break;
  }
  return sum;
}

double i0_minus_one(double u) {
  if (u <= kI0SeriesLimit) return i0_minus_one_series(u);
  return bessel_i0(u) - 1.0;
}

// e^{u} K0(u) = int_0^inf exp(-u (cosh t - 1)) dt by the trapezoid rule; the
// integrand is entire and decays double-exponentially, so the error falls
// like exp(-2 pi d / step) for a strip half-width d.
double k0_scaled_integral(double u) {
  constexpr double strip = kPi / 3.0;
  const double step = 2.0 * kPi * strip / (42.0 + 0.5 * u);
  const double t_max = std::acosh(1.0 + 42.0 / u);
  double sum = 0.5;
  for (int k = 1;; ++k) {
    const double t = k * step;
    if (t > t_max) break;
    sum += std::exp(-u * (std::cosh(t) - 1.0));
  }
  return step * sum;
}

double k0_scaled_asymptotic(double u) {
  const double z8 = 8.0 * u;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * odd * odd / (k * z8);
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    sum += term;
    if (k >= 12 && std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return std::sqrt(kPi / (2.0 * u)) * sum;
}

}  // namespace

double bessel_i0(double u) {
  u = std::abs(u);
  if (!std::isfinite(u)) throw std::domain_error("bessel_i0: non-finite argument");
  if (u <= kI0SeriesLimit) return 1.0 + i0_minus_one_series(u);
  const double z8 = 8.0 * u;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= odd * odd / (k * z8);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return std::exp(u) / std::sqrt(2.0 * kPi * u) * sum;
}

double bessel_k0(double u) {
  require_positive(u, "bessel_k0");
  if (u <= kSeriesLimit) {
    const double i0 = 1.0 + i0_minus_one_series(u);
    return -(std::log(0.5 * u) + kEulerGamma) * i0 + k0_harmonic_series(u);
  }
  if (u > 745.0) return 0.0;
  const double scaled = (u < kAsymptoticLimit) ? k0_scaled_integral(u) : k0_scaled_asymptotic(u);
  return std::exp(-u) * scaled;
}

double bessel_k0_regular(double u) {
  require_positive(u, "bessel_k0_regular");
  const double log_term = std::log(0.5 * u) + kEulerGamma;
  if (u <= kSeriesLimit) {
    return k0_harmonic_series(u) - log_term * i0_minus_one_series(u);
  }
  return bessel_k0(u) + log_term;
}

double interp_f(double u) {
  require_positive(u, "interp_f");
  const double u2 = u * u;
  const double damp = std::exp(-u2);
  const double one_minus = -std::expm1(-u2);
  const double i0_part = (u2 < 700.0) ? damp * bessel_i0(u) : 0.0;
  return -i0_part - one_minus * bessel_k0(u);
}

double interp_f_plus_one(double u) {
  require_positive(u, "interp_f_plus_one");
  const double u2 = u * u;
  const double one_minus = -std::expm1(-u2);
  const double i0_part = (u2 < 700.0) ? std::exp(-u2) * i0_minus_one(u) : 0.0;
  return one_minus * (1.0 - bessel_k0(u)) - i0_part;
}

double interp_g(double u) {
  require_positive(u, "interp_g");
  const double u2 = u * u;
  const double one_minus = -std::expm1(-u2);
  const double lnu = std::log(u);
  const double i0_part = (u2 < 700.0) ? std::exp(-u2) * bessel_i0(u) : 0.0;
  return i0_part * lnu + (1.0 + one_minus * lnu) * bessel_k0(u);
}

}  // namespace curvlayer
