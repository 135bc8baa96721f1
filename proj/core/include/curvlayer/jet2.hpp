#pragma once

#include <array>
#include <cmath>

namespace curvlayer {

// Second-order jet of a scalar function of two variables: value, gradient
// and Hessian (h11, h12, h22). Arithmetic follows the chain rule.
struct Jet2 {
  double v = 0.0;
  std::array<double, 2> g{0.0, 0.0};
  std::array<double, 3> h{0.0, 0.0, 0.0};

  static Jet2 constant(double c) { return Jet2{c, {0.0, 0.0}, {0.0, 0.0, 0.0}}; }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  return {a.v + b.v, {a.g[0] + b.g[0], a.g[1] + b.g[1]}, {a.h[0] + b.h[0], a.h[1] + b.h[1], a.h[2] + b.h[2]}};
}
inline Jet2 operator-(const Jet2& a, const Jet2& b) {
  return {a.v - b.v, {a.g[0] - b.g[0], a.g[1] - b.g[1]}, {a.h[0] - b.h[0], a.h[1] - b.h[1], a.h[2] - b.h[2]}};
}
inline Jet2 operator*(double s, const Jet2& a) {
  return {s * a.v, {s * a.g[0], s * a.g[1]}, {s * a.h[0], s * a.h[1], s * a.h[2]}};
}
inline Jet2 operator*(const Jet2& a, double s) { return s * a; }
inline Jet2 operator+(double s, const Jet2& a) { return Jet2::constant(s) + a; }
inline Jet2 operator-(double s, const Jet2& a) { return Jet2::constant(s) - a; }

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {a.v * b.v,
          {a.g[0] * b.v + a.v * b.g[0], a.g[1] * b.v + a.v * b.g[1]},
          {a.h[0] * b.v + 2.0 * a.g[0] * b.g[0] + a.v * b.h[0],
           a.h[1] * b.v + a.g[0] * b.g[1] + a.g[1] * b.g[0] + a.v * b.h[1],
           a.h[2] * b.v + 2.0 * a.g[1] * b.g[1] + a.v * b.h[2]}};
}

// phi(a) given phi, phi', phi'' at a.v
inline Jet2 compose(const Jet2& a, double phi, double dphi, double ddphi) {
  return {phi,
          {dphi * a.g[0], dphi * a.g[1]},
          {dphi * a.h[0] + ddphi * a.g[0] * a.g[0], dphi * a.h[1] + ddphi * a.g[0] * a.g[1],
           dphi * a.h[2] + ddphi * a.g[1] * a.g[1]}};
}

inline Jet2 pow(const Jet2& a, double p) {
  const double x = a.v;
  return compose(a, std::pow(x, p), p * std::pow(x, p - 1.0), p * (p - 1.0) * std::pow(x, p - 2.0));
}

inline Jet2 reciprocal(const Jet2& a) {
  const double r = 1.0 / a.v;
  return compose(a, r, -r * r, 2.0 * r * r * r);
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * reciprocal(b); }

}  // namespace curvlayer
