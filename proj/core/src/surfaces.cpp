#include "curvlayer/surfaces.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace curvlayer {
namespace {

void check_order(int n1, int n2) {
  if (n1 < 0 || n2 < 0 || n1 + n2 > 4) throw std::invalid_argument("surface partial: order must be 0..4");
}

// k-th derivative of exp(-t^2 / (2 s^2)), k = 0..4, via Hermite polynomials.
double gaussian_derivative(int k, double t, double s) {
  const double z = t / s;
  const double e = std::exp(-0.5 * z * z);
  double he = 0.0;
  switch (k) {
    case 0: he = 1.0; break;
    case 1: he = z; break;
    case 2: he = z * z - 1.0; break;
    case 3: he = z * z * z - 3.0 * z; break;
    case 4: he = z * z * z * z - 6.0 * z * z + 3.0; break;
    default: throw std::invalid_argument("gaussian_derivative: order must be 0..4");
  }
  return std::pow(-1.0 / s, k) * he * e;
}

class Planar final : public AnalyticSurface {
 public:
  Planar(double p, double q) : p_(p), q_(q) {}
  double partial(int n1, int n2, double x1, double x2) const override {
    check_order(n1, n2);
    if (n1 == 0 && n2 == 0) return p_ * x1 + q_ * x2;
    if (n1 == 1 && n2 == 0) return p_;
    if (n1 == 0 && n2 == 1) return q_;
    return 0.0;
  }
  std::string name() const override { return "planar"; }
  bool planar() const override { return true; }

 private:
  double p_, q_;
};

class ParabolicCylinder final : public AnalyticSurface {
 public:
  explicit ParabolicCylinder(double c) : c_(c) {}
  double partial(int n1, int n2, double x1, double) const override {
    check_order(n1, n2);
    if (n2 != 0) return 0.0;
    switch (n1) {
      case 0: return 0.5 * c_ * x1 * x1;
      case 1: return c_ * x1;
      case 2: return c_;
      default: return 0.0;
    }
  }
  std::string name() const override { return "parabolic_cylinder"; }
  bool planar() const override { return c_ == 0.0; }

 private:
  double c_;
};

class GaussianBump final : public AnalyticSurface {
 public:
  GaussianBump(double a, double s, double cx, double cy) : a_(a), s_(s), cx_(cx), cy_(cy) {
    if (!(s > 0.0)) throw std::invalid_argument("gaussian_bump: width must be positive");
  }
  double partial(int n1, int n2, double x1, double x2) const override {
    check_order(n1, n2);
    return a_ * gaussian_derivative(n1, x1 - cx_, s_) * gaussian_derivative(n2, x2 - cy_, s_);
  }
  std::string name() const override { return "gaussian_bump"; }
  bool planar() const override { return a_ == 0.0; }

 private:
  double a_, s_, cx_, cy_;
};

class Ripple final : public AnalyticSurface {
 public:
  Ripple(double a, double k, double s) : a_(a), k_(k), s_(s) {
    if (!(s > 0.0)) throw std::invalid_argument("ripple: width must be positive");
  }
  double partial(int n1, int n2, double x1, double x2) const override {
    check_order(n1, n2);
    static constexpr std::array<std::array<double, 5>, 5> binom{{{1, 0, 0, 0, 0},
                                                                  {1, 1, 0, 0, 0},
                                                                  {1, 2, 1, 0, 0},
                                                                  {1, 3, 3, 1, 0},
                                                                  {1, 4, 6, 4, 1}}};
    double along = 0.0;
    for (int i = 0; i <= n1; ++i) {
      const double trig = std::pow(k_, i) * std::cos(k_ * x1 + 0.5 * i * 3.14159265358979323846);
      along += binom[n1][i] * trig * gaussian_derivative(n1 - i, x1, s_);
    }
    return a_ * along * gaussian_derivative(n2, x2, s_);
  }
  std::string name() const override { return "ripple"; }
  bool planar() const override { return a_ == 0.0; }

 private:
  double a_, k_, s_;
};

double take(const ParameterMap& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

void reject_unknown(const std::string& name, const ParameterMap& given, const ParameterMap& known) {
  for (const auto& [k, v] : given) {
    (void)v;
    if (!known.count(k)) throw std::invalid_argument("surface '" + name + "': unknown parameter '" + k + "'");
  }
}

}  // namespace

std::unique_ptr<AnalyticSurface> make_planar_surface(double slope_x, double slope_y) {
  return std::make_unique<Planar>(slope_x, slope_y);
}
std::unique_ptr<AnalyticSurface> make_parabolic_cylinder(double curvature) {
  return std::make_unique<ParabolicCylinder>(curvature);
}
std::unique_ptr<AnalyticSurface> make_gaussian_bump(double amplitude, double width, double cx, double cy) {
  return std::make_unique<GaussianBump>(amplitude, width, cx, cy);
}
std::unique_ptr<AnalyticSurface> make_ripple(double amplitude, double wavenumber, double width) {
  return std::make_unique<Ripple>(amplitude, wavenumber, width);
}

std::vector<std::string> surface_names() { return {"planar", "parabolic_cylinder", "gaussian_bump", "ripple"}; }

ParameterMap surface_defaults(const std::string& name) {
  if (name == "planar") return {{"slope_x", 0.0}, {"slope_y", 0.0}};
  if (name == "parabolic_cylinder") return {{"curvature", 1.0}};
  if (name == "gaussian_bump") return {{"amplitude", 1.0}, {"width", 1.0}, {"center_x", 0.0}, {"center_y", 0.0}};
  if (name == "ripple") return {{"amplitude", 1.0}, {"wavenumber", 1.0}, {"width", 2.0}};
  throw std::invalid_argument("unknown surface '" + name + "'");
}

std::unique_ptr<AnalyticSurface> make_surface(const std::string& name, const ParameterMap& params) {
  const ParameterMap d = surface_defaults(name);
  reject_unknown(name, params, d);
  auto get = [&](const std::string& k) { return take(params, k, d.at(k)); };
  if (name == "planar") return make_planar_surface(get("slope_x"), get("slope_y"));
  if (name == "parabolic_cylinder") return make_parabolic_cylinder(get("curvature"));
  if (name == "gaussian_bump") return make_gaussian_bump(get("amplitude"), get("width"), get("center_x"), get("center_y"));
  return make_ripple(get("amplitude"), get("wavenumber"), get("width"));
}

}  // namespace curvlayer
