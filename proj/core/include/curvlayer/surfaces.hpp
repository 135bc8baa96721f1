#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace curvlayer {

using ParameterMap = std::map<std::string, double>;

// Height profile f(x1, x2) of a Monge patch with exact partial derivatives.
class AnalyticSurface {
 public:
  virtual ~AnalyticSurface() = default;
  // d^{n1+n2} f / dx1^{n1} dx2^{n2} for n1 + n2 <= 4.
  virtual double partial(int n1, int n2, double x1, double x2) const = 0;
  virtual std::string name() const = 0;
  // True when f is affine (the surface is a plane).
  virtual bool planar() const { return false; }
};

std::unique_ptr<AnalyticSurface> make_planar_surface(double slope_x, double slope_y);
// f = (c/2) x1^2
std::unique_ptr<AnalyticSurface> make_parabolic_cylinder(double curvature);
// f = A exp(-|x - c|^2 / (2 s^2))
std::unique_ptr<AnalyticSurface> make_gaussian_bump(double amplitude, double width, double cx = 0.0,
                                                    double cy = 0.0);
// f = A cos(k x1) exp(-|x|^2 / (2 s^2))
std::unique_ptr<AnalyticSurface> make_ripple(double amplitude, double wavenumber, double width);

// Registered names: planar, parabolic_cylinder, gaussian_bump, ripple.
// Unknown names or parameter keys throw std::invalid_argument.
std::unique_ptr<AnalyticSurface> make_surface(const std::string& name, const ParameterMap& params);
std::vector<std::string> surface_names();
// Parameter keys with defaults for a registered surface.
ParameterMap surface_defaults(const std::string& name);

}  // namespace curvlayer
