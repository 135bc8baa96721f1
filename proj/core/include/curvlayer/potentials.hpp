#pragma once

#include <functional>
#include <string>
#include <vector>

#include "curvlayer/grid.hpp"
#include "curvlayer/quadrature.hpp"
#include "curvlayer/surfaces.hpp"

namespace curvlayer {

// Potential V(x, u) on R^2 x (-a, a), either as a callback or sampled on
// grid x u-rule (value (p, iu) at iu * grid.size() + p).
class PotentialSpec {
 public:
  using Callback = std::function<double(double x1, double x2, double u)>;

  static PotentialSpec analytic(Callback fn, double decay_exponent, bool bounded, std::string name);
  static PotentialSpec sampled(const Grid2D& grid, QuadratureRule u_rule, std::vector<double> values,
                               double decay_exponent, bool bounded, std::string name);

  bool is_sampled() const { return sampled_; }
  double operator()(double x1, double x2, double u) const { return fn_(x1, x2, u); }
  const Grid2D& grid() const { return grid_; }
  const QuadratureRule& u_rule() const { return u_rule_; }
  const std::vector<double>& values() const { return values_; }

  double decay_exponent() const { return decay_; }
  bool bounded() const { return bounded_; }
  const std::string& name() const { return name_; }

 private:
  bool sampled_ = false;
  Callback fn_;
  Grid2D grid_;
  QuadratureRule u_rule_;
  std::vector<double> values_;
  double decay_ = 2.0;
  bool bounded_ = true;
  std::string name_;
};

// gaussian_well: -depth exp(-|x|^2/(2 width^2)) (1 + tilt u)
// compact_bump:   amplitude b(|x|/radius) (1 + tilt u), b(t) = e^{1 - 1/(1-t^2)} for t < 1
// dipole_uv:      strength u exp(-|x|^2/(2 width^2)); its (1,1) projection vanishes
PotentialSpec make_potential(const std::string& name, const ParameterMap& params);
std::vector<std::string> potential_names();
ParameterMap potential_defaults(const std::string& name);

}  // namespace curvlayer
