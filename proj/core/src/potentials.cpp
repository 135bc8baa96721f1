#include "curvlayer/potentials.hpp"

#include <cmath>
#include <stdexcept>

namespace curvlayer {

PotentialSpec PotentialSpec::analytic(Callback fn, double decay_exponent, bool bounded, std::string name) {
  if (!fn) throw std::invalid_argument("PotentialSpec: empty callback");
  if (!(decay_exponent > 0.0)) throw std::invalid_argument("PotentialSpec: decay exponent must be positive");
  PotentialSpec s;
  s.fn_ = std::move(fn);
  s.decay_ = decay_exponent;
  s.bounded_ = bounded;
  s.name_ = std::move(name);
  return s;
}

PotentialSpec PotentialSpec::sampled(const Grid2D& grid, QuadratureRule u_rule, std::vector<double> values,
                                     double decay_exponent, bool bounded, std::string name) {
  if (values.size() != grid.size() * u_rule.nodes.size()) {
    throw std::invalid_argument("PotentialSpec: sampled value count does not match grid x u-rule");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("PotentialSpec: non-finite sample");
  }
  if (!(decay_exponent > 0.0)) throw std::invalid_argument("PotentialSpec: decay exponent must be positive");
  PotentialSpec s;
  s.sampled_ = true;
  s.grid_ = grid;
  s.u_rule_ = std::move(u_rule);
  s.values_ = std::move(values);
  s.decay_ = decay_exponent;
  s.bounded_ = bounded;
  s.name_ = std::move(name);
  s.fn_ = [](double, double, double) -> double {
    throw std::logic_error("sampled potential has no pointwise evaluator");
  };
  return s;
}

std::vector<std::string> potential_names() { return {"gaussian_well", "compact_bump", "dipole_uv"}; }

ParameterMap potential_defaults(const std::string& name) {
  if (name == "gaussian_well") return {{"depth", 1.0}, {"width", 1.0}, {"tilt", 0.0}, {"decay_exponent", 2.0}};
  if (name == "compact_bump") return {{"amplitude", 1.0}, {"radius", 2.0}, {"tilt", 0.0}, {"decay_exponent", 2.0}};
  if (name == "dipole_uv") return {{"strength", 1.0}, {"width", 1.0}, {"decay_exponent", 2.0}};
  throw std::invalid_argument("unknown potential '" + name + "'");
}

PotentialSpec make_potential(const std::string& name, const ParameterMap& params) {
  const ParameterMap d = potential_defaults(name);
  for (const auto& [k, v] : params) {
    (void)v;
    if (!d.count(k)) throw std::invalid_argument("potential '" + name + "': unknown parameter '" + k + "'");
  }
  auto get = [&](const std::string& k) {
    const auto it = params.find(k);
    return it == params.end() ? d.at(k) : it->second;
  };
  const double delta = get("decay_exponent");
  if (name == "gaussian_well") {
    const double depth = get("depth"), width = get("width"), tilt = get("tilt");
    if (!(width > 0.0)) throw std::invalid_argument("gaussian_well: width must be positive");
    return PotentialSpec::analytic(
        [=](double x1, double x2, double u) {
          return -depth * std::exp(-(x1 * x1 + x2 * x2) / (2.0 * width * width)) * (1.0 + tilt * u);
        },
        delta, true, name);
  }
  if (name == "compact_bump") {
    const double amp = get("amplitude"), radius = get("radius"), tilt = get("tilt");
    if (!(radius > 0.0)) throw std::invalid_argument("compact_bump: radius must be positive");
    return PotentialSpec::analytic(
        [=](double x1, double x2, double u) {
          const double t2 = (x1 * x1 + x2 * x2) / (radius * radius);
          if (t2 >= 1.0) return 0.0;
          return amp * std::exp(1.0 - 1.0 / (1.0 - t2)) * (1.0 + tilt * u);
        },
        delta, true, name);
  }
  const double strength = get("strength"), width = get("width");
  if (!(width > 0.0)) throw std::invalid_argument("dipole_uv: width must be positive");
  return PotentialSpec::analytic(
      [=](double x1, double x2, double u) {
        return strength * u * std::exp(-(x1 * x1 + x2 * x2) / (2.0 * width * width));
      },
      delta, true, name);
}

}  // namespace curvlayer
