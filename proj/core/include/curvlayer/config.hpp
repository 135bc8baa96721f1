#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "curvlayer/surfaces.hpp"

namespace curvlayer {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// INI schema (all keys optional unless a subcommand needs the section):
//   [transverse] a, modes
//   [surface]    name, then the surface parameters
//   [potential]  name, then the potential parameters
//   [grid]       half_extent, h
//   [layer]      eps, eps_sweep, asymptotic_modes, route_tol, bracket, bracket_log_gap
//   [planar]     lambda, lambda_sweep
//   [solver]     tol, pad_factor, bs_rootfind, direct, direct_half_extent, direct_h,
//                direct_min_log_gap, memory_budget_gb
//   [output]     dir
// Lists are comma separated. Unknown sections or keys are rejected.
struct RunConfig {
  double a = 1.5707963267948966;
  int modes = 8;

  std::string surface;  // empty: no surface section
  ParameterMap surface_params;
  std::string potential;
  ParameterMap potential_params;

  double half_extent = 10.0;
  double h = 0.1;

  double eps = 0.1;
  std::vector<double> eps_sweep{0.1, 0.05};
  int asymptotic_modes = 64;
  double route_tol = 1e-3;
  bool bracket = false;
  double bracket_log_gap = -12.0;

  double lambda = 0.5;
  std::vector<double> lambda_sweep{0.04, 0.02, 0.01};

  double tol = 1e-12;
  int pad_factor = 2;
  bool bs_rootfind = true;
  bool direct = true;
  double direct_half_extent = 12.0;
  std::vector<double> direct_h{0.2, 0.1};
  double direct_min_log_gap = -8.0;
  double memory_budget_gb = 3.0;

  std::string out_dir = "out";
};

RunConfig parse_config(const std::string& ini_text);
RunConfig load_config(const std::string& path);
// Fills defaulted surface/potential parameters and checks every value.
void validate(RunConfig& cfg);
// Resolved configuration as INI text; parsing it reproduces cfg.
std::string to_ini(const RunConfig& cfg);

}  // namespace curvlayer
