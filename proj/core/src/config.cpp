#include "curvlayer/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <cctype>
#include <sstream>

#include "curvlayer/csv.hpp"
#include "curvlayer/potentials.hpp"

namespace curvlayer {
namespace {

namespace pt = boost::property_tree;

double to_double(const std::string& section, const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
  if (used == 0 || used != text.size()) throw ConfigError(section + "." + key + ": not a number: '" + text + "'");
  return v;
}

int to_int(const std::string& section, const std::string& key, const std::string& text) {
  const double v = to_double(section, key, text);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(section + "." + key + ": not an integer: '" + text + "'");
  return static_cast<int>(v);
}

bool to_bool(const std::string& section, const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(section + "." + key + ": not a boolean: '" + text + "'");
}

std::vector<double> to_list(const std::string& section, const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ConfigError(section + "." + key + ": empty list entry");
    out.push_back(to_double(section, key, item.substr(b, e - b + 1)));
  }
  if (out.empty()) throw ConfigError(section + "." + key + ": empty list");
  return out;
}

std::string list_text(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

void read_named(const pt::ptree& sec, const std::string& section, std::string& name, ParameterMap& params) {
  for (const auto& [key, node] : sec) {
    const std::string text = node.get_value<std::string>();
    if (key == "name") name = text;
    else params[key] = to_double(section, key, text);
  }
  if (name.empty()) throw ConfigError("[" + section + "] requires a name");
}

}  // namespace

RunConfig parse_config(const std::string& ini_text) {
  pt::ptree tree;
  std::istringstream in(ini_text);
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  RunConfig c;
  for (const auto& [section, sec] : tree) {
    if (!sec.data().empty()) throw ConfigError("key outside any section: " + section);
    if (section == "surface") {
      read_named(sec, section, c.surface, c.surface_params);
      continue;
    }
    if (section == "potential") {
      read_named(sec, section, c.potential, c.potential_params);
      continue;
    }
    for (const auto& [key, node] : sec) {
      const std::string v = node.get_value<std::string>();
      const std::string s = section;
      if (s == "transverse" && key == "a") c.a = to_double(s, key, v);
      else if (s == "transverse" && key == "modes") c.modes = to_int(s, key, v);
      else if (s == "grid" && key == "half_extent") c.half_extent = to_double(s, key, v);
      else if (s == "grid" && key == "h") c.h = to_double(s, key, v);
      else if (s == "layer" && key == "eps") c.eps = to_double(s, key, v);
      else if (s == "layer" && key == "eps_sweep") c.eps_sweep = to_list(s, key, v);
      else if (s == "layer" && key == "asymptotic_modes") c.asymptotic_modes = to_int(s, key, v);
      else if (s == "layer" && key == "route_tol") c.route_tol = to_double(s, key, v);
      else if (s == "layer" && key == "bracket") c.bracket = to_bool(s, key, v);
      else if (s == "layer" && key == "bracket_log_gap") c.bracket_log_gap = to_double(s, key, v);
      else if (s == "planar" && key == "lambda") c.lambda = to_double(s, key, v);
      else if (s == "planar" && key == "lambda_sweep") c.lambda_sweep = to_list(s, key, v);
      else if (s == "solver" && key == "tol") c.tol = to_double(s, key, v);
      else if (s == "solver" && key == "pad_factor") c.pad_factor = to_int(s, key, v);
      else if (s == "solver" && key == "bs_rootfind") c.bs_rootfind = to_bool(s, key, v);
      else if (s == "solver" && key == "direct") c.direct = to_bool(s, key, v);
      else if (s == "solver" && key == "direct_half_extent") c.direct_half_extent = to_double(s, key, v);
      else if (s == "solver" && key == "direct_h") c.direct_h = to_list(s, key, v);
      else if (s == "solver" && key == "direct_min_log_gap") c.direct_min_log_gap = to_double(s, key, v);
      else if (s == "solver" && key == "memory_budget_gb") c.memory_budget_gb = to_double(s, key, v);
      else if (s == "output" && key == "dir") c.out_dir = v;
      else throw ConfigError("unknown config key: [" + s + "] " + key);
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

bool integral_ratio(double num, double den) {
  const double r = num / den;
  return std::abs(r - std::round(r)) <= 1e-9 * std::max(1.0, r);
}

}  // namespace

void validate(RunConfig& c) {
  require(std::isfinite(c.a) && c.a > 0.0, "transverse.a must be positive");
  require(c.modes >= 1 && c.modes <= 4096, "transverse.modes must be in [1, 4096]");
  require(std::isfinite(c.half_extent) && c.half_extent > 0.0, "grid.half_extent must be positive");
  require(std::isfinite(c.h) && c.h > 0.0, "grid.h must be positive");
  require(integral_ratio(2.0 * c.half_extent, c.h), "grid: 2*half_extent must be a multiple of h");
  require(std::isfinite(c.eps) && c.eps > 0.0, "layer.eps must be positive");
  for (double e : c.eps_sweep) require(std::isfinite(e) && e > 0.0, "layer.eps_sweep entries must be positive");
  require(c.asymptotic_modes >= 2, "layer.asymptotic_modes must be at least 2");
  require(c.route_tol > 0.0, "layer.route_tol must be positive");
  require(c.bracket_log_gap < 0.0, "layer.bracket_log_gap must be negative");
  require(std::isfinite(c.lambda) && c.lambda > 0.0, "planar.lambda must be positive");
  for (double l : c.lambda_sweep) require(std::isfinite(l) && l > 0.0, "planar.lambda_sweep entries must be positive");
  require(c.tol > 0.0 && c.tol < 1.0, "solver.tol must be in (0, 1)");
  require(c.pad_factor >= 2, "solver.pad_factor must be at least 2");
  require(c.direct_half_extent > 0.0, "solver.direct_half_extent must be positive");
  for (double h : c.direct_h) {
    require(h > 0.0, "solver.direct_h entries must be positive");
    require(integral_ratio(2.0 * c.direct_half_extent, h), "solver: 2*direct_half_extent must be a multiple of each direct_h");
  }
  require(c.memory_budget_gb > 0.0, "solver.memory_budget_gb must be positive");
  require(!c.out_dir.empty(), "output.dir must not be empty");
  try {
    if (!c.surface.empty()) {
      make_surface(c.surface, c.surface_params);
      ParameterMap full = surface_defaults(c.surface);
      for (const auto& [k, v] : c.surface_params) full[k] = v;
      c.surface_params = full;
    }
    if (!c.potential.empty()) {
      make_potential(c.potential, c.potential_params);
      ParameterMap full = potential_defaults(c.potential);
      for (const auto& [k, v] : c.potential_params) full[k] = v;
      c.potential_params = full;
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::string to_ini(const RunConfig& c) {
  std::ostringstream os;
  auto b = [](bool v) { return v ? "true" : "false"; };
  os << "[transverse]\na = " << format_double(c.a) << "\nmodes = " << c.modes << "\n\n";
  if (!c.surface.empty()) {
    os << "[surface]\nname = " << c.surface << "\n";
    for (const auto& [k, v] : c.surface_params) os << k << " = " << format_double(v) << "\n";
    os << "\n";
  }
  if (!c.potential.empty()) {
    os << "[potential]\nname = " << c.potential << "\n";
    for (const auto& [k, v] : c.potential_params) os << k << " = " << format_double(v) << "\n";
    os << "\n";
  }
  os << "[grid]\nhalf_extent = " << format_double(c.half_extent) << "\nh = " << format_double(c.h) << "\n\n";
  os << "[layer]\neps = " << format_double(c.eps) << "\neps_sweep = " << list_text(c.eps_sweep)
     << "\nasymptotic_modes = " << c.asymptotic_modes << "\nroute_tol = " << format_double(c.route_tol)
     << "\nbracket = " << b(c.bracket) << "\nbracket_log_gap = " << format_double(c.bracket_log_gap) << "\n\n";
  os << "[planar]\nlambda = " << format_double(c.lambda) << "\nlambda_sweep = " << list_text(c.lambda_sweep) << "\n\n";
  os << "[solver]\ntol = " << format_double(c.tol) << "\npad_factor = " << c.pad_factor
     << "\nbs_rootfind = " << b(c.bs_rootfind) << "\ndirect = " << b(c.direct)
     << "\ndirect_half_extent = " << format_double(c.direct_half_extent) << "\ndirect_h = " << list_text(c.direct_h)
     << "\ndirect_min_log_gap = " << format_double(c.direct_min_log_gap)
     << "\nmemory_budget_gb = " << format_double(c.memory_budget_gb) << "\n\n";
  os << "[output]\ndir = " << c.out_dir << "\n";
  return os.str();
}

}  // namespace curvlayer
