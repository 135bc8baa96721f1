// Batch front end: curvlayer <subcommand> --config PATH [--out DIR] [--modes N] [--tol X] [--quiet]
#include <CLI11.hpp>
#include <functional>
#include <iostream>
#include <map>

#include "curvlayer/pipeline.hpp"

namespace {

struct Flags {
  std::string config;
  std::string out;
  int modes = 0;
  double tol = 0.0;
  bool quiet = false;
};

using Runner = std::function<curvlayer::PipelineReport(const curvlayer::RunConfig&)>;

int run(const Flags& f, const Runner& runner, bool config_optional) {
  using namespace curvlayer;
  RunConfig cfg;
  try {
    if (!f.config.empty()) cfg = load_config(f.config);
    else if (!config_optional) throw ConfigError("--config is required");
    if (!f.out.empty()) cfg.out_dir = f.out;
    if (f.modes != 0) cfg.modes = f.modes;
    if (f.tol != 0.0) cfg.tol = f.tol;
    validate(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    const PipelineReport rep = runner(cfg);
    if (!f.quiet) {
      for (const auto& line : rep.lines) std::cout << line << "\n";
      for (const auto& file : rep.files) std::cout << "wrote " << file << "\n";
    } else if (rep.exit_code != kExitOk && !rep.lines.empty()) {
      std::cerr << rep.lines.back() << "\n";
    }
    return rep.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace curvlayer;
  CLI::App app{"Bound states of weakly curved quantum layers"};
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::tuple<std::string, std::string, Runner>> commands = {
      {"geometry", "curvature fields and layer constants", run_geometry},
      {"asymptotics", "w1 by three routes, thin-layer check, energy sweep", run_asymptotics},
      {"planar", "weak-coupling expansion over a lambda sweep", run_planar},
      {"bs", "Birman-Schwinger fixed point and root finder", run_bs},
      {"direct", "finite-difference ground state with refinement ladder", run_direct},
      {"pipeline-layer", "geometry, asymptotics and optional bracket", run_layer_pipeline},
      {"pipeline-planar", "expansion vs Birman-Schwinger vs direct over a lambda sweep", run_planar_pipeline},
      {"selftest", "quick internal consistency checks", run_selftest},
  };
  int code = kExitOk;
  for (const auto& [name, help, runner] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", flags.config, "INI config file");
    sub->add_option("--out", flags.out, "output directory (overrides [output] dir)");
    sub->add_option("--modes", flags.modes, "transverse mode cutoff N")->check(CLI::PositiveNumber);
    sub->add_option("--tol", flags.tol, "solver tolerance")->check(CLI::PositiveNumber);
    sub->add_flag("--quiet", flags.quiet, "suppress the summary");
    const bool optional = name == "selftest";
    sub->callback([&, runner = runner, optional]() { code = run(flags, runner, optional); });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }
  return code;
}
