#pragma once

#include <string>
#include <vector>

#include "curvlayer/config.hpp"

namespace curvlayer {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitNoBoundState = 2, kExitValidation = 3 };

struct PipelineReport {
  int exit_code = kExitOk;
  std::vector<std::string> lines;  // human-readable summary
  std::vector<std::string> files;  // CSV/INI files written
};

// Every run creates cfg.out_dir and writes resolved_config.ini there.
// The config must have passed validate().
PipelineReport run_geometry(const RunConfig& cfg);
PipelineReport run_asymptotics(const RunConfig& cfg);
PipelineReport run_planar(const RunConfig& cfg);
PipelineReport run_bs(const RunConfig& cfg);
PipelineReport run_direct(const RunConfig& cfg);
PipelineReport run_layer_pipeline(const RunConfig& cfg);
PipelineReport run_planar_pipeline(const RunConfig& cfg);
PipelineReport run_selftest(const RunConfig& cfg);

}  // namespace curvlayer
