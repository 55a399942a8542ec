#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <dlr/config.hpp>
#include <dlr/diagnostics.hpp>

namespace dlr {

struct RunResult {
  bool ok = true;
  double last_good_time = 0.0;
  std::string error;
  Index steps_taken = 0;
  std::vector<DiagnosticsRecord> records; // t = 0 plus every sampled step
  bool any_saturated = false;
};

struct RunOptions {
  bool write_files = true;       // diagnostics.csv, manifest.txt, snapshots under cfg.out_dir
  std::ostream* log = nullptr;   // progress lines, one per sample
};

// Neutralizing background and tolerance used for a given initial state: the
// initial mean density, checked only when mass is conserved (m >= 1).
Neutrality neutrality_for(const SimulationConfig& cfg, double mean_rho0);

RunResult run(const SimulationConfig& cfg, const RunOptions& opt = {});

} // namespace dlr
