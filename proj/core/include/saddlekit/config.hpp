#pragma once

#include <string>
#include <vector>

#include "saddlekit/stability.hpp"

namespace saddlekit {

/// Run parameters shared by the CLI commands; parsed from a flat
/// key=value file plus --key value overrides.
struct RunConfig {
  std::string nonlinearity = "allen_cahn";
  int m = 2;
  double R = 12.0;
  double h = 1.0 / 16.0;
  double tol = 1e-10;
  int k_max = 500;
  std::string output_dir = "out";
  std::uint64_t seed = 12345;
  double tau_max = 8.0;
  int nodes = 512;
  std::vector<double> a_list = {4.0, 8.0, 16.0};
  PiecewiseEtaParams eta;
  double band_lo_frac = 0.5;   // asymptotics band [lo, hi] * R in y
  double band_hi_frac = 0.75;
  int cone_trials = 20;
  std::vector<std::string> commands;  // executed in order by `saddlekit run`

  /// Throws std::invalid_argument when R/h is not an integer, m < 1 or
  /// tol <= 0 (mapped to the configuration exit code by the CLI).
  void check() const;
};

/// Parses a flat key=value file; '#' starts a comment. Unknown keys throw.
RunConfig load_config(const std::string& path);

/// Applies --key value pairs on top of a config. Unknown keys throw.
void apply_override(RunConfig& config, const std::string& key,
                    const std::string& value);

}  // namespace saddlekit
