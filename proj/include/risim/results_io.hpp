// SPDX-License-Identifier: Apache-2.0
//
// risim - system-level simulator for RIS-assisted multi-cell cellular networks

#pragma once

#include "risim/config.hpp"
#include "risim/engine.hpp"

#include <string>
#include <vector>

namespace risim {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  double wall_time_s = 0.0;
  std::vector<std::string> files;  // result files, relative to the output dir
};

struct StrategyRun {
  std::string name;  // directory-safe label, e.g. "ideal" or "discrete16"
  SimConfig cfg;
  CampaignResult result;
};

/// Writes per-metric CDF CSVs (`value,cdf`, LF endings, 9 significant digits)
/// and a summary per run, a comparison file when several runs are given, and
/// the manifest. Returns the manifest. Output bytes are deterministic for a
/// fixed (config, seed); only the manifest carries timing metadata.
RunManifest write_results(const std::vector<StrategyRun>& runs, const std::string& out_dir,
                          double wall_time_s);

}  // namespace risim
