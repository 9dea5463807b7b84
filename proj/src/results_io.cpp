// SPDX-License-Identifier: Apache-2.0
//
// risim - system-level simulator for RIS-assisted multi-cell cellular networks

#include "risim/results_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace risim {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string num9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_cdf_csv(const fs::path& path, const EmpiricalCdf& cdf) {
  std::string body = "value,cdf\n";
  for (std::size_t i = 0; i < cdf.values.size(); ++i) {
    body += num9(cdf.values[i]);
    body += ',';
    body += num9(cdf.probabilities[i]);
    body += '\n';
  }
  write_file(path, body);
}

ordered_json percentile_block(const EmpiricalCdf& cdf) {
  return ordered_json{{"p05", cdf.percentile(0.05)},
                      {"p50", cdf.percentile(0.50)},
                      {"p95", cdf.percentile(0.95)}};
}

}  // namespace

RunManifest write_results(const std::vector<StrategyRun>& runs, const std::string& out_dir,
                          double wall_time_s) {
  if (runs.empty()) throw std::invalid_argument("write_results: no runs");
  const fs::path root(out_dir);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw std::runtime_error("cannot create output dir: " + root.string());

  RunManifest manifest;
  manifest.seed = runs.front().cfg.seed;
  manifest.config_hash = config_hash(runs.front().cfg);
  manifest.wall_time_s = wall_time_s;

  for (const StrategyRun& run : runs) {
    const fs::path dir = root / run.name;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output dir: " + dir.string());

    write_cdf_csv(dir / "coupling_loss.csv", run.result.coupling_loss_cdf);
    write_cdf_csv(dir / "sinr_db.csv", run.result.sinr_cdf);
    write_cdf_csv(dir / "spectral_eff.csv", run.result.se_cdf);
    manifest.files.push_back(run.name + "/coupling_loss.csv");
    manifest.files.push_back(run.name + "/sinr_db.csv");
    manifest.files.push_back(run.name + "/spectral_eff.csv");

    ordered_json summary;
    summary["strategy"] = run.name;
    summary["seed"] = run.cfg.seed;
    summary["drops"] = run.cfg.drops;
    summary["samples"] = run.result.sinr_db.size();
    summary["percentiles"] = ordered_json{
        {"coupling_loss_db", percentile_block(run.result.coupling_loss_cdf)},
        {"sinr_db", percentile_block(run.result.sinr_cdf)},
        {"spectral_eff", percentile_block(run.result.se_cdf)}};
    summary["config"] = emit_config(run.cfg);
    write_file(dir / "summary.json", summary.dump(2) + "\n");
    manifest.files.push_back(run.name + "/summary.json");
  }

  if (runs.size() > 1) {
    const StrategyRun& base = runs.front();
    ordered_json cmp;
    cmp["baseline"] = base.name;
    ordered_json rows = ordered_json::array();
    for (const StrategyRun& run : runs) {
      ordered_json row;
      row["name"] = run.name;
      row["median_coupling_loss_db"] = run.result.coupling_loss_cdf.percentile(0.5);
      row["median_sinr_db"] = run.result.sinr_cdf.percentile(0.5);
      row["median_spectral_eff"] = run.result.se_cdf.percentile(0.5);
      row["delta_median_coupling_loss_db"] =
          base.result.coupling_loss_cdf.percentile(0.5) -
          run.result.coupling_loss_cdf.percentile(0.5);
      row["delta_median_sinr_db"] =
          run.result.sinr_cdf.percentile(0.5) - base.result.sinr_cdf.percentile(0.5);
      row["delta_median_spectral_eff"] =
          run.result.se_cdf.percentile(0.5) - base.result.se_cdf.percentile(0.5);
      rows.push_back(row);
    }
    cmp["runs"] = rows;
    write_file(root / "comparison.json", cmp.dump(2) + "\n");
    manifest.files.push_back("comparison.json");
  }

  ordered_json mj;
  char hash_buf[24];
  std::snprintf(hash_buf, sizeof(hash_buf), "%016llx",
                static_cast<unsigned long long>(manifest.config_hash));
  mj["config_hash"] = hash_buf;
  mj["seed"] = manifest.seed;
  mj["tool_version"] = manifest.tool_version;
  mj["wall_time_s"] = manifest.wall_time_s;
  mj["files"] = manifest.files;
  mj["config"] = emit_config(runs.front().cfg);  // enough to rerun exactly
  write_file(root / "manifest.json", mj.dump(2) + "\n");
  return manifest;
}

}  // namespace risim
