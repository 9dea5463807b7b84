// SPDX-License-Identifier: Apache-2.0
//
// risim - system-level simulator for RIS-assisted multi-cell cellular networks

#pragma once

#include "risim/channel.hpp"
#include "risim/geometry.hpp"
#include "risim/metrics.hpp"
#include "risim/ris.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace risim {

enum class Strategy { NoRis, Random, Codebook, Ideal, Discrete };

std::string strategy_name(Strategy s);
std::optional<Strategy> parse_strategy(const std::string& name);

struct SimConfig {
  // layout
  double isd_m = 500.0;
  int rings = 1;
  double bs_height_m = 25.0;
  double ris_height_m = 10.0;
  double user_height_m = 1.5;
  double min_bs_user_dist_m = 35.0;
  double bs_downtilt_deg = 12.0;

  EnvProfile env;

  // panels
  int bs_nx = 10;
  int bs_ny = 4;  // 40 co-polarized elements
  int ris_nx = 16;
  int ris_ny = 16;  // N = 256
  double spacing_wl = 0.5;

  // strategy
  Strategy strategy = Strategy::Ideal;
  int levels = 16;  // D for Discrete
  int beams = 8;    // B for Codebook

  // run
  int drops = 20;
  std::uint64_t seed = 1;
  int users_per_sector = 10;
  double tx_power_dbm = 43.0;
  double bandwidth_hz = 10e6;
  double noise_figure_db = 9.0;
  double thermal_dbm_hz = -174.0;
  double speed_mps = 0.0;
  double time_s = 0.0;
  int threads = 1;

  double tx_power_watt() const { return dbm_to_watt(tx_power_dbm); }
  double noise_power_watt() const {
    return dbm_to_watt(thermal_dbm_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db);
  }

  AntennaPanel bs_panel(double boresight_deg) const;
  AntennaPanel ris_panel(double boresight_deg) const;
  AntennaPanel user_panel() const;
};

struct DropResult {
  DropMetrics metrics;
};

struct CampaignResult {
  std::vector<DropResult> drops;
  // pooled per-user samples, drop order
  std::vector<double> coupling_loss_db;
  std::vector<double> snr_db;
  std::vector<double> sinr_db;
  std::vector<double> spectral_eff;
  EmpiricalCdf coupling_loss_cdf;
  EmpiricalCdf sinr_cdf;
  EmpiricalCdf se_cdf;
};

/// Serving sector per user: argmax of direct-link received power, ties to the
/// lowest sector index.
std::vector<int> attach_users(const Eigen::MatrixXd& rx_power_user_by_sector);

/// Best beam for one user given its direct and cascade links; returns
/// {-1, direct power} when no beam beats the direct-only link.
std::pair<int, double> select_best_beam(const CMatrix& h, const CMatrix& f, const CMatrix& g,
                                        const BeamCodebook& codebook, double tx_power_watt);

NetworkLayout make_layout(const SimConfig& cfg);

/// Codebook shared by all sectors: the BS arrival direction and the beam
/// grid are identical in every RIS local frame by construction.
BeamCodebook default_codebook(const SimConfig& cfg, const NetworkLayout& layout);

DropResult run_drop(const SimConfig& cfg, const NetworkLayout& layout, int drop_index);

CampaignResult run_campaign(const SimConfig& cfg);

}  // namespace risim
