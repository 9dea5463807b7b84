// SPDX-License-Identifier: Apache-2.0
//
// risim - system-level simulator for RIS-assisted multi-cell cellular networks

#pragma once

#include "risim/arrays.hpp"
#include "risim/common.hpp"
#include "risim/ris.hpp"
#include "risim/rng.hpp"

#include <cstdint>
#include <vector>

namespace risim {

enum class LosMode { Auto, ForcedLos, ForcedNlos };

/// Environment profile: UMa-class defaults, every field config-overridable.
struct EnvProfile {
  double fc_ghz = 2.0;
  LosMode los_direct = LosMode::Auto;
  LosMode los_bs_ris = LosMode::ForcedLos;  // operator-placed link
  LosMode los_ris_user = LosMode::Auto;
  double shadow_sigma_los_db = 4.0;
  double shadow_sigma_nlos_db = 6.0;
  int clusters_los = 8;  // scattered clusters beside the specular component
  int clusters_nlos = 12;
  int rays_per_cluster = 20;
  double asd_deg = 5.0;
  double asa_deg = 11.0;
  double zsd_deg = 2.0;
  double zsa_deg = 7.0;
  double intra_cluster_az_deg = 3.0;
  double intra_cluster_zen_deg = 1.5;
  double cluster_decay = 3.0;  // e-folding of cluster powers, in cluster index
  double k_factor_db = 9.0;

  double wavelength_m() const { return kSpeedOfLight / (fc_ghz * 1e9); }
};

struct LargeScale {
  double pathloss_db = 0.0;
  double shadow_db = 0.0;
  bool is_los = true;
};

/// Ray angles are stored as offsets around the link's line-of-sight bearing;
/// the synthesizer adds the geometric mean angles per link.
struct Ray {
  double aod_az_off = 0.0;
  double aod_zen_off = 0.0;
  double aoa_az_off = 0.0;
  double aoa_zen_off = 0.0;
  double phase = 0.0;
};

struct Cluster {
  double power = 1.0;  // fraction of unit total
  bool specular = false;
  std::vector<Ray> rays;
};

struct ClusterSet {
  std::vector<Cluster> clusters;
  double total_power() const {
    double p = 0.0;
    for (const auto& c : clusters) p += c.power;
    return p;
  }
};

enum class LinkRole { Direct, BsToRis, RisToUser };

struct LinkChannel {
  CMatrix matrix;  // rows = receive elements, cols = transmit elements
  LargeScale large_scale;
  LinkRole role = LinkRole::Direct;
};

struct DopplerSpec {
  double speed_mps = 0.0;
  double time_s = 0.0;
  Vec3 direction = Vec3(1.0, 0.0, 0.0);  // receiver velocity direction
};

struct LinkGeometry {
  Vec3 tx_pos = Vec3::Zero();
  Vec3 rx_pos = Vec3::Zero();
  double d2d() const {
    return std::hypot(rx_pos.x() - tx_pos.x(), rx_pos.y() - tx_pos.y());
  }
  double d3d() const { return (rx_pos - tx_pos).norm(); }
};

/// UMa outdoor LOS probability; 1 below 18 m, non-increasing beyond.
double los_probability(double d2d);

/// UMa path loss. Distances below the model floor are clamped to 10 m and
/// counted (see pathloss_clamp_count).
double pathloss_uma_db(double d2d, double d3d, double fc_ghz, double h_bs, double h_ut,
                       bool los);

std::uint64_t pathloss_clamp_count();
void reset_pathloss_clamp_count();

LargeScale draw_large_scale(const LinkGeometry& geom, const EnvProfile& env, LosMode mode,
                            RngStream& stream);

/// Cluster/ray synthesis: exponential-decay cluster powers normalized to 1,
/// wrapped-Gaussian cluster means, Laplacian ray offsets, uniform ray phases.
/// LOS adds a specular cluster weighted by the K-factor.
ClusterSet synth_clusters(const EnvProfile& env, bool los, RngStream& stream);

/// Sum over clusters and rays of gain-weighted steering outer products,
/// scaled by the large-scale amplitude. The RIS side of BsToRis/RisToUser
/// links uses the reflection-mode response (see reflect_response).
LinkChannel synth_link(const AntennaPanel& tx_panel, const AntennaPanel& rx_panel,
                       const LinkGeometry& geom, LinkRole role, const ClusterSet& clusters,
                       const LargeScale& large, const DopplerSpec& doppler,
                       const EnvProfile& env);

/// h_eq = H + F diag(exp(j theta)) G.
CMatrix effective_channel(const CMatrix& h_direct, const CMatrix& f, const CMatrix& g,
                          const PhaseConfig& theta);

}  // namespace risim
