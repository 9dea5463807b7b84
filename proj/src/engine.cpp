// SPDX-License-Identifier: Apache-2.0
//
// risim - system-level simulator for RIS-assisted multi-cell cellular networks

#include "risim/engine.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace risim {

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::NoRis: return "no_ris";
    case Strategy::Random: return "random";
    case Strategy::Codebook: return "codebook";
    case Strategy::Ideal: return "ideal";
    case Strategy::Discrete: return "discrete";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(const std::string& name) {
  if (name == "no_ris") return Strategy::NoRis;
  if (name == "random") return Strategy::Random;
  if (name == "codebook") return Strategy::Codebook;
  if (name == "ideal") return Strategy::Ideal;
  if (name == "discrete") return Strategy::Discrete;
  return std::nullopt;
}

AntennaPanel SimConfig::bs_panel(double boresight_deg) const {
  AntennaPanel p;
  p.n_horizontal = bs_nx;
  p.n_vertical = bs_ny;
  p.dy = p.dz = spacing_wl;
  p.boresight_azimuth_deg = boresight_deg;
  p.downtilt_deg = bs_downtilt_deg;
  p.pattern = ElementPattern::Sectoral3gpp;
  return p;
}

AntennaPanel SimConfig::ris_panel(double boresight_deg) const {
  AntennaPanel p;
  p.n_horizontal = ris_nx;
  p.n_vertical = ris_ny;
  p.dy = p.dz = spacing_wl;
  p.boresight_azimuth_deg = boresight_deg;
  p.downtilt_deg = 0.0;
  p.pattern = ElementPattern::PassiveReflector;
  return p;
}

AntennaPanel SimConfig::user_panel() const {
  AntennaPanel p;  // single omni element
  return p;
}

NetworkLayout make_layout(const SimConfig& cfg) {
  NetworkLayout layout =
      build_hex_layout(cfg.isd_m, cfg.rings, cfg.bs_height_m, cfg.bs_downtilt_deg);
  return place_ris(std::move(layout), cfg.ris_height_m);
}

std::vector<int> attach_users(const Eigen::MatrixXd& rx_power) {
  std::vector<int> serving(rx_power.rows(), 0);
  for (Eigen::Index u = 0; u < rx_power.rows(); ++u) {
    int best = 0;
    for (Eigen::Index s = 1; s < rx_power.cols(); ++s) {
      if (rx_power(u, s) > rx_power(u, best)) best = static_cast<int>(s);
    }
    serving[u] = best;
  }
  return serving;
}

std::pair<int, double> select_best_beam(const CMatrix& h, const CMatrix& f, const CMatrix& g,
                                        const BeamCodebook& codebook, double tx_power_watt) {
  if (codebook.beams.empty()) throw std::invalid_argument("select_best_beam: empty codebook");
  int best = -1;
  double best_power = received_power(h, tx_power_watt);  // direct-only reference
  for (std::size_t b = 0; b < codebook.beams.size(); ++b) {
    const double p =
        received_power(effective_channel(h, f, g, codebook.beams[b].phases), tx_power_watt);
    if (p > best_power) {
      best_power = p;
      best = static_cast<int>(b);
    }
  }
  return {best, best_power};
}

BeamCodebook default_codebook(const SimConfig& cfg, const NetworkLayout& layout) {
  if (layout.ris.empty() || layout.sectors.empty()) {
    throw std::invalid_argument("default_codebook: layout has no RIS");
  }
  const Sector& sec = layout.sectors.front();
  const RisPlacement& ris = layout.ris.front();
  const AntennaPanel panel = cfg.ris_panel(ris.boresight_azimuth_deg);
  const Vec3 toward_bs = (sec.bs_position - ris.position).normalized();
  const DirectionLocal aoa =
      to_local_direction(toward_bs, panel.boresight_azimuth_deg, panel.downtilt_deg);
  // Beams aim at user height around one third of the sector range.
  const double range = 0.35 * cfg.isd_m;
  const double zenith =
      kPi / 2.0 + std::atan2(cfg.ris_height_m - cfg.user_height_m, range);
  return make_codebook(panel, aoa, cfg.beams, 120.0, zenith);
}

namespace {

struct SectorState {
  std::optional<PhaseConfig> phases;  // nullopt: no cascade (NoRis / direct beam)
  CVector precoder;                   // unit-norm transmit weights, length M
  int scheduled_user = -1;
};

CMatrix compose(const CMatrix& h, const CMatrix& f, const CMatrix& g,
                const std::optional<PhaseConfig>& theta) {
  if (!theta.has_value()) return h;
  return effective_channel(h, f, g, *theta);
}

// Scalar reduction of the cascade against the direct-matched precoder:
// h_eq(w0) = H w0 + sum_n e^{j theta_n} r_n.
void cascade_scalars(const CMatrix& h, const CMatrix& f, const CMatrix& g, Complex& h_scalar,
                     CVector& r) {
  const double nh = h.norm();
  CVector w0;
  if (nh > 0.0) {
    w0 = h.adjoint() / nh;
  } else {
    w0 = CVector::Constant(h.cols(), Complex(1.0 / std::sqrt(double(h.cols())), 0.0));
  }
  h_scalar = (h * w0)(0);
  const CVector gw = g * w0;
  r = f.transpose().cwiseProduct(gw);
}

std::optional<PhaseConfig> strategy_phases(const SimConfig& cfg, Strategy strategy,
                                           const CMatrix& h, const CMatrix& f, const CMatrix& g,
                                           const BeamCodebook* codebook,
                                           const PhaseConfig* sector_random) {
  switch (strategy) {
    case Strategy::NoRis:
      return std::nullopt;
    case Strategy::Random:
      return *sector_random;
    case Strategy::Ideal:
    case Strategy::Discrete: {
      Complex h_sc;
      CVector r;
      cascade_scalars(h, f, g, h_sc, r);
      PhaseConfig ideal = ideal_phases(h_sc, r);
      if (strategy == Strategy::Ideal) return ideal;
      return quantize_phases(ideal, cfg.levels);
    }
    case Strategy::Codebook: {
      const auto [beam, power] = select_best_beam(h, f, g, *codebook, cfg.tx_power_watt());
      (void)power;
      if (beam < 0) return std::nullopt;
      return codebook->beams[beam].phases;
    }
  }
  return std::nullopt;
}

}  // namespace

DropResult run_drop(const SimConfig& cfg, const NetworkLayout& layout, int drop_index) {
  if (layout.ris.size() != layout.sectors.size()) {
    throw std::invalid_argument("run_drop: layout must carry one RIS per sector");
  }
  const int n_sectors = static_cast<int>(layout.sectors.size());
  const int n_sites = layout.sites();
  const double p_tx = cfg.tx_power_watt();
  const double noise = cfg.noise_power_watt();
  const DopplerSpec doppler{cfg.speed_mps, cfg.time_s, Vec3(1.0, 0.0, 0.0)};

  const SeedChain drop_chain = SeedChain(cfg.seed).child(kSaltDrop, drop_index);

  // 1. users
  RngStream user_stream = drop_chain.child(kSaltUsers).stream();
  UserDrop users = drop_users(layout, cfg.users_per_sector, cfg.min_bs_user_dist_m, user_stream,
                              cfg.user_height_m);
  const int n_users = static_cast<int>(users.positions.size());

  BeamCodebook codebook;
  if (cfg.strategy == Strategy::Codebook) codebook = default_codebook(cfg, layout);

  // 2. channels
  // BS->RIS links are translation invariant, one per sector.
  std::vector<CMatrix> g_mat(n_sectors);
  for (int s = 0; s < n_sectors; ++s) {
    const Sector& sec = layout.sectors[s];
    const RisPlacement& ris = layout.ris[s];
    RngStream stream = drop_chain.child(kSaltLinkBsRis, s).stream();
    LinkGeometry geom{sec.bs_position, ris.position};
    const LargeScale large = draw_large_scale(geom, cfg.env, cfg.env.los_bs_ris, stream);
    const ClusterSet clusters = synth_clusters(cfg.env, large.is_los, stream);
    g_mat[s] = synth_link(cfg.bs_panel(sec.boresight_azimuth_deg),
                          cfg.ris_panel(ris.boresight_azimuth_deg), geom, LinkRole::BsToRis,
                          clusters, large, doppler, cfg.env)
                   .matrix;
  }

  // Wraparound image offset per (user, site).
  std::vector<std::vector<Vec2>> site_offset(n_users, std::vector<Vec2>(n_sites));
  for (int u = 0; u < n_users; ++u) {
    for (int site = 0; site < n_sites; ++site) {
      site_offset[u][site] =
          wrap_distance(layout, users.positions[u], layout.site_positions[site]).offset;
    }
  }

  std::vector<std::vector<CMatrix>> h_mat(n_users, std::vector<CMatrix>(n_sectors));
  std::vector<std::vector<CMatrix>> f_mat(n_users, std::vector<CMatrix>(n_sectors));
  Eigen::MatrixXd direct_power(n_users, n_sectors);
  const AntennaPanel user_panel = cfg.user_panel();
  for (int u = 0; u < n_users; ++u) {
    for (int s = 0; s < n_sectors; ++s) {
      const Sector& sec = layout.sectors[s];
      const RisPlacement& ris = layout.ris[s];
      const Vec2 off = site_offset[u][sec.site_id];
      const Vec3 shift(off.x(), off.y(), 0.0);

      {
        RngStream stream = drop_chain.child(kSaltLinkDirect, u, s).stream();
        LinkGeometry geom{sec.bs_position + shift, users.positions[u]};
        const LargeScale large = draw_large_scale(geom, cfg.env, cfg.env.los_direct, stream);
        const ClusterSet clusters = synth_clusters(cfg.env, large.is_los, stream);
        h_mat[u][s] = synth_link(cfg.bs_panel(sec.boresight_azimuth_deg), user_panel, geom,
                                 LinkRole::Direct, clusters, large, doppler, cfg.env)
                          .matrix;
      }
      {
        RngStream stream = drop_chain.child(kSaltLinkRisUser, u, s).stream();
        LinkGeometry geom{ris.position + shift, users.positions[u]};
        const LargeScale large = draw_large_scale(geom, cfg.env, cfg.env.los_ris_user, stream);
        const ClusterSet clusters = synth_clusters(cfg.env, large.is_los, stream);
        f_mat[u][s] = synth_link(cfg.ris_panel(ris.boresight_azimuth_deg), user_panel, geom,
                                 LinkRole::RisToUser, clusters, large, doppler, cfg.env)
                          .matrix;
      }
      direct_power(u, s) = p_tx * h_mat[u][s].squaredNorm();
    }
  }

  // 3. attachment and per-sector transmit state
  users.serving_sector = attach_users(direct_power);

  std::vector<std::vector<int>> attached(n_sectors);
  for (int u = 0; u < n_users; ++u) attached[users.serving_sector[u]].push_back(u);

  std::vector<SectorState> state(n_sectors);
  for (int s = 0; s < n_sectors; ++s) {
    RngStream sched_stream = drop_chain.child(kSaltSchedule, s).stream();
    PhaseConfig sector_random;
    if (cfg.strategy == Strategy::Random) {
      RngStream phase_stream = drop_chain.child(kSaltPhases, s).stream();
      sector_random = random_phases(cfg.ris_panel(0.0).element_count(), phase_stream);
    }

    SectorState& st = state[s];
    if (!attached[s].empty()) {
      st.scheduled_user =
          attached[s][sched_stream.uniform_int(attached[s].size())];
      st.phases = strategy_phases(cfg, cfg.strategy, h_mat[st.scheduled_user][s],
                                  f_mat[st.scheduled_user][s], g_mat[s],
                                  cfg.strategy == Strategy::Codebook ? &codebook : nullptr,
                                  &sector_random);
      const CMatrix h_eq = compose(h_mat[st.scheduled_user][s], f_mat[st.scheduled_user][s],
                                   g_mat[s], st.phases);
      const double norm = h_eq.norm();
      if (norm > 0.0) {
        st.precoder = h_eq.adjoint() / norm;
      } else {
        st.precoder = CVector::Constant(h_eq.cols(),
                                        Complex(1.0 / std::sqrt(double(h_eq.cols())), 0.0));
      }
    } else {
      // idle full-buffer sector: broadcast along the boresight, inert RIS
      const Sector& sec = layout.sectors[s];
      const AntennaPanel panel = cfg.bs_panel(sec.boresight_azimuth_deg);
      const CVector steer = steering_vector(panel, DirectionLocal{kPi / 2.0, 0.0});
      st.precoder = steer.conjugate() / steer.norm();
      if (cfg.strategy == Strategy::Random) {
        st.phases = sector_random;
      } else if (cfg.strategy != Strategy::NoRis) {
        PhaseConfig zero;
        zero.constraint = PhaseConstraint::Ideal;
        zero.phases = RVector::Zero(cfg.ris_panel(0.0).element_count());
        st.phases = zero;
      }
    }
  }

  // Factorized interferer beams: h_eq(u,s) w_s = H w_s + F (Theta G w_s).
  std::vector<CVector> cascade_w(n_sectors);
  for (int s = 0; s < n_sectors; ++s) {
    if (state[s].phases.has_value()) {
      cascade_w[s] = state[s].phases->unit_phasors().asDiagonal() * (g_mat[s] * state[s].precoder);
    }
  }

  // 4. per-user metrics; the serving sector is re-pointed at the evaluated
  // user, interferers keep their own scheduled configuration.
  DropResult result;
  result.metrics.users.resize(n_users);
  for (int u = 0; u < n_users; ++u) {
    const int sv = users.serving_sector[u];
    std::optional<PhaseConfig> serving_phases;
    int best_beam = -1;
    if (cfg.strategy == Strategy::Random) {
      serving_phases = state[sv].phases;
    } else if (cfg.strategy == Strategy::Codebook) {
      const auto [beam, power] =
          select_best_beam(h_mat[u][sv], f_mat[u][sv], g_mat[sv], codebook, p_tx);
      (void)power;
      best_beam = beam;
      if (beam >= 0) serving_phases = codebook.beams[beam].phases;
    } else {
      serving_phases = strategy_phases(cfg, cfg.strategy, h_mat[u][sv], f_mat[u][sv], g_mat[sv],
                                       nullptr, nullptr);
    }

    const CMatrix h_serv = compose(h_mat[u][sv], f_mat[u][sv], g_mat[sv], serving_phases);
    const double p_serv = received_power(h_serv, p_tx);

    std::vector<double> interference;
    interference.reserve(n_sectors - 1);
    for (int s = 0; s < n_sectors; ++s) {
      if (s == sv) continue;
      Complex rx = (h_mat[u][s] * state[s].precoder)(0);
      if (state[s].phases.has_value()) rx += (f_mat[u][s] * cascade_w[s])(0);
      interference.push_back(p_tx * std::norm(rx));
    }

    UserMetrics& m = result.metrics.users[u];
    const double sinr_linear = sinr(p_serv, interference, noise);
    m.serving_sector = sv;
    m.best_beam = best_beam;
    m.coupling_loss_db = coupling_loss_db(cfg.tx_power_dbm, watt_to_dbm(p_serv));
    m.snr_db = pow_to_db(p_serv / noise);
    m.sinr_db = pow_to_db(sinr_linear);
    m.spectral_eff = std::log2(1.0 + sinr_linear);
  }
  return result;
}

CampaignResult run_campaign(const SimConfig& cfg) {
  if (cfg.drops < 1) throw std::invalid_argument("run_campaign: drops must be >= 1");
  const NetworkLayout layout = make_layout(cfg);

  CampaignResult result;
  result.drops.resize(cfg.drops);

  const int n_threads = std::max(1, std::min(cfg.threads, cfg.drops));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next.fetch_add(1); i < cfg.drops; i = next.fetch_add(1)) {
      result.drops[i] = run_drop(cfg, layout, i);
    }
  };
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (const DropResult& drop : result.drops) {
    for (const UserMetrics& m : drop.metrics.users) {
      result.coupling_loss_db.push_back(m.coupling_loss_db);
      result.snr_db.push_back(m.snr_db);
      result.sinr_db.push_back(m.sinr_db);
      result.spectral_eff.push_back(m.spectral_eff);
    }
  }
  result.coupling_loss_cdf = empirical_cdf(result.coupling_loss_db);
  result.sinr_cdf = empirical_cdf(result.sinr_db);
  result.se_cdf = empirical_cdf(result.spectral_eff);
  return result;
}

}  // namespace risim
