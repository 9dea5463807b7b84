// SPDX-License-Identifier: Apache-2.0
//
// risim - system-level simulator for RIS-assisted multi-cell cellular networks

#include "risim/channel.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace risim {

namespace {

std::atomic<std::uint64_t> g_clamp_count{0};

// e^{j k phi} for k = 0..count-1, built incrementally.
void fill_phase_ramp(double phi, int count, CVector& out) {
  out.resize(count);
  const Complex step = std::polar(1.0, phi);
  Complex v(1.0, 0.0);
  for (int k = 0; k < count; ++k) {
    out(k) = v;
    v *= step;
  }
}

// Split-real complex kernels; the interleaved double loops auto-vectorize
// where std::complex arithmetic does not.
inline void caxpy_n(Complex c, const Complex* src, Complex* dst, int n) {
  const double cr = c.real(), ci = c.imag();
  const double* s = reinterpret_cast<const double*>(src);
  double* d = reinterpret_cast<double*>(dst);
  for (int i = 0; i < n; ++i) {
    const double sr = s[2 * i], si = s[2 * i + 1];
    d[2 * i] += cr * sr - ci * si;
    d[2 * i + 1] += cr * si + ci * sr;
  }
}

inline void cmul_fill_n(Complex c, const Complex* src, Complex* dst, int n) {
  const double cr = c.real(), ci = c.imag();
  const double* s = reinterpret_cast<const double*>(src);
  double* d = reinterpret_cast<double*>(dst);
  for (int i = 0; i < n; ++i) {
    const double sr = s[2 * i], si = s[2 * i + 1];
    d[2 * i] = cr * sr - ci * si;
    d[2 * i + 1] = cr * si + ci * sr;
  }
}

// Rows are the panel's local axes, so local = rot * global.
Eigen::Matrix3d panel_rotation(const AntennaPanel& panel) {
  const double b = deg2rad(panel.boresight_azimuth_deg);
  const double t = deg2rad(panel.downtilt_deg);
  Eigen::Matrix3d rot;
  rot.row(0) = Vec3(std::cos(t) * std::cos(b), std::cos(t) * std::sin(b), -std::sin(t));
  rot.row(1) = Vec3(-std::sin(b), std::cos(b), 0.0);
  rot.row(2) = Vec3(std::sin(t) * std::cos(b), std::sin(t) * std::sin(b), std::cos(t));
  return rot;
}

// Element amplitude from the local unit direction vector; avoids angle
// recovery except for the sectoral pattern.
double amplitude_from_unit(ElementPattern pattern, const Vec3& u) {
  switch (pattern) {
    case ElementPattern::Omni:
      return 1.0;
    case ElementPattern::PassiveReflector:
      return u.x() > 0.0 ? u.x() : 0.0;
    case ElementPattern::Sectoral3gpp: {
      DirectionLocal dir;
      dir.zenith = std::acos(std::clamp(u.z(), -1.0, 1.0));
      dir.azimuth = std::atan2(u.y(), u.x());
      return db_to_amp(element_gain_db(pattern, dir));
    }
  }
  return 0.0;
}

// Spatial response from local unit-vector projections. Reflection mode maps
// the n axis onto the local x projection (see reflect_response); sign = -1
// yields the conjugate response used on the departure side of a reflector.
void fill_response_from_unit(const AntennaPanel& panel, const Vec3& u, bool reflect_mode,
                             double sign, CVector& ramp_m, CVector& ramp_n, CVector& out) {
  const double py = sign * kTwoPi * panel.dy * u.y();
  const double pz = sign * kTwoPi * panel.dz * (reflect_mode ? u.x() : u.z());
  fill_phase_ramp(py, panel.n_horizontal, ramp_m);
  fill_phase_ramp(pz, panel.n_vertical, ramp_n);
  out.resize(panel.element_count());
  for (int m = 0; m < panel.n_horizontal; ++m) {
    cmul_fill_n(ramp_m(m), ramp_n.data(), out.data() + m * panel.n_vertical,
                panel.n_vertical);
  }
}

Vec3 unit_from_angles(double zenith, double azimuth) {
  const double st = std::sin(zenith);
  return Vec3(st * std::cos(azimuth), st * std::sin(azimuth), std::cos(zenith));
}

double clamp_zenith(double z) {
  const double lo = 1e-9;
  return std::min(std::max(z, lo), kPi - lo);
}

}  // namespace

double los_probability(double d2d) {
  if (d2d < 0.0) throw std::invalid_argument("los_probability: negative distance");
  if (d2d <= 18.0) return 1.0;
  return 18.0 / d2d + std::exp(-d2d / 63.0) * (1.0 - 18.0 / d2d);
}

std::uint64_t pathloss_clamp_count() { return g_clamp_count.load(); }
void reset_pathloss_clamp_count() { g_clamp_count.store(0); }

double pathloss_uma_db(double d2d, double d3d, double fc_ghz, double h_bs, double h_ut,
                       bool los) {
  if (!(fc_ghz > 0.0)) throw std::invalid_argument("pathloss_uma_db: fc must be positive");
  if (d2d < 10.0 || d3d < 10.0) {
    g_clamp_count.fetch_add(1, std::memory_order_relaxed);
    d2d = std::max(d2d, 10.0);
    d3d = std::max(d3d, 10.0);
  }
  const double h_env = 1.0;  // effective environment height
  const double hb = std::max(h_bs - h_env, 0.05);
  const double hu = std::max(h_ut - h_env, 0.05);
  const double d_bp = 4.0 * hb * hu * (fc_ghz * 1e9) / kSpeedOfLight;

  double pl_los;
  if (d2d <= d_bp) {
    pl_los = 28.0 + 22.0 * std::log10(d3d) + 20.0 * std::log10(fc_ghz);
  } else {
    pl_los = 28.0 + 40.0 * std::log10(d3d) + 20.0 * std::log10(fc_ghz) -
             9.0 * std::log10(d_bp * d_bp + (h_bs - h_ut) * (h_bs - h_ut));
  }
  if (los) return pl_los;
  const double pl_nlos =
      13.54 + 39.08 * std::log10(d3d) + 20.0 * std::log10(fc_ghz) - 0.6 * (h_ut - 1.5);
  return std::max(pl_los, pl_nlos);
}

LargeScale draw_large_scale(const LinkGeometry& geom, const EnvProfile& env, LosMode mode,
                            RngStream& stream) {
  LargeScale ls;
  switch (mode) {
    case LosMode::Auto:
      ls.is_los = stream.uniform() < los_probability(geom.d2d());
      break;
    case LosMode::ForcedLos:
      ls.is_los = true;
      break;
    case LosMode::ForcedNlos:
      ls.is_los = false;
      break;
  }
  const double sigma = ls.is_los ? env.shadow_sigma_los_db : env.shadow_sigma_nlos_db;
  ls.shadow_db = sigma * stream.normal();
  const double h_bs = std::max(geom.tx_pos.z(), geom.rx_pos.z());
  const double h_ut = std::min(geom.tx_pos.z(), geom.rx_pos.z());
  ls.pathloss_db = pathloss_uma_db(geom.d2d(), geom.d3d(), env.fc_ghz, h_bs, h_ut, ls.is_los);
  return ls;
}

ClusterSet synth_clusters(const EnvProfile& env, bool los, RngStream& stream) {
  const int scattered = los ? env.clusters_los : env.clusters_nlos;
  if (scattered < 0 || (!los && scattered < 1)) {
    throw std::invalid_argument("synth_clusters: cluster count must be >= 1");
  }
  if (env.rays_per_cluster < 1) {
    throw std::invalid_argument("synth_clusters: rays_per_cluster must be >= 1");
  }

  ClusterSet set;
  double scattered_total = 1.0;
  if (los) {
    const double k = db_to_pow(env.k_factor_db);
    Cluster specular;
    specular.specular = true;
    specular.power = (scattered > 0) ? k / (k + 1.0) : 1.0;
    scattered_total = (scattered > 0) ? 1.0 / (k + 1.0) : 0.0;
    Ray ray;
    ray.phase = stream.angle();
    specular.rays.push_back(ray);
    set.clusters.push_back(std::move(specular));
  }

  double decay_sum = 0.0;
  for (int i = 0; i < scattered; ++i) decay_sum += std::exp(-i / env.cluster_decay);
  for (int i = 0; i < scattered; ++i) {
    Cluster cl;
    cl.power = scattered_total * std::exp(-i / env.cluster_decay) / decay_sum;
    const double aod_az = wrap_angle(deg2rad(env.asd_deg) * stream.normal());
    const double aod_zen = deg2rad(env.zsd_deg) * stream.normal();
    const double aoa_az = wrap_angle(deg2rad(env.asa_deg) * stream.normal());
    const double aoa_zen = deg2rad(env.zsa_deg) * stream.normal();
    cl.rays.reserve(env.rays_per_cluster);
    for (int r = 0; r < env.rays_per_cluster; ++r) {
      Ray ray;
      ray.aod_az_off = aod_az + stream.laplace(deg2rad(env.intra_cluster_az_deg));
      ray.aod_zen_off = aod_zen + stream.laplace(deg2rad(env.intra_cluster_zen_deg));
      ray.aoa_az_off = aoa_az + stream.laplace(deg2rad(env.intra_cluster_az_deg));
      ray.aoa_zen_off = aoa_zen + stream.laplace(deg2rad(env.intra_cluster_zen_deg));
      ray.phase = stream.angle();
      cl.rays.push_back(ray);
    }
    set.clusters.push_back(std::move(cl));
  }

  // Exact unit normalization
  const double total = set.total_power();
  for (auto& c : set.clusters) c.power /= total;
  return set;
}

LinkChannel synth_link(const AntennaPanel& tx_panel, const AntennaPanel& rx_panel,
                       const LinkGeometry& geom, LinkRole role, const ClusterSet& clusters,
                       const LargeScale& large, const DopplerSpec& doppler,
                       const EnvProfile& env) {
  if (tx_panel.element_count() < 1 || rx_panel.element_count() < 1) {
    throw std::invalid_argument("synth_link: panels must have at least one element");
  }
  if (clusters.clusters.empty()) {
    throw std::invalid_argument("synth_link: empty cluster set");
  }

  const int n_rx = rx_panel.element_count();
  const int n_tx = tx_panel.element_count();
  CMatrix h = CMatrix::Zero(n_rx, n_tx);

  const Vec3 los = geom.rx_pos - geom.tx_pos;
  const double dist = los.norm();
  if (!(dist > 0.0)) throw std::invalid_argument("synth_link: coincident endpoints");
  const Vec3 u_dep = los / dist;  // at TX, toward RX
  const Vec3 u_arr = -u_dep;      // at RX, toward TX

  const double dep_az0 = std::atan2(u_dep.y(), u_dep.x());
  const double dep_zen0 = std::acos(std::clamp(u_dep.z(), -1.0, 1.0));
  const double arr_az0 = std::atan2(u_arr.y(), u_arr.x());
  const double arr_zen0 = std::acos(std::clamp(u_arr.z(), -1.0, 1.0));

  const bool rx_reflect = (role == LinkRole::BsToRis);
  const bool tx_reflect = (role == LinkRole::RisToUser);
  const bool has_doppler = (role != LinkRole::BsToRis) && doppler.speed_mps != 0.0 &&
                           doppler.time_s != 0.0;
  const double lambda = env.wavelength_m();

  const Eigen::Matrix3d rot_tx = panel_rotation(tx_panel);
  const Eigen::Matrix3d rot_rx = panel_rotation(rx_panel);

  CVector tx_ramp_m, tx_ramp_n, rx_ramp_m, rx_ramp_n, tx_vec, rx_vec;
  for (const Cluster& cl : clusters.clusters) {
    if (cl.rays.empty()) continue;
    const double ray_power = cl.power / static_cast<double>(cl.rays.size());
    const double ray_amp = std::sqrt(ray_power);
    for (const Ray& ray : cl.rays) {
      const double dep_zen = clamp_zenith(dep_zen0 + ray.aod_zen_off);
      const double dep_az = dep_az0 + ray.aod_az_off;
      const double arr_zen = clamp_zenith(arr_zen0 + ray.aoa_zen_off);
      const double arr_az = arr_az0 + ray.aoa_az_off;

      const Vec3 dep_global = unit_from_angles(dep_zen, dep_az);
      const Vec3 arr_global = unit_from_angles(arr_zen, arr_az);
      const Vec3 dep_local = rot_tx * dep_global;
      const Vec3 arr_local = rot_rx * arr_global;

      const double g_tx = amplitude_from_unit(tx_panel.pattern, dep_local);
      const double g_rx = amplitude_from_unit(rx_panel.pattern, arr_local);
      if (g_tx == 0.0 || g_rx == 0.0) continue;

      double phase = ray.phase;
      if (has_doppler) {
        phase += kTwoPi * arr_global.dot(doppler.direction) * doppler.speed_mps *
                 doppler.time_s / lambda;
      }
      const Complex coeff = std::polar(ray_amp * g_tx * g_rx, phase);

      fill_response_from_unit(tx_panel, dep_local, tx_reflect, tx_reflect ? -1.0 : 1.0,
                              tx_ramp_m, tx_ramp_n, tx_vec);
      fill_response_from_unit(rx_panel, arr_local, rx_reflect, 1.0, rx_ramp_m, rx_ramp_n,
                              rx_vec);
      if (n_rx == 1) {
        caxpy_n(coeff * rx_vec(0), tx_vec.data(), h.data(), n_tx);
      } else {
        for (int col = 0; col < n_tx; ++col) {
          caxpy_n(coeff * tx_vec(col), rx_vec.data(), h.col(col).data(), n_rx);
        }
      }
    }
  }

  h *= db_to_amp(-(large.pathloss_db + large.shadow_db));

  LinkChannel link;
  link.matrix = std::move(h);
  link.large_scale = large;
  link.role = role;
  return link;
}

CMatrix effective_channel(const CMatrix& h_direct, const CMatrix& f, const CMatrix& g,
                          const PhaseConfig& theta) {
  if (h_direct.rows() != f.rows() || h_direct.cols() != g.cols() || f.cols() != g.rows() ||
      theta.phases.size() != f.cols()) {
    throw std::invalid_argument("effective_channel: dimension mismatch");
  }
  const CVector phasors = theta.unit_phasors();
  return h_direct + f * phasors.asDiagonal() * g;
}

}  // namespace risim
