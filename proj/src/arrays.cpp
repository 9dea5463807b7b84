// SPDX-License-Identifier: Apache-2.0
//
// risim - system-level simulator for RIS-assisted multi-cell cellular networks

#include "risim/arrays.hpp"

#include <cmath>

namespace risim {

Vec3 spherical_unit_vector(const DirectionLocal& dir) {
  const double st = std::sin(dir.zenith);
  return Vec3(st * std::cos(dir.azimuth), st * std::sin(dir.azimuth), std::cos(dir.zenith));
}

std::vector<Vec3> element_positions(const AntennaPanel& panel) {
  std::vector<Vec3> pos;
  pos.reserve(panel.element_count());
  for (int m = 0; m < panel.n_horizontal; ++m) {
    for (int n = 0; n < panel.n_vertical; ++n) {
      pos.emplace_back(0.0, m * panel.dy, n * panel.dz);
    }
  }
  return pos;
}

CVector steering_vector(const AntennaPanel& panel, const DirectionLocal& dir) {
  const Vec3 r = spherical_unit_vector(dir);
  CVector v(panel.element_count());
  int idx = 0;
  for (int m = 0; m < panel.n_horizontal; ++m) {
    const double py = kTwoPi * m * panel.dy * r.y();
    for (int n = 0; n < panel.n_vertical; ++n) {
      const double pz = kTwoPi * n * panel.dz * r.z();
      v(idx++) = std::polar(1.0, py + pz);
    }
  }
  return v;
}

double element_amplitude(ElementPattern pattern, const DirectionLocal& dir) {
  switch (pattern) {
    case ElementPattern::Omni:
      return 1.0;
    case ElementPattern::Sectoral3gpp:
      return db_to_amp(element_gain_db(pattern, dir));
    case ElementPattern::PassiveReflector: {
      // cos of the angle between the direction and the local boresight (+x)
      const double c = std::sin(dir.zenith) * std::cos(dir.azimuth);
      return c > 0.0 ? c : 0.0;
    }
  }
  return 0.0;
}

double element_gain_db(ElementPattern pattern, const DirectionLocal& dir) {
  switch (pattern) {
    case ElementPattern::Omni:
      return 0.0;
    case ElementPattern::Sectoral3gpp: {
      const double th = rad2deg(dir.zenith);
      const double ph = rad2deg(wrap_angle(dir.azimuth));
      const double av = -std::min(12.0 * std::pow((th - 90.0) / 65.0, 2), 30.0);
      const double ah = -std::min(12.0 * std::pow(ph / 65.0, 2), 30.0);
      const double a = -std::min(-(av + ah), 30.0);
      return 8.0 + a;  // 8 dBi boresight gain
    }
    case ElementPattern::PassiveReflector: {
      const double amp = element_amplitude(pattern, dir);
      if (amp <= 0.0) return -std::numeric_limits<double>::infinity();
      return 20.0 * std::log10(amp);
    }
  }
  return 0.0;
}

CVector reflect_response(const AntennaPanel& panel, const DirectionLocal& dir) {
  const double st = std::sin(dir.zenith);
  const double sy = st * std::sin(dir.azimuth);  // y-projection, drives the m axis
  const double cx = st * std::cos(dir.azimuth);  // x-projection, drives the n axis
  CVector v(panel.element_count());
  int idx = 0;
  for (int m = 0; m < panel.n_horizontal; ++m) {
    const double py = kTwoPi * m * panel.dy * sy;
    for (int n = 0; n < panel.n_vertical; ++n) {
      const double pz = kTwoPi * n * panel.dz * cx;
      v(idx++) = std::polar(1.0, py + pz);
    }
  }
  return v;
}

Complex array_factor(const AntennaPanel& panel, double beta_y, double beta_z,
                     const DirectionLocal& aoa, const DirectionLocal& out_dir) {
  const double s_in = std::sin(aoa.azimuth) * std::sin(aoa.zenith);
  const double s_out = std::sin(out_dir.azimuth) * std::sin(out_dir.zenith);
  const double c_in = std::cos(aoa.azimuth) * std::sin(aoa.zenith);
  const double c_out = std::cos(out_dir.azimuth) * std::sin(out_dir.zenith);
  const double py = kTwoPi * panel.dy * (s_in - s_out) + beta_y;
  const double pz = kTwoPi * panel.dz * (c_in - c_out) + beta_z;

  Complex sum_y = 0.0;
  for (int m = 0; m < panel.n_horizontal; ++m) sum_y += std::polar(1.0, m * py);
  Complex sum_z = 0.0;
  for (int n = 0; n < panel.n_vertical; ++n) sum_z += std::polar(1.0, n * pz);
  return sum_y * sum_z;
}

DirectionLocal to_local_direction(const Vec3& global_unit, double boresight_azimuth_deg,
                                  double downtilt_deg) {
  const double b = deg2rad(boresight_azimuth_deg);
  const double t = deg2rad(downtilt_deg);
  // Local axes in global coordinates: x along the (tilted) boresight, y to
  // the left of it in the horizontal plane, z completing the right-handed set.
  const Vec3 xl(std::cos(t) * std::cos(b), std::cos(t) * std::sin(b), -std::sin(t));
  const Vec3 yl(-std::sin(b), std::cos(b), 0.0);
  const Vec3 zl(std::sin(t) * std::cos(b), std::sin(t) * std::sin(b), std::cos(t));
  const double ux = global_unit.dot(xl);
  const double uy = global_unit.dot(yl);
  const double uz = global_unit.dot(zl);
  DirectionLocal d;
  d.zenith = std::acos(std::clamp(uz, -1.0, 1.0));
  d.azimuth = std::atan2(uy, ux);
  return d;
}

}  // namespace risim
