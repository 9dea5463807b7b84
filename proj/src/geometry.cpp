// SPDX-License-Identifier: Apache-2.0
//
// risim - system-level simulator for RIS-assisted multi-cell cellular networks

#include "risim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace risim {

namespace {

Vec2 unit_dir(double azimuth_deg) {
  const double a = deg2rad(azimuth_deg);
  return Vec2(std::cos(a), std::sin(a));
}

// Lattice basis: a1 at 30 degrees, a2 at 90 degrees, both of length isd.
Vec2 lattice_a1(double isd) { return isd * unit_dir(30.0); }
Vec2 lattice_a2(double isd) { return isd * unit_dir(90.0); }

int hex_ring(int i, int j) {
  return (std::abs(i) + std::abs(j) + std::abs(i + j)) / 2;
}

}  // namespace

NetworkLayout build_hex_layout(double isd, int num_rings, double bs_height,
                               double downtilt_deg) {
  if (!(isd > 0.0)) throw std::invalid_argument("build_hex_layout: isd must be positive");
  if (num_rings < 0) throw std::invalid_argument("build_hex_layout: num_rings must be >= 0");

  NetworkLayout layout;
  layout.isd = isd;
  layout.num_rings = num_rings;

  const Vec2 a1 = lattice_a1(isd);
  const Vec2 a2 = lattice_a2(isd);

  // Enumerate lattice points ring by ring, sorted by azimuth within a ring.
  for (int ring = 0; ring <= num_rings; ++ring) {
    std::vector<Vec2> ring_sites;
    for (int i = -num_rings; i <= num_rings; ++i) {
      for (int j = -num_rings; j <= num_rings; ++j) {
        if (hex_ring(i, j) != ring) continue;
        ring_sites.push_back(i * a1 + j * a2);
      }
    }
    std::sort(ring_sites.begin(), ring_sites.end(), [](const Vec2& u, const Vec2& v) {
      const double au = wrap_angle_positive(std::atan2(u.y(), u.x()));
      const double av = wrap_angle_positive(std::atan2(v.y(), v.x()));
      return au < av;
    });
    for (const Vec2& s : ring_sites) {
      layout.site_positions.emplace_back(s.x(), s.y(), bs_height);
    }
  }

  const double boresights[3] = {30.0, 150.0, 270.0};
  for (int site = 0; site < layout.sites(); ++site) {
    for (int k = 0; k < 3; ++k) {
      Sector sec;
      sec.site_id = site;
      sec.sector_id = k;
      sec.bs_position = layout.site_positions[site];
      sec.boresight_azimuth_deg = boresights[k];
      sec.downtilt_deg = downtilt_deg;
      layout.sectors.push_back(sec);
    }
  }

  // Cluster translation group: for a ring-k cluster (1 + 3k(k+1) sites) the
  // super-lattice basis is v1 = (k+1)a1 + k*a2 and its 60-degree rotation
  // v2 = -k*a1 + (2k+1)*a2.
  const double k = static_cast<double>(num_rings);
  const Vec2 v1 = (k + 1.0) * a1 + k * a2;
  const Vec2 v2 = -k * a1 + (2.0 * k + 1.0) * a2;
  layout.wrap_offsets.push_back(Vec2::Zero());
  for (const Vec2& v : {v1, v2, Vec2(v2 - v1)}) {
    layout.wrap_offsets.push_back(v);
    layout.wrap_offsets.push_back(-v);
  }
  return layout;
}

NetworkLayout place_ris(NetworkLayout layout, double ris_height) {
  layout.ris.clear();
  for (const Sector& sec : layout.sectors) {
    RisPlacement r;
    r.site_id = sec.site_id;
    r.sector_id = sec.sector_id;
    const Vec2 offset = (layout.isd / 2.0) * unit_dir(sec.boresight_azimuth_deg);
    r.position = Vec3(sec.bs_position.x() + offset.x(), sec.bs_position.y() + offset.y(),
                      ris_height);
    r.boresight_azimuth_deg = std::fmod(sec.boresight_azimuth_deg + 180.0, 360.0);
    layout.ris.push_back(r);
  }
  return layout;
}

WrapResult wrap_distance(const NetworkLayout& layout, const Vec3& a, const Vec3& b) {
  WrapResult best;
  best.d2d = std::numeric_limits<double>::infinity();
  for (const Vec2& off : layout.wrap_offsets) {
    const double dx = b.x() + off.x() - a.x();
    const double dy = b.y() + off.y() - a.y();
    const double d2d = std::hypot(dx, dy);
    if (d2d < best.d2d) {
      best.d2d = d2d;
      best.offset = off;
    }
  }
  const double dz = b.z() - a.z();
  best.d3d = std::hypot(best.d2d, dz);
  return best;
}

std::array<Vec2, 5> sector_polygon(const NetworkLayout& layout, const Sector& sector) {
  const double b = sector.boresight_azimuth_deg;
  const double apothem = layout.isd / 2.0;
  const double circum = layout.cell_circumradius();
  const Vec2 o(sector.bs_position.x(), sector.bs_position.y());
  return {o,
          o + apothem * unit_dir(b - 60.0),
          o + circum * unit_dir(b - 30.0),
          o + circum * unit_dir(b + 30.0),
          o + apothem * unit_dir(b + 60.0)};
}

bool point_in_sector(const NetworkLayout& layout, const Sector& sector, const Vec2& p) {
  const auto poly = sector_polygon(layout, sector);
  const double eps = 1e-9 * layout.isd;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& u = poly[i];
    const Vec2& v = poly[(i + 1) % poly.size()];
    const double cross = (v.x() - u.x()) * (p.y() - u.y()) - (v.y() - u.y()) * (p.x() - u.x());
    if (cross < -eps) return false;  // polygon is counter-clockwise
  }
  return true;
}

UserDrop drop_users(const NetworkLayout& layout, int per_sector, double min_bs_dist,
                    RngStream& stream, double user_height) {
  if (per_sector < 1) throw std::invalid_argument("drop_users: per_sector must be >= 1");
  if (min_bs_dist >= layout.cell_circumradius()) {
    throw std::invalid_argument("drop_users: min_bs_dist infeasible for this footprint");
  }

  UserDrop drop;
  drop.per_sector = per_sector;
  for (std::size_t s = 0; s < layout.sectors.size(); ++s) {
    const Sector& sec = layout.sectors[s];
    const auto poly = sector_polygon(layout, sec);
    // Fan triangulation with area-proportional triangle choice.
    double areas[3];
    double total = 0.0;
    for (int t = 0; t < 3; ++t) {
      const Vec2 e1 = poly[t + 1] - poly[0];
      const Vec2 e2 = poly[t + 2] - poly[0];
      areas[t] = 0.5 * std::abs(e1.x() * e2.y() - e1.y() * e2.x());
      total += areas[t];
    }
    const Vec2 bs(sec.bs_position.x(), sec.bs_position.y());
    for (int u = 0; u < per_sector; ++u) {
      Vec2 p;
      int guard = 0;
      do {
        if (++guard > 100000) {
          throw std::invalid_argument("drop_users: min_bs_dist leaves no room in sector");
        }
        double pick = stream.uniform() * total;
        int t = 0;
        while (t < 2 && pick > areas[t]) {
          pick -= areas[t];
          ++t;
        }
        const double r1 = std::sqrt(stream.uniform());
        const double r2 = stream.uniform();
        p = (1.0 - r1) * poly[0] + r1 * (1.0 - r2) * poly[t + 1] + r1 * r2 * poly[t + 2];
      } while ((p - bs).norm() < min_bs_dist);
      drop.positions.emplace_back(p.x(), p.y(), user_height);
      drop.drop_sector.push_back(static_cast<int>(s));
    }
  }
  drop.serving_sector.assign(drop.positions.size(), -1);
  return drop;
}

std::vector<std::pair<double, double>> placement_coverage_scan(
    const NetworkLayout& layout, const std::vector<double>& arc_offsets_deg) {
  if (layout.sectors.empty()) throw std::invalid_argument("placement_coverage_scan: no sectors");
  const Sector& sec = layout.sectors.front();
  const double b = sec.boresight_azimuth_deg;
  const Vec2 o(sec.bs_position.x(), sec.bs_position.y());
  const double arc_radius = layout.isd / 2.0;
  const double apothem = layout.isd / 2.0;
  const auto poly = sector_polygon(layout, sec);

  // Boundary points of the footprint at 1-degree azimuth resolution. The
  // radius at azimuth psi follows from the nearest cell-edge normal, which
  // sits at b, b-60 or b+60.
  std::vector<Vec2> boundary(poly.begin(), poly.end());
  for (int d = -60; d <= 60; ++d) {
    const double psi = b + static_cast<double>(d);
    double off = std::abs(static_cast<double>(d));
    double normal_delta = (off <= 30.0) ? 0.0 : 60.0;
    if (d < 0) normal_delta = -normal_delta;
    const double r = apothem / std::cos(deg2rad(psi - (b + normal_delta)));
    boundary.push_back(o + r * unit_dir(psi));
  }

  std::vector<std::pair<double, double>> result;
  for (double delta : arc_offsets_deg) {
    if (std::abs(delta) > 60.0) {
      throw std::invalid_argument("placement_coverage_scan: offsets limited to +-60 degrees");
    }
    const Vec2 candidate = o + arc_radius * unit_dir(b + delta);
    double worst = 0.0;
    for (const Vec2& p : boundary) worst = std::max(worst, (p - candidate).norm());
    result.emplace_back(delta, worst);
  }
  return result;
}

}  // namespace risim
