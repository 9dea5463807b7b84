// SPDX-License-Identifier: Apache-2.0
//
// risim - system-level simulator for RIS-assisted multi-cell cellular networks

#pragma once

#include "risim/common.hpp"
#include "risim/rng.hpp"

#include <array>
#include <vector>

namespace risim {

struct Sector {
  int site_id = 0;
  int sector_id = 0;  // 0..2 within the site
  Vec3 bs_position = Vec3::Zero();
  double boresight_azimuth_deg = 30.0;  // one of {30, 150, 270}
  double downtilt_deg = 12.0;
};

struct RisPlacement {
  int site_id = 0;
  int sector_id = 0;
  Vec3 position = Vec3::Zero();
  double boresight_azimuth_deg = 210.0;  // faces the BS: sector boresight + 180
};

/// Hexagonal multi-site layout with tri-sector sites. Sites live on the
/// lattice spanned by a1 = isd*(cos30, sin30) and a2 = isd*(0, 1), so cell
/// edges (not corners) lie on the sector boresights {30, 150, 270} and the
/// sector-edge distance along a boresight is exactly isd/2.
struct NetworkLayout {
  double isd = 500.0;
  int num_rings = 1;
  std::vector<Vec3> site_positions;
  std::vector<Sector> sectors;
  std::vector<RisPlacement> ris;
  std::vector<Vec2> wrap_offsets;  // zero vector plus 6 cluster translations

  int sites() const { return static_cast<int>(site_positions.size()); }
  double cell_circumradius() const { return isd / std::sqrt(3.0); }
};

struct UserDrop {
  std::vector<Vec3> positions;
  std::vector<int> drop_sector;     // sector each user was dropped in
  std::vector<int> serving_sector;  // filled by the engine after attachment
  int per_sector = 0;
};

struct WrapResult {
  double d2d = 0.0;
  double d3d = 0.0;
  Vec2 offset = Vec2::Zero();  // translation applied to the second position
};

NetworkLayout build_hex_layout(double isd, int num_rings, double bs_height = 25.0,
                               double downtilt_deg = 12.0);

/// Places one RIS per sector at horizontal offset (isd/2) along the sector
/// boresight, facing back at the BS.
NetworkLayout place_ris(NetworkLayout layout, double ris_height = 10.0);

/// Geographical-distance wraparound: minimum over the layout's translation
/// images of b. Symmetric in (a, b) and never larger than the direct distance.
WrapResult wrap_distance(const NetworkLayout& layout, const Vec3& a, const Vec3& b);

/// Uniform per-sector user positions, rejection-sampled against the minimum
/// 2-D BS distance. Bitwise reproducible for a fixed stream.
UserDrop drop_users(const NetworkLayout& layout, int per_sector, double min_bs_dist,
                    RngStream& stream, double user_height = 1.5);

/// Vertices of a sector's footprint: one third of the site's hexagonal cell,
/// the 120-degree wedge centred on the sector boresight.
std::array<Vec2, 5> sector_polygon(const NetworkLayout& layout, const Sector& sector);

bool point_in_sector(const NetworkLayout& layout, const Sector& sector, const Vec2& p);

/// For each candidate RIS position on the arc of radius isd/2 at angular
/// offset delta from the sector boresight, the maximum 2-D distance from the
/// candidate to the sector footprint (boundary sampled at 1 degree).
std::vector<std::pair<double, double>> placement_coverage_scan(
    const NetworkLayout& layout, const std::vector<double>& arc_offsets_deg);

}  // namespace risim
