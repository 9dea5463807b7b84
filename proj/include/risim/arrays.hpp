// SPDX-License-Identifier: Apache-2.0
//
// risim - system-level simulator for RIS-assisted multi-cell cellular networks

#pragma once

#include "risim/common.hpp"

#include <vector>

namespace risim {

enum class ElementPattern { Sectoral3gpp, Omni, PassiveReflector };

/// Planar antenna panel. Element (m, n), m = 1..n_horizontal, n = 1..n_vertical,
/// sits at (0, (m-1)*dy, (n-1)*dz) in the local frame (wavelength units); the
/// panel faces its boresight along local +x.
struct AntennaPanel {
  int n_horizontal = 1;  // N_x
  int n_vertical = 1;    // N_y
  double dy = 0.5;       // wavelengths
  double dz = 0.5;
  double boresight_azimuth_deg = 0.0;
  double downtilt_deg = 0.0;
  ElementPattern pattern = ElementPattern::Omni;

  int element_count() const { return n_horizontal * n_vertical; }
};

/// Direction in a panel's local frame: zenith from local +z, azimuth from
/// local +x counter-clockwise.
struct DirectionLocal {
  double zenith = kPi / 2.0;  // radians, [0, pi]
  double azimuth = 0.0;       // radians, (-pi, pi]
};

/// (sin t cos p, sin t sin p, cos t); unit norm.
Vec3 spherical_unit_vector(const DirectionLocal& dir);

/// Element positions in wavelength units, local frame, row-major in m then n.
std::vector<Vec3> element_positions(const AntennaPanel& panel);

/// Per-element exp(j*2*pi*(r(dir) . d)); unit-modulus entries.
CVector steering_vector(const AntennaPanel& panel, const DirectionLocal& dir);

/// Element amplitude gain (linear). PassiveReflector follows the cosine
/// reflection model with zero response in the back half-space.
double element_amplitude(ElementPattern pattern, const DirectionLocal& dir);

/// Element gain in dB; -inf where the amplitude is zero.
double element_gain_db(ElementPattern pattern, const DirectionLocal& dir);

/// Reflection-mode spatial response of a RIS panel: element (m, n) carries
/// exp(j*2*pi*((m-1)*dy*sin(az)sin(zen) + (n-1)*dz*cos(az)sin(zen))). Arrival
/// rays use this response directly and departures use its conjugate, which
/// makes the steering profile from optimal_steering_phases the exact
/// coherence solution for the cascaded path.
CVector reflect_response(const AntennaPanel& panel, const DirectionLocal& dir);

/// Reflected-array factor for phase gradients (beta_y, beta_z) applied on top
/// of an arriving ray from `aoa`, observed in `out_dir`. |AF| <= Nx*Ny with
/// equality when the per-element phases align.
Complex array_factor(const AntennaPanel& panel, double beta_y, double beta_z,
                     const DirectionLocal& aoa, const DirectionLocal& out_dir);

/// Expresses a global direction vector in a panel's local frame.
DirectionLocal to_local_direction(const Vec3& global_unit, double boresight_azimuth_deg,
                                  double downtilt_deg);

}  // namespace risim
