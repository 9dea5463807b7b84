// SPDX-License-Identifier: Apache-2.0
//
// risim - system-level simulator for RIS-assisted multi-cell cellular networks

#pragma once

#include "risim/arrays.hpp"
#include "risim/common.hpp"
#include "risim/rng.hpp"

#include <vector>

namespace risim {

enum class PhaseConstraint { Ideal, Discrete, Random };

/// Per-element RIS phases with their constraint-set tag. Discrete(D) phases
/// live on the grid {0, 2*pi/D, ..., 2*pi*(D-1)/D}.
struct PhaseConfig {
  RVector phases;  // radians, length N
  PhaseConstraint constraint = PhaseConstraint::Ideal;
  int levels = 0;  // D, meaningful for Discrete

  CVector unit_phasors() const {
    CVector v(phases.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) v(i) = std::polar(1.0, phases(i));
    return v;
  }
};

struct Beam {
  double target_azimuth = 0.0;  // radians, RIS local frame
  double target_zenith = kPi / 2.0;
  PhaseConfig phases;
};

struct BeamCodebook {
  std::vector<Beam> beams;
  int size() const { return static_cast<int>(beams.size()); }
};

/// Geometric steering: beta_y = k*dy*(sin az_o sin zen_o - sin az_a sin zen_a),
/// beta_z = k*dz*(cos az_o sin zen_o - cos az_a sin zen_a); element (m, n)
/// carries (m-1)*beta_y + (n-1)*beta_z reduced mod 2*pi.
PhaseConfig optimal_steering_phases(const AntennaPanel& panel, const DirectionLocal& aoa,
                                    const DirectionLocal& target);

/// B beam targets uniformly spread over the azimuth span (centred bins) at a
/// fixed zenith, each steered from the panel's fixed arrival direction.
BeamCodebook make_codebook(const AntennaPanel& panel, const DirectionLocal& aoa, int num_beams,
                           double azimuth_span_deg, double zenith_rad);

/// Phase alignment for a scalar-reduced cascade: theta_n = arg(H) - arg(r_n),
/// achieving |h_eq| = |H| + sum |r_n|. arg(0) is taken as 0.
PhaseConfig ideal_phases(Complex h_direct, const CVector& cascade);

/// Nearest-level quantization onto the D-level grid; exact ties round toward
/// the lower level index.
PhaseConfig quantize_phases(const PhaseConfig& ideal, int levels);

/// i.i.d. uniform phases on [0, 2*pi).
PhaseConfig random_phases(int n, RngStream& stream);

}  // namespace risim
