// SPDX-License-Identifier: Apache-2.0
//
// risim - system-level simulator for RIS-assisted multi-cell cellular networks

#include "risim/ris.hpp"

#include <cmath>
#include <stdexcept>

namespace risim {

namespace {

bool in_front_halfspace(const DirectionLocal& dir) {
  return std::sin(dir.zenith) * std::cos(dir.azimuth) > 0.0;
}

}  // namespace

PhaseConfig optimal_steering_phases(const AntennaPanel& panel, const DirectionLocal& aoa,
                                    const DirectionLocal& target) {
  if (!in_front_halfspace(target)) {
    throw std::domain_error("optimal_steering_phases: target in the back half-space");
  }
  if (!in_front_halfspace(aoa)) {
    throw std::domain_error("optimal_steering_phases: aoa in the back half-space");
  }
  const double beta_y = kTwoPi * panel.dy *
                        (std::sin(target.azimuth) * std::sin(target.zenith) -
                         std::sin(aoa.azimuth) * std::sin(aoa.zenith));
  const double beta_z = kTwoPi * panel.dz *
                        (std::cos(target.azimuth) * std::sin(target.zenith) -
                         std::cos(aoa.azimuth) * std::sin(aoa.zenith));
  PhaseConfig cfg;
  cfg.constraint = PhaseConstraint::Ideal;
  cfg.phases.resize(panel.element_count());
  int idx = 0;
  for (int m = 0; m < panel.n_horizontal; ++m) {
    for (int n = 0; n < panel.n_vertical; ++n) {
      cfg.phases(idx++) = wrap_angle_positive(m * beta_y + n * beta_z);
    }
  }
  return cfg;
}

BeamCodebook make_codebook(const AntennaPanel& panel, const DirectionLocal& aoa, int num_beams,
                           double azimuth_span_deg, double zenith_rad) {
  if (num_beams < 1) throw std::invalid_argument("make_codebook: need at least one beam");
  BeamCodebook book;
  const double span = deg2rad(azimuth_span_deg);
  for (int b = 0; b < num_beams; ++b) {
    Beam beam;
    beam.target_azimuth = -span / 2.0 + (b + 0.5) * span / num_beams;
    beam.target_zenith = zenith_rad;
    beam.phases = optimal_steering_phases(
        panel, aoa, DirectionLocal{beam.target_zenith, beam.target_azimuth});
    book.beams.push_back(std::move(beam));
  }
  return book;
}

PhaseConfig ideal_phases(Complex h_direct, const CVector& cascade) {
  PhaseConfig cfg;
  cfg.constraint = PhaseConstraint::Ideal;
  const double ref = (h_direct == Complex(0.0, 0.0)) ? 0.0 : std::arg(h_direct);
  cfg.phases.resize(cascade.size());
  for (Eigen::Index n = 0; n < cascade.size(); ++n) {
    cfg.phases(n) = wrap_angle_positive(ref - std::arg(cascade(n)));
  }
  return cfg;
}

PhaseConfig quantize_phases(const PhaseConfig& ideal, int levels) {
  if (levels < 1) throw std::invalid_argument("quantize_phases: levels must be >= 1");
  PhaseConfig cfg;
  cfg.constraint = PhaseConstraint::Discrete;
  cfg.levels = levels;
  cfg.phases.resize(ideal.phases.size());
  const double step = kTwoPi / levels;
  for (Eigen::Index n = 0; n < ideal.phases.size(); ++n) {
    const double x = wrap_angle_positive(ideal.phases(n)) / step;
    // round half-down so exact ties go to the lower level index
    long k = static_cast<long>(std::ceil(x - 0.5));
    k %= levels;
    if (k < 0) k += levels;
    cfg.phases(n) = k * step;
  }
  return cfg;
}

PhaseConfig random_phases(int n, RngStream& stream) {
  if (n < 1) throw std::invalid_argument("random_phases: n must be >= 1");
  PhaseConfig cfg;
  cfg.constraint = PhaseConstraint::Random;
  cfg.phases.resize(n);
  for (int i = 0; i < n; ++i) cfg.phases(i) = kTwoPi * stream.uniform();
  return cfg;
}

}  // namespace risim
