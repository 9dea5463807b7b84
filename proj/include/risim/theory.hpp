// SPDX-License-Identifier: Apache-2.0
//
// risim - system-level simulator for RIS-assisted multi-cell cellular networks

#pragma once

#include "risim/common.hpp"

#include <vector>

namespace risim {

/// Inputs for the closed-form rate expressions used as analytic oracles.
struct RateInputs {
  double direct_mag = 0.0;            // |H|
  std::vector<double> cascade_mags;   // |r_n|
  double tx_power = 1.0;              // watts
  double noise_power = 1.0;           // watts
  int d_levels = 1;                   // D

  double cascade_sum() const {
    double s = 0.0;
    for (double r : cascade_mags) s += r;
    return s;
  }
  double cascade_mean() const {
    return cascade_mags.empty() ? 0.0 : cascade_sum() / cascade_mags.size();
  }
};

/// sin(pi/D) / (pi/D): amplitude retention of D-level phase quantization.
/// 0 at D = 1, strictly increasing, -> 1 as D grows.
double sinc_factor(int d_levels);

/// log2(1 + (P/sigma^2) (|H| + sum |r_n|)^2)
double rate_ideal(const RateInputs& in);

/// log2(1 + (P/sigma^2) (|H| + N sinc(pi/D) E[r])^2)
double rate_discrete_asymptotic(const RateInputs& in, int n_elements, double mean_cascade);

/// log2(1 + P |H|^2 / sigma^2)
double rate_no_ris(double direct_mag, double tx_power, double noise_power);

}  // namespace risim
