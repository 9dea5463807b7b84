// SPDX-License-Identifier: Apache-2.0
//
// risim - system-level simulator for RIS-assisted multi-cell cellular networks

#include "risim/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace risim {

double sinc_factor(int d_levels) {
  if (d_levels < 1) throw std::invalid_argument("sinc_factor: d_levels must be >= 1");
  if (d_levels == 1) return 0.0;  // sin(pi) up to rounding
  const double x = kPi / d_levels;
  return std::sin(x) / x;
}

double rate_ideal(const RateInputs& in) {
  const double amp = in.direct_mag + in.cascade_sum();
  return std::log2(1.0 + in.tx_power / in.noise_power * amp * amp);
}

double rate_discrete_asymptotic(const RateInputs& in, int n_elements, double mean_cascade) {
  if (n_elements < 1) throw std::invalid_argument("rate_discrete_asymptotic: n_elements >= 1");
  const double amp = in.direct_mag + n_elements * sinc_factor(in.d_levels) * mean_cascade;
  return std::log2(1.0 + in.tx_power / in.noise_power * amp * amp);
}

double rate_no_ris(double direct_mag, double tx_power, double noise_power) {
  return std::log2(1.0 + tx_power * direct_mag * direct_mag / noise_power);
}

}  // namespace risim
