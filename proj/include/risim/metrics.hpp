// SPDX-License-Identifier: Apache-2.0
//
// risim - system-level simulator for RIS-assisted multi-cell cellular networks

#pragma once

#include "risim/common.hpp"

#include <vector>

namespace risim {

/// P_t * ||h_eq||_F^2: matched-filter combining over the array.
double received_power(const CMatrix& h_eq, double tx_power_watt);

/// Transmitted minus received power, both in dBm.
double coupling_loss_db(double tx_power_dbm, double rx_power_dbm);

/// serving / (sum of interferers + noise), all in watts.
double sinr(double serving_watt, const std::vector<double>& interferers_watt,
            double noise_watt);

struct EmpiricalCdf {
  std::vector<double> values;         // non-decreasing
  std::vector<double> probabilities;  // i/n, ending at 1

  /// Quantile with midpoint plotting positions ((i-0.5)/n) and linear
  /// interpolation, so the median of 1..100 is 50.5.
  double percentile(double q) const;
};

EmpiricalCdf empirical_cdf(std::vector<double> values);

struct UserMetrics {
  double coupling_loss_db = 0.0;
  double snr_db = 0.0;
  double sinr_db = 0.0;
  double spectral_eff = 0.0;  // bits/s/Hz
  int serving_sector = -1;
  int best_beam = -1;  // -1 = none / not applicable
};

struct DropMetrics {
  std::vector<UserMetrics> users;
};

}  // namespace risim
