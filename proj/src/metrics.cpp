// SPDX-License-Identifier: Apache-2.0
//
// risim - system-level simulator for RIS-assisted multi-cell cellular networks

#include "risim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace risim {

double received_power(const CMatrix& h_eq, double tx_power_watt) {
  if (h_eq.size() == 0) throw std::invalid_argument("received_power: empty channel");
  return tx_power_watt * h_eq.squaredNorm();
}

double coupling_loss_db(double tx_power_dbm, double rx_power_dbm) {
  return tx_power_dbm - rx_power_dbm;
}

double sinr(double serving_watt, const std::vector<double>& interferers_watt,
            double noise_watt) {
  if (!(noise_watt > 0.0)) throw std::invalid_argument("sinr: noise must be positive");
  double denom = noise_watt;
  for (double p : interferers_watt) denom += p;
  return serving_watt / denom;
}

EmpiricalCdf empirical_cdf(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("empirical_cdf: empty input");
  std::sort(values.begin(), values.end());
  EmpiricalCdf cdf;
  const double n = static_cast<double>(values.size());
  cdf.probabilities.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    cdf.probabilities[i] = static_cast<double>(i + 1) / n;
  }
  cdf.values = std::move(values);
  return cdf;
}

double EmpiricalCdf::percentile(double q) const {
  if (values.empty()) throw std::invalid_argument("percentile: empty cdf");
  q = std::clamp(q, 0.0, 1.0);
  const double n = static_cast<double>(values.size());
  const double pos = q * n - 0.5;  // index on the midpoint grid
  if (pos <= 0.0) return values.front();
  if (pos >= n - 1.0) return values.back();
  const std::size_t lo = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

}  // namespace risim
