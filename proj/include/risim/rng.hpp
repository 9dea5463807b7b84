// SPDX-License-Identifier: Apache-2.0
//
// risim - system-level simulator for RIS-assisted multi-cell cellular networks

#pragma once

#include "risim/common.hpp"

#include <cstdint>
#include <random>

namespace risim {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic random stream with hand-rolled distribution transforms.
/// Standard-library distributions are implementation-defined; everything here
/// is specified down to the bit so runs reproduce across platforms.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform angle in (-pi, pi].
  double angle() { return kPi * (1.0 - 2.0 * uniform()); }

  /// Standard normal via Box-Muller; the paired value is cached.
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1 = 1.0 - uniform();  // (0, 1], keeps log() finite
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    cached_ = r * std::sin(kTwoPi * u2);
    has_cached_ = true;
    return r * std::cos(kTwoPi * u2);
  }

  /// Zero-mean Laplace with the given scale parameter.
  double laplace(double scale) {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    u -= 0.5;  // (-0.5, 0.5)
    double s = (u < 0.0) ? -1.0 : 1.0;
    return -scale * s * std::log(1.0 - 2.0 * std::abs(u));
  }

  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t uniform_int(std::uint64_t n) {
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  std::uint64_t bits() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// Hierarchical seed derivation. Every random quantity is drawn from a stream
/// addressed by a chain of salts below the master seed, so results never
/// depend on evaluation order or thread count.
class SeedChain {
 public:
  explicit SeedChain(std::uint64_t master) : state_(splitmix64(master)) {}

  SeedChain child(std::uint64_t salt) const {
    return SeedChain(splitmix64(state_ ^ splitmix64(salt)), Raw{});
  }

  template <typename... Salts>
  SeedChain child(std::uint64_t salt, Salts... rest) const {
    return child(salt).child(static_cast<std::uint64_t>(rest)...);
  }

  RngStream stream() const { return RngStream(state_); }

  std::uint64_t value() const { return state_; }

 private:
  struct Raw {};
  SeedChain(std::uint64_t state, Raw) : state_(state) {}
  std::uint64_t state_;
};

/// Stream salts used by the engine; kept in one place so the addressing
/// scheme is stable.
enum StreamSalt : std::uint64_t {
  kSaltDrop = 1,
  kSaltUsers = 2,
  kSaltLinkDirect = 3,
  kSaltLinkBsRis = 4,
  kSaltLinkRisUser = 5,
  kSaltSchedule = 6,
  kSaltPhases = 7,
};

}  // namespace risim
