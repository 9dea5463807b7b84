// SPDX-License-Identifier: Apache-2.0
//
// risim - system-level simulator for RIS-assisted multi-cell cellular networks

#pragma once

#include "risim/engine.hpp"

#include <stdexcept>
#include <string>

namespace risim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the sectioned key = value config format. Unset keys keep their
/// defaults (the Table-like parameter set of the simulator); unknown keys or
/// ill-typed values raise ConfigError naming the key and line.
SimConfig parse_config_text(const std::string& text);

SimConfig parse_config(const std::string& path);

/// Canonical config text for a given configuration; parse(emit(c)) == c.
std::string emit_config(const SimConfig& cfg);

std::string emit_default_config();

/// FNV-1a over the canonical config text; stable across platforms.
std::uint64_t config_hash(const SimConfig& cfg);

}  // namespace risim
