// SPDX-License-Identifier: Apache-2.0
//
// risim - system-level simulator for RIS-assisted multi-cell cellular networks

#include "risim/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace risim {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const std::string& key, int line, const std::string& why) {
  std::ostringstream os;
  os << "config error at line " << line << ", key `" << key << "`: " << why;
  throw ConfigError(os.str());
}

double parse_double(const std::string& key, int line, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) fail(key, line, "trailing characters in number `" + v + "`");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(key, line, "expected a number, got `" + v + "`");
  }
}

long long parse_int(const std::string& key, int line, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) fail(key, line, "trailing characters in integer `" + v + "`");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(key, line, "expected an integer, got `" + v + "`");
  }
}

std::uint64_t parse_u64(const std::string& key, int line, const std::string& v) {
  try {
    std::size_t used = 0;
    const unsigned long long x = std::stoull(v, &used);
    if (used != v.size()) fail(key, line, "trailing characters in integer `" + v + "`");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(key, line, "expected an unsigned integer, got `" + v + "`");
  }
}

LosMode parse_los_mode(const std::string& key, int line, const std::string& v) {
  if (v == "auto") return LosMode::Auto;
  if (v == "los") return LosMode::ForcedLos;
  if (v == "nlos") return LosMode::ForcedNlos;
  fail(key, line, "expected auto|los|nlos, got `" + v + "`");
}

const char* los_mode_name(LosMode m) {
  switch (m) {
    case LosMode::Auto: return "auto";
    case LosMode::ForcedLos: return "los";
    case LosMode::ForcedNlos: return "nlos";
  }
  return "auto";
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

SimConfig parse_config_text(const std::string& text) {
  SimConfig cfg;
  bool strategy_set = false;
  bool levels_set = false;
  bool beams_set = false;

  using Setter = std::function<void(int, const std::string&)>;
  std::map<std::string, Setter> setters;
  auto add = [&](const char* name, Setter fn) { setters[name] = std::move(fn); };

  add("layout.isd_m", [&](int l, const std::string& v) { cfg.isd_m = parse_double("layout.isd_m", l, v); });
  add("layout.rings", [&](int l, const std::string& v) { cfg.rings = static_cast<int>(parse_int("layout.rings", l, v)); });
  add("layout.bs_height_m", [&](int l, const std::string& v) { cfg.bs_height_m = parse_double("layout.bs_height_m", l, v); });
  add("layout.ris_height_m", [&](int l, const std::string& v) { cfg.ris_height_m = parse_double("layout.ris_height_m", l, v); });
  add("layout.user_height_m", [&](int l, const std::string& v) { cfg.user_height_m = parse_double("layout.user_height_m", l, v); });
  add("layout.min_bs_user_dist_m", [&](int l, const std::string& v) { cfg.min_bs_user_dist_m = parse_double("layout.min_bs_user_dist_m", l, v); });
  add("layout.bs_downtilt_deg", [&](int l, const std::string& v) { cfg.bs_downtilt_deg = parse_double("layout.bs_downtilt_deg", l, v); });

  add("environment.fc_ghz", [&](int l, const std::string& v) { cfg.env.fc_ghz = parse_double("environment.fc_ghz", l, v); });
  add("environment.los_direct", [&](int l, const std::string& v) { cfg.env.los_direct = parse_los_mode("environment.los_direct", l, v); });
  add("environment.los_bs_ris", [&](int l, const std::string& v) { cfg.env.los_bs_ris = parse_los_mode("environment.los_bs_ris", l, v); });
  add("environment.los_ris_user", [&](int l, const std::string& v) { cfg.env.los_ris_user = parse_los_mode("environment.los_ris_user", l, v); });
  add("environment.shadow_sigma_los_db", [&](int l, const std::string& v) { cfg.env.shadow_sigma_los_db = parse_double("environment.shadow_sigma_los_db", l, v); });
  add("environment.shadow_sigma_nlos_db", [&](int l, const std::string& v) { cfg.env.shadow_sigma_nlos_db = parse_double("environment.shadow_sigma_nlos_db", l, v); });
  add("environment.clusters_los", [&](int l, const std::string& v) { cfg.env.clusters_los = static_cast<int>(parse_int("environment.clusters_los", l, v)); });
  add("environment.clusters_nlos", [&](int l, const std::string& v) { cfg.env.clusters_nlos = static_cast<int>(parse_int("environment.clusters_nlos", l, v)); });
  add("environment.rays_per_cluster", [&](int l, const std::string& v) { cfg.env.rays_per_cluster = static_cast<int>(parse_int("environment.rays_per_cluster", l, v)); });
  add("environment.asd_deg", [&](int l, const std::string& v) { cfg.env.asd_deg = parse_double("environment.asd_deg", l, v); });
  add("environment.asa_deg", [&](int l, const std::string& v) { cfg.env.asa_deg = parse_double("environment.asa_deg", l, v); });
  add("environment.zsd_deg", [&](int l, const std::string& v) { cfg.env.zsd_deg = parse_double("environment.zsd_deg", l, v); });
  add("environment.zsa_deg", [&](int l, const std::string& v) { cfg.env.zsa_deg = parse_double("environment.zsa_deg", l, v); });
  add("environment.intra_cluster_az_deg", [&](int l, const std::string& v) { cfg.env.intra_cluster_az_deg = parse_double("environment.intra_cluster_az_deg", l, v); });
  add("environment.intra_cluster_zen_deg", [&](int l, const std::string& v) { cfg.env.intra_cluster_zen_deg = parse_double("environment.intra_cluster_zen_deg", l, v); });
  add("environment.cluster_decay", [&](int l, const std::string& v) { cfg.env.cluster_decay = parse_double("environment.cluster_decay", l, v); });
  add("environment.k_factor_db", [&](int l, const std::string& v) { cfg.env.k_factor_db = parse_double("environment.k_factor_db", l, v); });

  add("panels.bs_nx", [&](int l, const std::string& v) { cfg.bs_nx = static_cast<int>(parse_int("panels.bs_nx", l, v)); });
  add("panels.bs_ny", [&](int l, const std::string& v) { cfg.bs_ny = static_cast<int>(parse_int("panels.bs_ny", l, v)); });
  add("panels.ris_nx", [&](int l, const std::string& v) { cfg.ris_nx = static_cast<int>(parse_int("panels.ris_nx", l, v)); });
  add("panels.ris_ny", [&](int l, const std::string& v) { cfg.ris_ny = static_cast<int>(parse_int("panels.ris_ny", l, v)); });
  add("panels.spacing_wavelengths", [&](int l, const std::string& v) { cfg.spacing_wl = parse_double("panels.spacing_wavelengths", l, v); });

  add("strategy.kind", [&](int l, const std::string& v) {
    const auto s = parse_strategy(v);
    if (!s) fail("strategy.kind", l, "expected no_ris|random|codebook|ideal|discrete, got `" + v + "`");
    cfg.strategy = *s;
    strategy_set = true;
  });
  add("strategy.levels", [&](int l, const std::string& v) {
    cfg.levels = static_cast<int>(parse_int("strategy.levels", l, v));
    levels_set = true;
  });
  add("strategy.beams", [&](int l, const std::string& v) {
    cfg.beams = static_cast<int>(parse_int("strategy.beams", l, v));
    beams_set = true;
  });

  add("run.drops", [&](int l, const std::string& v) { cfg.drops = static_cast<int>(parse_int("run.drops", l, v)); });
  add("run.seed", [&](int l, const std::string& v) { cfg.seed = parse_u64("run.seed", l, v); });
  add("run.users_per_sector", [&](int l, const std::string& v) { cfg.users_per_sector = static_cast<int>(parse_int("run.users_per_sector", l, v)); });
  add("run.tx_power_dbm", [&](int l, const std::string& v) { cfg.tx_power_dbm = parse_double("run.tx_power_dbm", l, v); });
  add("run.bandwidth_hz", [&](int l, const std::string& v) { cfg.bandwidth_hz = parse_double("run.bandwidth_hz", l, v); });
  add("run.noise_figure_db", [&](int l, const std::string& v) { cfg.noise_figure_db = parse_double("run.noise_figure_db", l, v); });
  add("run.thermal_noise_dbm_hz", [&](int l, const std::string& v) { cfg.thermal_dbm_hz = parse_double("run.thermal_noise_dbm_hz", l, v); });
  add("run.speed_mps", [&](int l, const std::string& v) { cfg.speed_mps = parse_double("run.speed_mps", l, v); });
  add("run.time_s", [&](int l, const std::string& v) { cfg.time_s = parse_double("run.time_s", l, v); });
  add("run.threads", [&](int l, const std::string& v) { cfg.threads = static_cast<int>(parse_int("run.threads", l, v)); });

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line, line_no, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "layout" && section != "environment" && section != "panels" &&
          section != "strategy" && section != "run") {
        fail(section, line_no, "unknown section");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line, line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) fail(key, line_no, "key outside of any section");
    const std::string full = section + "." + key;
    const auto it = setters.find(full);
    if (it == setters.end()) fail(full, line_no, "unknown key");
    it->second(line_no, value);
  }

  if (strategy_set && cfg.strategy == Strategy::Discrete && !levels_set) {
    throw ConfigError("config error: strategy.kind = discrete requires `strategy.levels`");
  }
  if (strategy_set && cfg.strategy == Strategy::Codebook && !beams_set) {
    throw ConfigError("config error: strategy.kind = codebook requires `strategy.beams`");
  }
  if (cfg.levels < 1) throw ConfigError("config error: `strategy.levels` must be >= 1");
  if (cfg.beams < 1) throw ConfigError("config error: `strategy.beams` must be >= 1");
  if (cfg.drops < 1) throw ConfigError("config error: `run.drops` must be >= 1");
  if (cfg.users_per_sector < 1) throw ConfigError("config error: `run.users_per_sector` must be >= 1");
  if (cfg.threads < 1) throw ConfigError("config error: `run.threads` must be >= 1");
  if (!(cfg.isd_m > 0.0)) throw ConfigError("config error: `layout.isd_m` must be positive");
  if (cfg.rings < 0) throw ConfigError("config error: `layout.rings` must be >= 0");
  return cfg;
}

SimConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config error: cannot open `" + path + "`");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string emit_config(const SimConfig& cfg) {
  std::ostringstream os;
  os << "[layout]\n";
  os << "isd_m = " << fmt(cfg.isd_m) << "\n";
  os << "rings = " << cfg.rings << "\n";
  os << "bs_height_m = " << fmt(cfg.bs_height_m) << "\n";
  os << "ris_height_m = " << fmt(cfg.ris_height_m) << "\n";
  os << "user_height_m = " << fmt(cfg.user_height_m) << "\n";
  os << "min_bs_user_dist_m = " << fmt(cfg.min_bs_user_dist_m) << "\n";
  os << "bs_downtilt_deg = " << fmt(cfg.bs_downtilt_deg) << "\n";
  os << "\n[environment]\n";
  os << "fc_ghz = " << fmt(cfg.env.fc_ghz) << "\n";
  os << "los_direct = " << los_mode_name(cfg.env.los_direct) << "\n";
  os << "los_bs_ris = " << los_mode_name(cfg.env.los_bs_ris) << "\n";
  os << "los_ris_user = " << los_mode_name(cfg.env.los_ris_user) << "\n";
  os << "shadow_sigma_los_db = " << fmt(cfg.env.shadow_sigma_los_db) << "\n";
  os << "shadow_sigma_nlos_db = " << fmt(cfg.env.shadow_sigma_nlos_db) << "\n";
  os << "clusters_los = " << cfg.env.clusters_los << "\n";
  os << "clusters_nlos = " << cfg.env.clusters_nlos << "\n";
  os << "rays_per_cluster = " << cfg.env.rays_per_cluster << "\n";
  os << "asd_deg = " << fmt(cfg.env.asd_deg) << "\n";
  os << "asa_deg = " << fmt(cfg.env.asa_deg) << "\n";
  os << "zsd_deg = " << fmt(cfg.env.zsd_deg) << "\n";
  os << "zsa_deg = " << fmt(cfg.env.zsa_deg) << "\n";
  os << "intra_cluster_az_deg = " << fmt(cfg.env.intra_cluster_az_deg) << "\n";
  os << "intra_cluster_zen_deg = " << fmt(cfg.env.intra_cluster_zen_deg) << "\n";
  os << "cluster_decay = " << fmt(cfg.env.cluster_decay) << "\n";
  os << "k_factor_db = " << fmt(cfg.env.k_factor_db) << "\n";
  os << "\n[panels]\n";
  os << "bs_nx = " << cfg.bs_nx << "\n";
  os << "bs_ny = " << cfg.bs_ny << "\n";
  os << "ris_nx = " << cfg.ris_nx << "\n";
  os << "ris_ny = " << cfg.ris_ny << "\n";
  os << "spacing_wavelengths = " << fmt(cfg.spacing_wl) << "\n";
  os << "\n[strategy]\n";
  os << "kind = " << strategy_name(cfg.strategy) << "\n";
  os << "levels = " << cfg.levels << "\n";
  os << "beams = " << cfg.beams << "\n";
  os << "\n[run]\n";
  os << "drops = " << cfg.drops << "\n";
  os << "seed = " << cfg.seed << "\n";
  os << "users_per_sector = " << cfg.users_per_sector << "\n";
  os << "tx_power_dbm = " << fmt(cfg.tx_power_dbm) << "\n";
  os << "bandwidth_hz = " << fmt(cfg.bandwidth_hz) << "\n";
  os << "noise_figure_db = " << fmt(cfg.noise_figure_db) << "\n";
  os << "thermal_noise_dbm_hz = " << fmt(cfg.thermal_dbm_hz) << "\n";
  os << "speed_mps = " << fmt(cfg.speed_mps) << "\n";
  os << "time_s = " << fmt(cfg.time_s) << "\n";
  os << "threads = " << cfg.threads << "\n";
  return os.str();
}

std::string emit_default_config() { return emit_config(SimConfig{}); }

std::uint64_t config_hash(const SimConfig& cfg) {
  const std::string text = emit_config(cfg);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace risim
