// SPDX-License-Identifier: Apache-2.0
//
// risim - system-level simulator for RIS-assisted multi-cell cellular networks

#include "risim/config.hpp"
#include "risim/engine.hpp"
#include "risim/results_io.hpp"
#include "risim/theory.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace risim;

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> drops;
  std::optional<int> threads;
  std::optional<int> beams;
};

std::string default_out_dir() {
  if (const char* env = std::getenv("RISIM_OUT")) return env;
  return "risim_out";
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "config file path");
  cmd->add_option("--out", opts.out_dir, "output directory (default $RISIM_OUT or ./risim_out)");
  cmd->add_option("--seed", opts.seed, "master seed override");
  cmd->add_option("--drops", opts.drops, "drop count override");
  cmd->add_option("--threads", opts.threads, "worker thread override");
  cmd->add_option("--beams", opts.beams, "codebook beam count override");
}

SimConfig load_config(const CommonOpts& opts) {
  SimConfig cfg = opts.config_path.empty() ? SimConfig{} : parse_config(opts.config_path);
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.drops) cfg.drops = *opts.drops;
  if (opts.threads) cfg.threads = *opts.threads;
  if (opts.beams) cfg.beams = *opts.beams;
  return cfg;
}

void print_summary(const StrategyRun& run) {
  std::printf("%-12s median CL %8.3f dB | median SINR %8.3f dB | median SE %7.4f b/s/Hz\n",
              run.name.c_str(), run.result.coupling_loss_cdf.percentile(0.5),
              run.result.sinr_cdf.percentile(0.5), run.result.se_cdf.percentile(0.5));
}

int run_sweep(const CommonOpts& opts, const std::vector<std::string>& strategies,
              const std::vector<int>& levels, const std::vector<std::string>& ris_sizes) {
  SimConfig base = load_config(opts);
  struct Entry {
    std::string name;
    SimConfig cfg;
  };
  std::vector<Entry> entries;
  auto ris_variants = [&](const std::string& prefix, SimConfig cfg) {
    if (ris_sizes.empty()) {
      entries.push_back({prefix, cfg});
      return;
    }
    for (const std::string& tok : ris_sizes) {
      const auto x = tok.find('x');
      if (x == std::string::npos) throw ConfigError("bad --ris token `" + tok + "`, want NXxNY");
      SimConfig c = cfg;
      c.ris_nx = std::stoi(tok.substr(0, x));
      c.ris_ny = std::stoi(tok.substr(x + 1));
      entries.push_back({prefix + "_n" + std::to_string(c.ris_nx * c.ris_ny), c});
    }
  };

  for (const std::string& name : strategies) {
    const auto strat = parse_strategy(name);
    if (!strat) throw ConfigError("unknown strategy `" + name + "` in --strategy");
    SimConfig cfg = base;
    cfg.strategy = *strat;
    if (*strat == Strategy::Discrete) {
      const std::vector<int>& dl = levels.empty() ? std::vector<int>{cfg.levels} : levels;
      for (int d : dl) {
        SimConfig c = cfg;
        c.levels = d;
        ris_variants("discrete" + std::to_string(d), c);
      }
    } else {
      ris_variants(name, cfg);
    }
  }
  if (entries.empty()) throw ConfigError("sweep: no strategies given");

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<StrategyRun> runs;
  for (const Entry& e : entries) {
    StrategyRun run;
    run.name = e.name;
    run.cfg = e.cfg;
    run.result = run_campaign(e.cfg);
    runs.push_back(std::move(run));
    print_summary(runs.back());
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_results(runs, opts.out_dir, wall);

  const StrategyRun& base_run = runs.front();
  for (std::size_t i = 1; i < runs.size(); ++i) {
    std::printf("%s vs %s: delta median CL %+.3f dB, SINR %+.3f dB, SE %+.2f%%\n",
                runs[i].name.c_str(), base_run.name.c_str(),
                base_run.result.coupling_loss_cdf.percentile(0.5) -
                    runs[i].result.coupling_loss_cdf.percentile(0.5),
                runs[i].result.sinr_cdf.percentile(0.5) -
                    base_run.result.sinr_cdf.percentile(0.5),
                100.0 * (runs[i].result.se_cdf.percentile(0.5) /
                             base_run.result.se_cdf.percentile(0.5) -
                         1.0));
  }
  std::printf("results written to %s\n", opts.out_dir.c_str());
  return 0;
}

int run_theory(const std::vector<int>& levels, double direct_mag, double cascade_sum, int terms,
               double snr_db) {
  const double p_over_n = db_to_pow(snr_db);
  RateInputs in;
  in.direct_mag = direct_mag;
  in.tx_power = p_over_n;
  in.noise_power = 1.0;
  const double mean_cascade = cascade_sum / terms;
  in.cascade_mags.assign(static_cast<std::size_t>(terms), mean_cascade);

  std::printf("reference: |H| = %g, sum |r_n| = %g over N = %d, P/sigma^2 = %g dB\n", direct_mag,
              cascade_sum, terms, snr_db);
  std::printf("rate_no_ris  = %.6f bits/s/Hz\n", rate_no_ris(direct_mag, p_over_n, 1.0));
  std::printf("rate_ideal   = %.6f bits/s/Hz\n", rate_ideal(in));
  std::printf("%8s %12s %14s\n", "D", "sinc(pi/D)", "rate");
  for (int d : levels) {
    RateInputs di = in;
    di.d_levels = d;
    std::printf("%8d %12.4f %14.6f\n", d, sinc_factor(d),
                rate_discrete_asymptotic(di, terms, mean_cascade));
  }
  return 0;
}

int run_calibrate(const CommonOpts& opts) {
  SimConfig cfg = load_config(opts);
  cfg.strategy = Strategy::NoRis;
  const auto t0 = std::chrono::steady_clock::now();
  StrategyRun run;
  run.name = "no_ris";
  run.cfg = cfg;
  run.result = run_campaign(cfg);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_results({run}, opts.out_dir, wall);
  std::printf("calibration run (no RIS), %zu samples\n", run.result.sinr_db.size());
  std::printf("coupling loss p05/p50/p95: %.2f / %.2f / %.2f dB\n",
              run.result.coupling_loss_cdf.percentile(0.05),
              run.result.coupling_loss_cdf.percentile(0.5),
              run.result.coupling_loss_cdf.percentile(0.95));
  std::printf("SINR p05/p50/p95: %.2f / %.2f / %.2f dB\n",
              run.result.sinr_cdf.percentile(0.05), run.result.sinr_cdf.percentile(0.5),
              run.result.sinr_cdf.percentile(0.95));
  std::printf("results written to %s\n", opts.out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"risim: deterministic system-level simulator for RIS-assisted cellular networks"};
  app.require_subcommand(1);

  CommonOpts opts;
  opts.out_dir = default_out_dir();

  auto* cmd_run = app.add_subcommand("run", "run one campaign");
  add_common(cmd_run, opts);
  std::string run_strategy;
  std::optional<int> run_levels;
  cmd_run->add_option("--strategy", run_strategy, "no_ris|random|codebook|ideal|discrete");
  cmd_run->add_option("--levels", run_levels, "discrete phase levels D");

  auto* cmd_sweep = app.add_subcommand("sweep", "run several strategies and compare");
  add_common(cmd_sweep, opts);
  std::vector<std::string> sweep_strategies;
  std::vector<int> sweep_levels;
  std::vector<std::string> sweep_ris;
  cmd_sweep->add_option("--strategy", sweep_strategies, "comma list of strategies")
      ->delimiter(',');
  cmd_sweep->add_option("--levels", sweep_levels, "comma list of D values for discrete")
      ->delimiter(',');
  cmd_sweep->add_option("--ris", sweep_ris, "comma list of RIS sizes, e.g. 16x16,8x8")
      ->delimiter(',');

  auto* cmd_theory = app.add_subcommand("theory", "closed-form rate table");
  std::vector<int> theory_levels = {2, 4, 16, 256, 4096};
  double th_direct = 1.0, th_cascade = 1.0, th_snr = 10.0;
  int th_terms = 256;
  cmd_theory->add_option("--levels", theory_levels, "comma list of D values")->delimiter(',');
  cmd_theory->add_option("--direct-mag", th_direct, "|H|");
  cmd_theory->add_option("--cascade-sum", th_cascade, "sum of |r_n|");
  cmd_theory->add_option("--terms", th_terms, "number of cascade terms N");
  cmd_theory->add_option("--snr-db", th_snr, "P/sigma^2 in dB");

  auto* cmd_cal = app.add_subcommand("calibrate", "no-RIS coupling-loss/SINR baseline");
  add_common(cmd_cal, opts);

  auto* cmd_defaults = app.add_subcommand("emit-defaults", "print the default config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (app.got_subcommand(cmd_run)) {
      SimConfig cfg = load_config(opts);
      if (!run_strategy.empty()) {
        const auto s = parse_strategy(run_strategy);
        if (!s) throw ConfigError("unknown strategy `" + run_strategy + "`");
        cfg.strategy = *s;
      }
      if (run_levels) cfg.levels = *run_levels;
      if (cfg.strategy == Strategy::Discrete && cfg.levels < 1) {
        throw ConfigError("strategy.levels must be >= 1");
      }
      const auto t0 = std::chrono::steady_clock::now();
      StrategyRun run;
      run.name = strategy_name(cfg.strategy);
      if (cfg.strategy == Strategy::Discrete) run.name += std::to_string(cfg.levels);
      if (cfg.strategy == Strategy::Codebook) run.name += std::to_string(cfg.beams);
      run.cfg = cfg;
      run.result = run_campaign(cfg);
      const double wall =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      write_results({run}, opts.out_dir, wall);
      print_summary(run);
      std::printf("results written to %s\n", opts.out_dir.c_str());
      return 0;
    }
    if (app.got_subcommand(cmd_sweep)) {
      if (sweep_strategies.empty()) {
        sweep_strategies = {"no_ris", "random", "discrete", "ideal"};
        if (sweep_levels.empty()) sweep_levels = {16};
      }
      return run_sweep(opts, sweep_strategies, sweep_levels, sweep_ris);
    }
    if (app.got_subcommand(cmd_theory)) {
      return run_theory(theory_levels, th_direct, th_cascade, th_terms, th_snr);
    }
    if (app.got_subcommand(cmd_cal)) {
      return run_calibrate(opts);
    }
    if (app.got_subcommand(cmd_defaults)) {
      std::fputs(emit_default_config().c_str(), stdout);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "runtime error: %s\n", e.what());
    return 3;
  }
  return 0;
}
