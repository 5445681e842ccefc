#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "spinchain/commands.hpp"

namespace {

using spinchain::RunConfig;

// Flag values are staged here and folded into RunConfig after the config
// file loads, so the precedence is defaults < file < flags.
struct FlagSet {
  std::optional<std::string> config_file;
  std::optional<int> alpha, steps, rabi_k, samples, points, threads;
  std::optional<double> rabi, grid_lo, grid_hi;
  std::optional<std::string> strategy, mode, out, summary;
  std::optional<std::uint64_t> seed;
  bool log_grid = false;
  bool linear_grid = false;
};

void add_common_flags(CLI::App* cmd, FlagSet& flags) {
  cmd->add_option("--config", flags.config_file, "key = value configuration file");
  cmd->add_option("--alpha", flags.alpha, "oracle target (0, 5, 8 or 13)");
  cmd->add_option("--steps", flags.steps, "Grover operator repetitions");
  cmd->add_option("--strategy", flags.strategy, "pulse arrangement: naive|grouped|split");
  cmd->add_option("--rabi", flags.rabi, "Rabi frequency Omega");
  cmd->add_option("--rabi-k", flags.rabi_k, "derive Omega from the 2pi-k condition at 2*J2");
  cmd->add_option("--threads", flags.threads, "worker threads for scans and averages");
}

int build_config(const FlagSet& flags, RunConfig& config, std::ostream& err) {
  try {
    if (flags.config_file) spinchain::load_config_file(config, *flags.config_file);
    if (flags.alpha) config.alpha = *flags.alpha;
    if (flags.steps) config.steps = *flags.steps;
    if (flags.strategy) config.strategy = spinchain::strategy_from_string(*flags.strategy);
    if (flags.mode) config.mode = spinchain::evolution_mode_from_string(*flags.mode);
    if (flags.rabi && flags.rabi_k) {
      err << "error: --rabi and --rabi-k are mutually exclusive\n";
      return 1;
    }
    if (flags.rabi) config.rabi = *flags.rabi;
    if (flags.rabi_k) {
      config.rabi.reset();
      config.rabi_k = *flags.rabi_k;
    }
    if (flags.seed) config.seed = *flags.seed;
    if (flags.samples) config.samples = *flags.samples;
    if (flags.points) config.grid.points = *flags.points;
    if (flags.grid_lo) config.grid.lo = *flags.grid_lo;
    if (flags.grid_hi) config.grid.hi = *flags.grid_hi;
    if (flags.log_grid) config.grid.logarithmic = true;
    if (flags.linear_grid) config.grid.logarithmic = false;
    if (flags.threads) config.threads = *flags.threads;
    if (flags.out) config.out = *flags.out;
    if (flags.summary) config.summary = *flags.summary;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pulse-level simulator of a four-qubit Ising spin chain running "
               "Grover's search"};
  app.require_subcommand(1);

  FlagSet flags;

  CLI::App* validate = app.add_subcommand("validate", "run the physics self-checks");
  add_common_flags(validate, flags);

  CLI::App* counts = app.add_subcommand("counts", "print the pulse/time accounting table");
  add_common_flags(counts, flags);

  CLI::App* trace = app.add_subcommand("trace", "fidelity trace of one algorithm run");
  add_common_flags(trace, flags);
  trace->add_option("--mode", flags.mode, "true evolution: ideal|exact|rk4");
  trace->add_option("--out", flags.out, "CSV output path (default trace.csv)");
  trace->add_option("--summary", flags.summary, "JSON summary output path");

  CLI::App* scan = app.add_subcommand("scan", "final fidelity vs Rabi frequency");
  add_common_flags(scan, flags);
  scan->add_option("--points", flags.points, "grid size (default 200)");
  scan->add_option("--min", flags.grid_lo, "grid lower edge (default 0.06)");
  scan->add_option("--max", flags.grid_hi, "grid upper edge (default 0.5)");
  scan->add_flag("--log", flags.log_grid, "logarithmic grid (default)");
  scan->add_flag("--linear", flags.linear_grid, "linear grid");
  scan->add_option("--out", flags.out, "CSV output path (default scan.csv)");

  CLI::App* random_avg =
      app.add_subcommand("random-avg", "average |f|^2 over Haar-random initial states");
  add_common_flags(random_avg, flags);
  random_avg->add_option("--samples", flags.samples, "number of random states (default 100)");
  random_avg->add_option("--seed", flags.seed, "master seed (default 12345)");
  random_avg->add_option("--out", flags.out, "CSV output path (default random_avg.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  RunConfig config;
  const int config_status = build_config(flags, config, std::cerr);
  if (config_status != 0) return config_status;

  if (validate->parsed()) return spinchain::cmd_validate(config, std::cout, std::cerr);
  if (counts->parsed()) return spinchain::cmd_counts(config, std::cout, std::cerr);
  if (trace->parsed()) return spinchain::cmd_trace(config, std::cout, std::cerr);
  if (scan->parsed()) return spinchain::cmd_scan(config, std::cout, std::cerr);
  if (random_avg->parsed()) return spinchain::cmd_random_avg(config, std::cout, std::cerr);
  return 1;
}
