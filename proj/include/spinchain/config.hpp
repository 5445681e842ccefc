#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "spinchain/chain.hpp"
#include "spinchain/grover.hpp"
#include "spinchain/propagation.hpp"

namespace spinchain {

struct ScanGrid {
  int points = 200;
  double lo = 0.06;
  double hi = 0.5;
  bool logarithmic = true;
};

// Everything a command needs: chain, algorithm, mode, outputs, seeds.
// Defaults reproduce the standard setup; a config file and then command-line
// flags may override them.
struct RunConfig {
  ChainParameters chain;
  int alpha = 13;
  int steps = 2;
  Strategy strategy = Strategy::split;
  EvolutionMode mode = EvolutionMode::exact;
  std::optional<double> rabi;  // explicit Omega; otherwise derived from rabi_k
  int rabi_k = 4;              // 2pi-k index used when rabi is unset
  std::uint64_t seed = 12345;
  int samples = 100;
  ScanGrid grid;
  int threads = 1;
  std::string out;      // CSV path; per-command default when empty
  std::string summary;  // JSON summary path; omitted when empty
};

// Omega to run at: the explicit value, or rabi_for_2pik(2 * J2, rabi_k).
double resolve_rabi(const RunConfig& config);

// Plain-text "key = value" file ('#' comments). Accepted keys: n,
// w0..w{n-1}, J, J2, alpha, steps, strategy, mode, rabi, seed. Unknown keys
// are an error (std::invalid_argument). An "n" line must precede the
// Larmor entries it sizes.
void load_config_file(RunConfig& config, const std::string& path);

// Chain-only subset of the file format (keys n, w0..w{n-1}, J, J2).
ChainParameters load_chain_parameters(const std::string& path);

}  // namespace spinchain
