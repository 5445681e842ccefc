#include "spinchain/grover.hpp"

#include <algorithm>
#include <cmath>

namespace spinchain {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPhaseX = kPi;        // R_x(theta) = R(pi, theta)
constexpr double kPhaseY = 0.5 * kPi;  // R_y(theta) = R(pi/2, theta)

void require_four_qubits(const ChainParameters& params) {
  if (params.n != 4) {
    throw std::invalid_argument("the Grover compiler targets the 4-qubit register layout");
  }
}

void sweep(std::vector<PulseSpec>& out, const std::vector<NeighbourOffsets>& configs, int k,
           double phase, double angle, double rabi) {
  for (const NeighbourOffsets& off : configs) {
    out.push_back({k, off.mu, off.nu, phase, angle, rabi});
  }
}

}  // namespace

std::string to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::naive: return "naive";
    case Strategy::grouped: return "grouped";
    case Strategy::split: return "split";
  }
  return "?";
}

Strategy strategy_from_string(const std::string& name) {
  if (name == "naive") return Strategy::naive;
  if (name == "grouped") return Strategy::grouped;
  if (name == "split") return Strategy::split;
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

bool is_data_qubit(int k) {
  return std::find(kDataQubits.begin(), kDataQubits.end(), k) != kDataQubits.end();
}

bool is_oracle_target(int alpha) {
  return std::find(kOracleTargets.begin(), kOracleTargets.end(), alpha) !=
         kOracleTargets.end();
}

int data_register_value(BasisIndex b) {
  return bit(b, 0) | (bit(b, 2) << 1) | (bit(b, 3) << 2);
}

void validate(const GroverSpec& spec) {
  if (!is_oracle_target(spec.target)) {
    throw InvalidTarget("target " + std::to_string(spec.target) +
                        " is not in the implementable set {0, 5, 8, 13}");
  }
  if (spec.steps < 0) throw std::invalid_argument("steps must be non-negative");
  if (!(spec.rabi > 0.0)) throw std::invalid_argument("Rabi frequency must be positive");
}

std::vector<PulseSpec> compile_hadamard(const ChainParameters& params, int k,
                                        Strategy strategy, double rabi) {
  require_four_qubits(params);
  if (!is_data_qubit(k)) {
    throw NotDataQubit("qubit " + std::to_string(k) + " is the ancilla, not a data qubit");
  }

  const std::vector<NeighbourOffsets> configs = realizable_offsets(params, k);
  std::vector<PulseSpec> pulses;

  switch (strategy) {
    case Strategy::naive:
      // H = R_y(pi) R_y(pi/2) R_x(pi) applied rightmost first, once per
      // neighbour configuration.
      for (const NeighbourOffsets& off : configs) {
        pulses.push_back({k, off.mu, off.nu, kPhaseX, kPi, rabi});
        pulses.push_back({k, off.mu, off.nu, kPhaseY, 0.5 * kPi, rabi});
        pulses.push_back({k, off.mu, off.nu, kPhaseY, kPi, rabi});
      }
      break;
    case Strategy::grouped:
      // Pulses on distinct configurations commute, so the three rotation
      // blocks can each sweep all configurations in turn.
      sweep(pulses, configs, k, kPhaseX, kPi, rabi);
      sweep(pulses, configs, k, kPhaseY, 0.5 * kPi, rabi);
      sweep(pulses, configs, k, kPhaseY, kPi, rabi);
      break;
    case Strategy::split:
      // As grouped, but each pi block is played as two half-angle sweeps.
      // Interleaving the configurations separates the two halves of every
      // rotation, which lets off-resonant excursions from the first half be
      // partly undone during the second; playing the halves back to back
      // would reproduce the unsplit pulse exactly and change nothing.
      sweep(pulses, configs, k, kPhaseX, 0.5 * kPi, rabi);
      sweep(pulses, configs, k, kPhaseX, 0.5 * kPi, rabi);
      sweep(pulses, configs, k, kPhaseY, 0.5 * kPi, rabi);
      sweep(pulses, configs, k, kPhaseY, 0.5 * kPi, rabi);
      sweep(pulses, configs, k, kPhaseY, 0.5 * kPi, rabi);
      break;
  }
  return pulses;
}

std::vector<PulseSpec> compile_superposition(const ChainParameters& params,
                                             Strategy strategy, double rabi) {
  std::vector<PulseSpec> pulses;
  for (int k : kDataQubits) {
    const std::vector<PulseSpec> gate = compile_hadamard(params, k, strategy, rabi);
    pulses.insert(pulses.end(), gate.begin(), gate.end());
  }
  return pulses;
}

std::vector<PulseSpec> compile_s0(const ChainParameters& params, double rabi) {
  require_four_qubits(params);
  // Every ancilla neighbour configuration except (mu, nu) = (2, 1), which is
  // the all-zero data register that S0 leaves untouched.
  static constexpr std::array<NeighbourOffsets, 5> kConfigs{
      {{-2, 1}, {-2, -1}, {0, -1}, {0, 1}, {2, -1}}};
  std::vector<PulseSpec> pulses;
  pulses.reserve(kConfigs.size());
  for (const NeighbourOffsets& off : kConfigs) {
    pulses.push_back({kAncillaQubit, off.mu, off.nu, 0.0, 2.0 * kPi, rabi});
  }
  return pulses;
}

PulseSpec compile_oracle(const ChainParameters& params, int target, double rabi) {
  require_four_qubits(params);
  if (!is_oracle_target(target)) {
    throw InvalidTarget("oracle target " + std::to_string(target) +
                        " is not in the implementable set {0, 5, 8, 13}");
  }
  // The target's data bits fix the ancilla's neighbour configuration:
  // mu from qubits 0 and 2, nu from qubit 3.
  const BasisIndex b = static_cast<BasisIndex>(target);
  const int mu = spin_sign(b, 0) + spin_sign(b, 2);
  const int nu = spin_sign(b, 3);
  return {kAncillaQubit, mu, nu, 0.0, 2.0 * kPi, rabi};
}

PulseProgram compile_grover(const GroverSpec& spec, const ChainParameters& params) {
  require_four_qubits(params);
  validate(spec);

  PulseProgram program;
  program.append_segment("prep", compile_superposition(params, spec.strategy, spec.rabi));
  for (int step = 1; step <= spec.steps; ++step) {
    const std::string prefix = "step" + std::to_string(step) + ".";
    program.append_segment(prefix + "oracle",
                           {compile_oracle(params, spec.target, spec.rabi)});
    program.append_segment(prefix + "H1",
                           compile_superposition(params, spec.strategy, spec.rabi));
    program.append_segment(prefix + "S0", compile_s0(params, spec.rabi));
    program.append_segment(prefix + "H2",
                           compile_superposition(params, spec.strategy, spec.rabi));
  }
  return program;
}

PulseAccounting count_pulses(const ChainParameters& params, const GroverSpec& spec) {
  PulseAccounting counts;
  counts.strategy = spec.strategy;
  counts.steps = spec.steps;
  counts.hadamard0 =
      static_cast<int>(compile_hadamard(params, 0, spec.strategy, spec.rabi).size());
  counts.hadamard2 =
      static_cast<int>(compile_hadamard(params, 2, spec.strategy, spec.rabi).size());
  counts.hadamard3 =
      static_cast<int>(compile_hadamard(params, 3, spec.strategy, spec.rabi).size());
  counts.superposition = counts.hadamard0 + counts.hadamard2 + counts.hadamard3;
  counts.s0 = static_cast<int>(compile_s0(params, spec.rabi).size());
  counts.oracle = 1;
  counts.grover_step = counts.oracle + 2 * counts.superposition + counts.s0;
  const PulseProgram program = compile_grover(spec, params);
  counts.total = static_cast<int>(program.size());
  counts.duration_half_pi = duration_in_half_pi_units(program);
  return counts;
}

}  // namespace spinchain
