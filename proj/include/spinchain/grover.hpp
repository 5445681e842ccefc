#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinchain/chain.hpp"
#include "spinchain/pulse.hpp"

namespace spinchain {

// Pulse arrangement of the compiled Hadamard gates.
//
// naive:   one R(pi,pi), R(pi/2,pi/2), R(pi/2,pi) triplet per neighbour
//          configuration.
// grouped: the commuting rearrangement - all R(pi,pi) pulses over the
//          configurations, then all R(pi/2,pi/2), then all R(pi/2,pi).
// split:   grouped, with every theta = pi pulse emitted as two consecutive
//          theta = pi/2 pulses of the same (k, mu, nu, phi).
//
// All three implement the same gate in ideal mode; they differ in the
// off-resonant error they accumulate.
enum class Strategy { naive, grouped, split };

std::string to_string(Strategy strategy);
Strategy strategy_from_string(const std::string& name);

class NotDataQubit : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidTarget : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Register layout: four qubits, data register on qubits {0, 2, 3}, ancilla
// on qubit 1 so it neighbours (first or second) every data qubit. Targets
// are 4-bit basis indices whose ancilla bit is 0.
inline constexpr int kAncillaQubit = 1;
inline constexpr std::array<int, 3> kDataQubits{0, 2, 3};
inline constexpr std::array<int, 4> kOracleTargets{0, 5, 8, 13};

bool is_data_qubit(int k);
bool is_oracle_target(int alpha);

// Value of the data register (bits 0, 2, 3) of a basis index, as 0..7.
int data_register_value(BasisIndex b);

struct GroverSpec {
  int target = 13;                       // one of kOracleTargets
  int steps = 2;                         // Grover operator repetitions
  Strategy strategy = Strategy::split;
  double rabi = 0.1;                     // Omega for every pulse
};

void validate(const GroverSpec& spec);

// Hadamard on data qubit k, covering every neighbour configuration.
// Pulse counts: naive/grouped 12 (edge qubits) or 18 (qubit 2); split 20/30.
std::vector<PulseSpec> compile_hadamard(const ChainParameters& params, int k,
                                        Strategy strategy, double rabi);

// H on all three data qubits, ascending qubit order: 42 pulses naive/grouped,
// 70 split.
std::vector<PulseSpec> compile_superposition(const ChainParameters& params,
                                             Strategy strategy, double rabi);

// Conditional phase reflection: -1 on every basis state except data value 0.
// Five 2pi pulses on the ancilla, one per neighbour configuration other than
// the all-zero data register.
std::vector<PulseSpec> compile_s0(const ChainParameters& params, double rabi);

// Phase oracle for the target: a single 2pi pulse on the ancilla whose
// (mu, nu) selects the target's data bits.
PulseSpec compile_oracle(const ChainParameters& params, int target, double rabi);

// Full program: preparation H^x3 from |0000>, then `steps` repetitions of
// oracle, H^x3, S0, H^x3, with labeled segments ("prep", "step1.oracle",
// "step1.H1", "step1.S0", "step1.H2", ...).
PulseProgram compile_grover(const GroverSpec& spec, const ChainParameters& params);

// Pulse and duration bookkeeping for one spec.
struct PulseAccounting {
  Strategy strategy = Strategy::split;
  int steps = 0;
  int hadamard0 = 0;       // pulses in H on qubit 0
  int hadamard2 = 0;
  int hadamard3 = 0;
  int superposition = 0;   // pulses in H^x3
  int s0 = 0;
  int oracle = 0;
  int grover_step = 0;     // oracle + 2 H^x3 + S0
  int total = 0;           // whole program
  double duration_half_pi = 0.0;  // whole program, in pi/2-pulse units
};

PulseAccounting count_pulses(const ChainParameters& params, const GroverSpec& spec);

}  // namespace spinchain
