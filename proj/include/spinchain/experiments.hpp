#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "spinchain/grover.hpp"
#include "spinchain/propagation.hpp"

namespace spinchain {

// Rabi frequency satisfying the 2pi-k condition for a pi pulse against a
// transition detuned by delta: sqrt(delta^2 + Omega^2) * (pi/Omega) = 2 pi k,
// i.e. Omega = delta / sqrt(4 k^2 - 1). At the end of such a pulse the
// detuned transition has completed k full generalized-Rabi cycles and
// returns to zero excitation.
double rabi_for_2pik(double delta, int k);

// True when pi/2 pulses are suppressed as well (the generalized phase over a
// half pulse is pi*k, a full cycle only for even k).
bool two_pi_k_suppresses_half_pulses(int k);

// Complex fidelity f(t) = <ideal(t)|true(t)> sampled at pulse boundaries.
// Times are in pi/2-pulse units.
struct FidelityTrace {
  std::vector<double> times;
  std::vector<std::complex<double>> values;
};

// Runs the compiled program from |0000> in ideal mode and in true_mode over
// the same pulses, and records the overlap at every boundary.
FidelityTrace fidelity_trace(const GroverSpec& spec, const ChainParameters& params,
                             EvolutionMode true_mode = EvolutionMode::exact,
                             const RunOptions& options = {});

struct ScanRow {
  double rabi = 0.0;
  double re_f = 0.0;    // Re f at the end of the algorithm
  double f_abs2 = 0.0;  // |f|^2 at the end of the algorithm
};

// One full algorithm run per grid value, rows in grid order. Rows are
// independent; `threads` > 1 distributes them without changing the output.
std::vector<ScanRow> rabi_scan(int target, const std::vector<double>& grid,
                               Strategy strategy, const ChainParameters& params,
                               int steps = 2, int threads = 1);

std::vector<double> log_grid(double lo, double hi, int points);
std::vector<double> linear_grid(double lo, double hi, int points);

// Haar-random state: i.i.d. standard complex Gaussian amplitudes,
// normalized. Deterministic in the seed, independent of platform RNG
// distributions.
StateVector haar_random_state(int n, std::uint64_t seed);

struct AveragedTrace {
  std::vector<double> times;          // pi/2-pulse units
  std::vector<double> mean_f_abs2;    // sample mean of |f(t)|^2
};

// Sample mean of |f(t)|^2 over Haar-random initial states. Per-sample seeds
// derive from (seed, sample index), so results are identical under any
// thread count.
AveragedTrace random_state_trace(const PulseProgram& program, const ChainParameters& params,
                                 int samples, std::uint64_t seed, int threads = 1);

class DegenerateWindow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Least-squares fit of ln|f|^2 over samples with t <= window_end (and
// |f|^2 > 0): |f(t)|^2 ~ intercept * exp(-rate * t).
struct FitResult {
  double rate = 0.0;        // 1 / (pi/2-pulse units)
  double intercept = 0.0;   // fitted |f(0)|^2
  double window_begin = 0.0;
  double window_end = 0.0;  // actual sample range used
};

FitResult fit_exponential(const FidelityTrace& trace, double window_end);

struct SuccessProbability {
  double marginal = 0.0;  // data register matches the target, any ancilla
  double strict = 0.0;    // exact basis state |target>
};

SuccessProbability success_probability(const StateVector& final_state, int target);

}  // namespace spinchain
