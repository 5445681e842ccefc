#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "spinchain/chain.hpp"
#include "spinchain/pulse.hpp"
#include "spinchain/state.hpp"

namespace spinchain {

// Evolution modes for a pulse program.
//
// ideal: each pulse is the 2x2 rotation
//            R(phi, theta) = [ cos(theta/2)              i e^{ i phi} sin(theta/2) ]
//                            [ i e^{-i phi} sin(theta/2) cos(theta/2)              ]
//        applied to every basis pair whose neighbour offsets match the pulse,
//        in (alpha_k = 0, alpha_k = 1) row order; all other amplitudes are
//        untouched. This keeps only the exactly resonant drive matrix
//        elements.
// exact: closed-form rotating-frame propagator of the full drive,
//            U_I = D(t0 + tau) exp(-i H_eff tau) D(t0)^dagger,
//        where D(t) = diag(exp(i E_eff t)), E_eff is the rotating-frame
//        diagonal, and H_eff adds the drive coupling Omega/2 on every
//        single-spin-flip pair. The coupling sign is fixed so that the
//        on-resonance propagator of an isolated pair equals R(phi, theta).
// rk4:   fixed-step 4th-order Runge-Kutta integration of the
//        interaction-picture Schroedinger equation; an independent check on
//        the exact mode.
enum class EvolutionMode { ideal, exact, rk4 };

std::string to_string(EvolutionMode mode);
EvolutionMode evolution_mode_from_string(const std::string& name);

// full: drive couples every single-spin flip. resonant_only: drive matrix
// elements are kept only inside pairs resonant with the pulse; with this
// truncation the exact propagator must reproduce the ideal mode.
enum class DriveCoupling { full, resonant_only };

struct EffectiveHamiltonian {
  Eigen::MatrixXcd matrix;       // dense 2^n x 2^n, Hermitian
  Eigen::VectorXd frame_energy;  // its diagonal; also the D(t) phase rates
};

// Rotating-frame Hamiltonian of one pulse. Within each flip-pair of the
// driven qubit the two diagonal entries are built from one shared frequency
// expression, so exact resonance means exactly degenerate doubles and the
// frame phases cancel bit-for-bit inside resonant pairs.
EffectiveHamiltonian effective_hamiltonian(const ChainParameters& params,
                                           const PulseSpec& pulse,
                                           DriveCoupling coupling = DriveCoupling::full);

// exp(-i h tau) via Hermitian eigendecomposition (no Trotter error).
Eigen::MatrixXcd hermitian_propagator(const Eigen::MatrixXcd& h, double tau);

// Applies D(t_start + tau) * exp_h_tau * D(t_start)^dagger with
// D(t) = diag(exp(i frame_energy t)). The leading factor is evaluated as
// D(t_start) D(tau) so the t_start phases enter only as exact conjugate
// pairs and the accumulated program time never degrades pulse-local phases.
StateVector apply_rotating_frame_propagator(const Eigen::MatrixXcd& exp_h_tau,
                                            const Eigen::VectorXd& frame_energy,
                                            double t_start, double tau,
                                            const StateVector& psi);

StateVector ideal_pulse_apply(const ChainParameters& params, const PulseSpec& pulse,
                              const StateVector& psi);

StateVector exact_pulse_apply(const ChainParameters& params, const PulseSpec& pulse,
                              double t_start, const StateVector& psi,
                              DriveCoupling coupling = DriveCoupling::full);

// Steps needed to sample the fastest interaction-picture oscillation
// (bounded by max_k w_k + w) with points_per_period points.
int rk4_min_step_count(const ChainParameters& params, const PulseSpec& pulse,
                       double points_per_period = 20.0);

// Classical RK4 with fixed step duration/step_count. Warns on stderr when
// step_count undercuts rk4_min_step_count at 20 points per period.
StateVector rk4_reference_apply(const ChainParameters& params, const PulseSpec& pulse,
                                double t_start, const StateVector& psi, int step_count);

// Reuses exp(-i H_eff tau) across repeated pulses; only the diagonal frame
// phases depend on the start time. Keyed by (w, phi, Omega, tau) bit
// patterns. Not synchronized: use one instance per run, or guard externally.
class PropagatorCache {
 public:
  struct Entry {
    Eigen::MatrixXcd exp_h_tau;
    Eigen::VectorXd frame_energy;
  };

  const Entry& get(const ChainParameters& params, const PulseSpec& pulse,
                   DriveCoupling coupling);
  std::size_t size() const { return entries_.size(); }

 private:
  struct Key {
    std::uint64_t w, phi, rabi, tau;
    int coupling;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& key) const;
  };
  std::unordered_map<Key, Entry, KeyHash> entries_;
};

struct RunOptions {
  DriveCoupling coupling = DriveCoupling::full;  // exact mode only
  double rk4_points_per_period = 24.0;           // rk4 mode only
  PropagatorCache* cache = nullptr;              // optional shared cache
};

struct TrajectorySample {
  double time = 0.0;
  StateVector state;
};

// Sequential evolution through the program, sampling at every pulse
// boundary; the first sample is (0, initial).
std::vector<TrajectorySample> run_program(const ChainParameters& params,
                                          const PulseProgram& program,
                                          const StateVector& initial, EvolutionMode mode,
                                          const RunOptions& options = {});

// Complex fidelity <ideal|true>; callers report Re f and |f|^2.
std::complex<double> fidelity(const StateVector& ideal_state, const StateVector& true_state);

// Dense operator realized by a pulse list in ideal mode; column b is the
// image of basis state b.
Eigen::MatrixXcd ideal_operator(const ChainParameters& params,
                                const std::vector<PulseSpec>& pulses);

// u acting on qubit k, identity elsewhere; row/column 0 of u corresponds to
// alpha_k = 0.
Eigen::MatrixXcd single_qubit_operator_on(int n, int k, const Eigen::Matrix2cd& u);

// max_ij |a_ij - e^{i theta} b_ij| minimized over one global phase theta.
double deviation_up_to_global_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace spinchain
