#include "spinchain/propagation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iostream>
#include <limits>

namespace spinchain {

namespace {

constexpr double kPi = 3.14159265358979323846;

// e^{i energy t}. The product is taken in extended precision so that phases
// of order 1e6 rad still carry ~1e-13 rad absolute accuracy.
std::complex<double> phase_factor(double energy, double time) {
  const long double phase =
      static_cast<long double>(energy) * static_cast<long double>(time);
  return {static_cast<double>(std::cos(phase)), static_cast<double>(std::sin(phase))};
}

// cos/sin with values within a few ulps of the quadrant points snapped to
// zero, so nominal pi and 2pi rotations act exactly despite pi itself not
// being representable.
struct CosSin {
  double c, s;
};

CosSin snapped_cos_sin(double x) {
  double c = std::cos(x);
  double s = std::sin(x);
  const double snap =
      4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x));
  if (std::abs(c) < snap) c = 0.0;
  if (std::abs(s) < snap) s = 0.0;
  return {c, s};
}

void check_state(const ChainParameters& params, const StateVector& psi) {
  if (psi.size() != static_cast<std::ptrdiff_t>(dim(params))) {
    throw std::invalid_argument("state dimension does not match the chain");
  }
  if (!is_normalized(psi)) {
    throw std::invalid_argument("state is not normalized");
  }
}

StateVector ideal_apply_unchecked(const ChainParameters& params, const PulseSpec& pulse,
                                  const StateVector& psi) {
  const auto [c, s] = snapped_cos_sin(0.5 * pulse.angle);
  const auto [pc, ps] = snapped_cos_sin(pulse.phase);
  const std::complex<double> i_unit(0.0, 1.0);
  const std::complex<double> upper = i_unit * s * std::complex<double>(pc, ps);
  const std::complex<double> lower = i_unit * s * std::complex<double>(pc, -ps);
  const NeighbourOffsets wanted{pulse.mu, pulse.nu};
  const BasisIndex mask = BasisIndex{1} << pulse.k;

  StateVector out = psi;
  for (BasisIndex b0 = 0; b0 < dim(params); ++b0) {
    if (b0 & mask) continue;
    if (neighbour_offsets(params, b0, pulse.k) != wanted) continue;
    const BasisIndex b1 = b0 | mask;
    const std::complex<double> a0 = psi[b0];
    const std::complex<double> a1 = psi[b1];
    out[b0] = c * a0 + upper * a1;
    out[b1] = lower * a0 + c * a1;
  }
  return out;
}

struct FlipLink {
  BasisIndex b0, b1;
  double delta;  // w - transition frequency of the pair
};

std::vector<FlipLink> flip_links(const ChainParameters& params, const PulseSpec& pulse) {
  const double w = drive_frequency(params, pulse.k, pulse.mu, pulse.nu);
  std::vector<FlipLink> links;
  links.reserve(params.n * dim(params) / 2);
  for (int q = 0; q < params.n; ++q) {
    const BasisIndex mask = BasisIndex{1} << q;
    for (BasisIndex b0 = 0; b0 < dim(params); ++b0) {
      if (b0 & mask) continue;
      const NeighbourOffsets off = neighbour_offsets(params, b0, q);
      links.push_back({b0, b0 | mask, w - drive_frequency(params, q, off.mu, off.nu)});
    }
  }
  return links;
}

StateVector rk4_apply_unchecked(const ChainParameters& params, const PulseSpec& pulse,
                                double t_start, const StateVector& psi, int step_count) {
  const std::vector<FlipLink> links = flip_links(params, pulse);
  // -i * (-Omega/2) e^{i phi}: drive coupling negated to match R(phi, theta)
  const std::complex<double> coef =
      std::complex<double>(0.0, 1.0) * 0.5 * pulse.rabi * std::polar(1.0, pulse.phase);

  const auto derivative = [&](double t, const StateVector& y, StateVector& dy) {
    dy.setZero();
    for (const FlipLink& link : links) {
      const std::complex<double> osc = std::polar(1.0, link.delta * t);
      dy[link.b0] += coef * osc * y[link.b1];
      dy[link.b1] -= std::conj(coef * osc) * y[link.b0];
    }
  };

  const double h = pulse.duration() / step_count;
  StateVector y = psi;
  StateVector k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size());
  for (int step = 0; step < step_count; ++step) {
    const double t = t_start + step * h;
    derivative(t, y, k1);
    derivative(t + 0.5 * h, y + (0.5 * h) * k1, k2);
    derivative(t + 0.5 * h, y + (0.5 * h) * k2, k3);
    derivative(t + h, y + h * k3, k4);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

}  // namespace

std::string to_string(EvolutionMode mode) {
  switch (mode) {
    case EvolutionMode::ideal: return "ideal";
    case EvolutionMode::exact: return "exact";
    case EvolutionMode::rk4: return "rk4";
  }
  return "?";
}

EvolutionMode evolution_mode_from_string(const std::string& name) {
  if (name == "ideal") return EvolutionMode::ideal;
  if (name == "exact") return EvolutionMode::exact;
  if (name == "rk4") return EvolutionMode::rk4;
  throw std::invalid_argument("unknown evolution mode '" + name + "'");
}

EffectiveHamiltonian effective_hamiltonian(const ChainParameters& params,
                                           const PulseSpec& pulse, DriveCoupling coupling) {
  validate_pulse(params, pulse);
  const std::size_t d = dim(params);
  const double w = drive_frequency(params, pulse.k, pulse.mu, pulse.nu);
  const BasisIndex pulse_mask = BasisIndex{1} << pulse.k;

  Eigen::VectorXd energy(d);
  for (BasisIndex b0 = 0; b0 < d; ++b0) {
    if (b0 & pulse_mask) continue;
    double z = 0.0;
    for (int q = 0; q < params.n; ++q) z += 0.5 * spin_sign(b0, q);
    const double e0 = diagonal_energy(params, b0) + w * z;
    energy[b0] = e0;
    // The partner energy goes through the transition identity so that a
    // resonant pair is degenerate as doubles, not merely to rounding.
    const NeighbourOffsets off = neighbour_offsets(params, b0, pulse.k);
    energy[b0 | pulse_mask] = e0 + (drive_frequency(params, pulse.k, off.mu, off.nu) - w);
  }

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
  h.diagonal() = energy.cast<std::complex<double>>();

  // Drive coupling, negated so the on-resonance pair propagator comes out as
  // R(phi, theta) with +i e^{i phi} sin(theta/2) in the upper right.
  const std::complex<double> coupling_value = -0.5 * pulse.rabi * std::polar(1.0, pulse.phase);
  const NeighbourOffsets wanted{pulse.mu, pulse.nu};
  for (int q = 0; q < params.n; ++q) {
    const BasisIndex mask = BasisIndex{1} << q;
    for (BasisIndex b0 = 0; b0 < d; ++b0) {
      if (b0 & mask) continue;
      if (coupling == DriveCoupling::resonant_only &&
          (q != pulse.k || !(neighbour_offsets(params, b0, q) == wanted))) {
        continue;
      }
      h(b0, b0 | mask) = coupling_value;
      h(b0 | mask, b0) = std::conj(coupling_value);
    }
  }
  return {std::move(h), std::move(energy)};
}

Eigen::MatrixXcd hermitian_propagator(const Eigen::MatrixXcd& h, double tau) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition of the pulse Hamiltonian failed");
  }
  Eigen::VectorXcd phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    phases[i] = phase_factor(solver.eigenvalues()[i], -tau);
  }
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

StateVector apply_rotating_frame_propagator(const Eigen::MatrixXcd& exp_h_tau,
                                            const Eigen::VectorXd& frame_energy,
                                            double t_start, double tau,
                                            const StateVector& psi) {
  const Eigen::Index d = psi.size();
  Eigen::VectorXcd start_phase(d), in(d);
  for (Eigen::Index b = 0; b < d; ++b) {
    start_phase[b] = phase_factor(frame_energy[b], t_start);
    in[b] = std::conj(start_phase[b]) * psi[b];
  }
  StateVector out = exp_h_tau * in;
  for (Eigen::Index b = 0; b < d; ++b) {
    out[b] *= start_phase[b] * phase_factor(frame_energy[b], tau);
  }
  return out;
}

StateVector ideal_pulse_apply(const ChainParameters& params, const PulseSpec& pulse,
                              const StateVector& psi) {
  validate_pulse(params, pulse);
  check_state(params, psi);
  return ideal_apply_unchecked(params, pulse, psi);
}

StateVector exact_pulse_apply(const ChainParameters& params, const PulseSpec& pulse,
                              double t_start, const StateVector& psi,
                              DriveCoupling coupling) {
  check_state(params, psi);
  const EffectiveHamiltonian eff = effective_hamiltonian(params, pulse, coupling);
  const Eigen::MatrixXcd exp_h = hermitian_propagator(eff.matrix, pulse.duration());
  return apply_rotating_frame_propagator(exp_h, eff.frame_energy, t_start, pulse.duration(),
                                         psi);
}

int rk4_min_step_count(const ChainParameters& params, const PulseSpec& pulse,
                       double points_per_period) {
  const double w = drive_frequency(params, pulse.k, pulse.mu, pulse.nu);
  const double fastest = *std::max_element(params.larmor.begin(), params.larmor.end()) + w;
  const double periods = fastest * pulse.duration() / (2.0 * kPi);
  return std::max(1, static_cast<int>(std::ceil(points_per_period * periods)));
}

StateVector rk4_reference_apply(const ChainParameters& params, const PulseSpec& pulse,
                                double t_start, const StateVector& psi, int step_count) {
  validate_pulse(params, pulse);
  check_state(params, psi);
  if (step_count < 1) throw std::invalid_argument("step_count must be positive");
  if (step_count < rk4_min_step_count(params, pulse, 20.0)) {
    std::cerr << "StepTooCoarse: " << step_count
              << " RK4 steps undersample the fastest oscillation (want >= "
              << rk4_min_step_count(params, pulse, 20.0) << ")\n";
  }
  return rk4_apply_unchecked(params, pulse, t_start, psi, step_count);
}

std::size_t PropagatorCache::KeyHash::operator()(const Key& key) const {
  std::uint64_t mix = 0xcbf29ce484222325ull;
  const auto absorb = [&mix](std::uint64_t v) {
    mix ^= v;
    mix *= 0x100000001b3ull;
  };
  absorb(key.w);
  absorb(key.phi);
  absorb(key.rabi);
  absorb(key.tau);
  absorb(static_cast<std::uint64_t>(key.coupling));
  return static_cast<std::size_t>(mix);
}

const PropagatorCache::Entry& PropagatorCache::get(const ChainParameters& params,
                                                   const PulseSpec& pulse,
                                                   DriveCoupling coupling) {
  const double w = drive_frequency(params, pulse.k, pulse.mu, pulse.nu);
  const Key key{std::bit_cast<std::uint64_t>(w), std::bit_cast<std::uint64_t>(pulse.phase),
                std::bit_cast<std::uint64_t>(pulse.rabi),
                std::bit_cast<std::uint64_t>(pulse.duration()), static_cast<int>(coupling)};
  auto found = entries_.find(key);
  if (found == entries_.end()) {
    EffectiveHamiltonian eff = effective_hamiltonian(params, pulse, coupling);
    Entry entry{hermitian_propagator(eff.matrix, pulse.duration()),
                std::move(eff.frame_energy)};
    found = entries_.emplace(key, std::move(entry)).first;
  }
  return found->second;
}

std::vector<TrajectorySample> run_program(const ChainParameters& params,
                                          const PulseProgram& program,
                                          const StateVector& initial, EvolutionMode mode,
                                          const RunOptions& options) {
  check_state(params, initial);
  std::vector<TrajectorySample> samples;
  samples.reserve(program.size() + 1);
  samples.push_back({0.0, initial});

  PropagatorCache local_cache;
  PropagatorCache* cache = options.cache ? options.cache : &local_cache;

  StateVector psi = initial;
  for (std::size_t i = 0; i < program.size(); ++i) {
    const PulseSpec& pulse = program.pulses[i];
    const double t_start = program.start_times[i];
    switch (mode) {
      case EvolutionMode::ideal:
        validate_pulse(params, pulse);
        psi = ideal_apply_unchecked(params, pulse, psi);
        break;
      case EvolutionMode::exact: {
        const PropagatorCache::Entry& entry = cache->get(params, pulse, options.coupling);
        psi = apply_rotating_frame_propagator(entry.exp_h_tau, entry.frame_energy, t_start,
                                              pulse.duration(), psi);
        break;
      }
      case EvolutionMode::rk4: {
        validate_pulse(params, pulse);
        const int steps = rk4_min_step_count(params, pulse, options.rk4_points_per_period);
        psi = rk4_apply_unchecked(params, pulse, t_start, psi, steps);
        break;
      }
    }
    samples.push_back({t_start + pulse.duration(), psi});
  }
  return samples;
}

std::complex<double> fidelity(const StateVector& ideal_state, const StateVector& true_state) {
  if (ideal_state.size() != true_state.size()) {
    throw std::invalid_argument("fidelity of states with different dimensions");
  }
  return ideal_state.dot(true_state);
}

Eigen::MatrixXcd ideal_operator(const ChainParameters& params,
                                const std::vector<PulseSpec>& pulses) {
  const std::size_t d = dim(params);
  Eigen::MatrixXcd op(d, d);
  for (BasisIndex b = 0; b < d; ++b) {
    StateVector psi = basis_state(params.n, b);
    for (const PulseSpec& pulse : pulses) {
      validate_pulse(params, pulse);
      psi = ideal_apply_unchecked(params, pulse, psi);
    }
    op.col(b) = psi;
  }
  return op;
}

Eigen::MatrixXcd single_qubit_operator_on(int n, int k, const Eigen::Matrix2cd& u) {
  const std::size_t d = std::size_t{1} << n;
  const BasisIndex mask = BasisIndex{1} << k;
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(d, d);
  for (BasisIndex b0 = 0; b0 < d; ++b0) {
    if (b0 & mask) continue;
    const BasisIndex b1 = b0 | mask;
    op(b0, b0) = u(0, 0);
    op(b0, b1) = u(0, 1);
    op(b1, b0) = u(1, 0);
    op(b1, b1) = u(1, 1);
  }
  return op;
}

double deviation_up_to_global_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("operator shapes differ");
  }
  Eigen::Index row = 0, col = 0;
  const double largest = b.cwiseAbs().maxCoeff(&row, &col);
  if (largest == 0.0) return a.cwiseAbs().maxCoeff();
  std::complex<double> phase = a(row, col) / b(row, col);
  const double magnitude = std::abs(phase);
  phase = magnitude == 0.0 ? std::complex<double>(1.0, 0.0) : phase / magnitude;
  return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace spinchain
