#include "spinchain/experiments.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <random>
#include <thread>

namespace spinchain {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Runs a chunked index range on `threads` workers, results keyed by index.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& work) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) work(i);
  };
  std::vector<std::thread> pool;
  const int pool_size = std::min<int>(threads, static_cast<int>(count));
  pool.reserve(pool_size);
  for (int t = 0; t < pool_size; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
}

FidelityTrace trace_from_runs(const std::vector<TrajectorySample>& ideal_run,
                              const std::vector<TrajectorySample>& true_run,
                              double tau_unit) {
  FidelityTrace trace;
  trace.times.reserve(ideal_run.size());
  trace.values.reserve(ideal_run.size());
  for (std::size_t i = 0; i < ideal_run.size(); ++i) {
    trace.times.push_back(ideal_run[i].time / tau_unit);
    trace.values.push_back(fidelity(ideal_run[i].state, true_run[i].state));
  }
  return trace;
}

}  // namespace

double rabi_for_2pik(double delta, int k) {
  if (!(delta > 0.0)) throw std::invalid_argument("detuning must be positive");
  if (k < 1) throw std::invalid_argument("k must be a positive integer");
  return delta / std::sqrt(4.0 * double(k) * double(k) - 1.0);
}

bool two_pi_k_suppresses_half_pulses(int k) { return k % 2 == 0; }

FidelityTrace fidelity_trace(const GroverSpec& spec, const ChainParameters& params,
                             EvolutionMode true_mode, const RunOptions& options) {
  validate(spec);
  const PulseProgram program = compile_grover(spec, params);
  const StateVector initial = ground_state(params.n);
  const auto ideal_run = run_program(params, program, initial, EvolutionMode::ideal);
  const auto true_run = run_program(params, program, initial, true_mode, options);
  return trace_from_runs(ideal_run, true_run, tau_half_pi(spec.rabi));
}

std::vector<ScanRow> rabi_scan(int target, const std::vector<double>& grid,
                               Strategy strategy, const ChainParameters& params, int steps,
                               int threads) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw std::invalid_argument("grid values must be positive");
    if (i > 0 && grid[i] < grid[i - 1]) {
      throw std::invalid_argument("grid values must be sorted ascending");
    }
  }
  std::vector<ScanRow> rows(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    GroverSpec spec{target, steps, strategy, grid[i]};
    const FidelityTrace trace = fidelity_trace(spec, params);
    const std::complex<double> f = trace.values.back();
    rows[i] = {grid[i], f.real(), std::norm(f)};
  });
  return rows;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0 && hi > lo) || points < 1) throw std::invalid_argument("bad grid spec");
  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = lo;
    return grid;
  }
  const double step = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) grid[i] = lo * std::exp(step * i);
  return grid;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (!(hi > lo) || points < 1) throw std::invalid_argument("bad grid spec");
  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = lo;
    return grid;
  }
  for (int i = 0; i < points; ++i) grid[i] = lo + (hi - lo) * i / (points - 1);
  return grid;
}

StateVector haar_random_state(int n, std::uint64_t seed) {
  // Gaussians via Box-Muller on top of raw mt19937_64 output, so the draw is
  // reproducible across standard libraries.
  std::mt19937_64 rng(seed);
  const auto uniform = [&rng] {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;  // in (0, 1)
  };
  const std::ptrdiff_t d = std::ptrdiff_t{1} << n;
  StateVector psi(d);
  for (std::ptrdiff_t b = 0; b < d; ++b) {
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * kPi * uniform();
    psi[b] = std::complex<double>(radius * std::cos(angle), radius * std::sin(angle));
  }
  psi.normalize();
  return psi;
}

AveragedTrace random_state_trace(const PulseProgram& program, const ChainParameters& params,
                                 int samples, std::uint64_t seed, int threads) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  const auto rabi = program.uniform_rabi();
  if (!rabi) throw std::invalid_argument("program must have a uniform Rabi frequency");
  const double tau_unit = tau_half_pi(*rabi);

  const std::size_t boundary_count = program.size() + 1;
  std::vector<std::vector<double>> per_sample(samples);

  parallel_for(static_cast<std::size_t>(samples), threads, [&](std::size_t s) {
    // Mix the sample index into the master seed; splitmix64 keeps nearby
    // indices uncorrelated.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (s + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    const StateVector initial = haar_random_state(params.n, z ^ (z >> 31));

    const auto ideal_run = run_program(params, program, initial, EvolutionMode::ideal);
    const auto true_run = run_program(params, program, initial, EvolutionMode::exact);
    std::vector<double>& abs2 = per_sample[s];
    abs2.resize(boundary_count);
    for (std::size_t i = 0; i < boundary_count; ++i) {
      abs2[i] = std::norm(fidelity(ideal_run[i].state, true_run[i].state));
    }
  });

  AveragedTrace averaged;
  averaged.times.resize(boundary_count);
  averaged.mean_f_abs2.assign(boundary_count, 0.0);
  averaged.times[0] = 0.0;
  for (std::size_t i = 0; i < program.size(); ++i) {
    averaged.times[i + 1] =
        (program.start_times[i] + program.pulses[i].duration()) / tau_unit;
  }
  // Fixed accumulation order keeps the result independent of scheduling.
  for (int s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < boundary_count; ++i) {
      averaged.mean_f_abs2[i] += per_sample[s][i];
    }
  }
  for (double& value : averaged.mean_f_abs2) value /= samples;
  return averaged;
}

FitResult fit_exponential(const FidelityTrace& trace, double window_end) {
  std::vector<double> ts, ys;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const double abs2 = std::norm(trace.values[i]);
    if (trace.times[i] <= window_end && abs2 > 0.0) {
      ts.push_back(trace.times[i]);
      ys.push_back(std::log(abs2));
    }
  }
  if (ts.size() < 2) {
    throw DegenerateWindow("exponential fit needs at least two samples in the window");
  }

  double mean_t = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    mean_t += ts[i];
    mean_y += ys[i];
  }
  mean_t /= ts.size();
  mean_y /= ts.size();
  double cov = 0.0, var = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    cov += (ts[i] - mean_t) * (ys[i] - mean_y);
    var += (ts[i] - mean_t) * (ts[i] - mean_t);
  }
  if (var == 0.0) throw DegenerateWindow("all samples in the window share one time");

  const double slope = cov / var;
  FitResult fit;
  fit.rate = -slope;
  fit.intercept = std::exp(mean_y - slope * mean_t);
  fit.window_begin = ts.front();
  fit.window_end = ts.back();
  return fit;
}

SuccessProbability success_probability(const StateVector& final_state, int target) {
  if (!is_oracle_target(target)) {
    throw InvalidTarget("target " + std::to_string(target) +
                        " is not in the implementable set {0, 5, 8, 13}");
  }
  if (final_state.size() != 16) {
    throw std::invalid_argument("success probability is defined on the 4-qubit register");
  }
  const int wanted = data_register_value(static_cast<BasisIndex>(target));
  SuccessProbability result;
  for (BasisIndex b = 0; b < 16; ++b) {
    if (data_register_value(b) == wanted) result.marginal += std::norm(final_state[b]);
  }
  result.strict = std::norm(final_state[static_cast<BasisIndex>(target)]);
  return result;
}

}  // namespace spinchain
