#include "spinchain/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "spinchain/experiments.hpp"

namespace spinchain {

namespace {

std::string fmt(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << content) || !out.flush()) {
    throw std::runtime_error("cannot write output file '" + path + "'");
  }
}

// Validation failures exit with 2, anything else unexpected with 1.
int run_guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const AddressabilityViolation& e) {
    err << "validation failure: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "validation failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

GroverSpec grover_spec(const RunConfig& config) {
  return {config.alpha, config.steps, config.strategy, resolve_rabi(config)};
}

// Commands validate the physics before touching any output path.
void validate_run(const RunConfig& config) {
  addressability_report(config.chain);
  validate(grover_spec(config));
}

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

void print_checks(const std::vector<Check>& checks, std::ostream& out) {
  for (const Check& check : checks) {
    out << (check.passed ? "[PASS] " : "[FAIL] ") << check.name;
    if (!check.detail.empty()) out << " (" << check.detail << ")";
    out << "\n";
  }
}

}  // namespace

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    std::vector<Check> checks;

    try {
      const AddressabilityReport report = addressability_report(config.chain);
      std::ostringstream detail;
      detail << "min same-qubit detuning " << report.min_same_qubit_detuning
             << ", min cross-qubit gap " << report.min_cross_qubit_detuning << ", margin "
             << report.required_cross_qubit_margin;
      checks.push_back({"addressability", true, detail.str()});
    } catch (const AddressabilityViolation& e) {
      checks.push_back({"addressability", false, e.what()});
      print_checks(checks, out);
      return 2;
    }

    const double rabi = resolve_rabi(config);

    // Compiled Hadamards against the textbook gate, up to one global phase.
    Eigen::Matrix2cd hadamard;
    hadamard << 1.0, 1.0, 1.0, -1.0;
    hadamard /= std::sqrt(2.0);
    for (int k : kDataQubits) {
      const auto gate = compile_hadamard(config.chain, k, config.strategy, rabi);
      const double dev =
          deviation_up_to_global_phase(ideal_operator(config.chain, gate),
                                       single_qubit_operator_on(config.chain.n, k, hadamard));
      checks.push_back({"Hadamard identity, qubit " + std::to_string(k), dev < 1e-12,
                        "deviation " + std::to_string(dev)});
    }

    // S0: -1 on every basis state except data value 0.
    {
      const auto op = ideal_operator(config.chain, compile_s0(config.chain, rabi));
      double dev = 0.0;
      for (BasisIndex b = 0; b < dim(config.chain); ++b) {
        const double wanted = data_register_value(b) == 0 ? 1.0 : -1.0;
        for (BasisIndex a = 0; a < dim(config.chain); ++a) {
          const std::complex<double> expect = a == b ? wanted : 0.0;
          dev = std::max(dev, std::abs(op(a, b) - expect));
        }
      }
      checks.push_back({"S0 diagonal action", dev == 0.0, "deviation " + std::to_string(dev)});
    }

    // Oracles: -1 exactly on the two states whose data bits match.
    {
      double dev = 0.0;
      for (int alpha : kOracleTargets) {
        const auto op = ideal_operator(
            config.chain, {compile_oracle(config.chain, alpha, rabi)});
        const int wanted = data_register_value(static_cast<BasisIndex>(alpha));
        for (BasisIndex b = 0; b < dim(config.chain); ++b) {
          const double sign = data_register_value(b) == wanted ? -1.0 : 1.0;
          for (BasisIndex a = 0; a < dim(config.chain); ++a) {
            const std::complex<double> expect = a == b ? sign : 0.0;
            dev = std::max(dev, std::abs(op(a, b) - expect));
          }
        }
      }
      checks.push_back({"oracle diagonal action", dev == 0.0, "deviation " + std::to_string(dev)});
    }

    // Norm drift across the full program in both evolution modes.
    {
      const PulseProgram program = compile_grover(grover_spec(config), config.chain);
      const StateVector initial = ground_state(config.chain.n);
      double drift = 0.0;
      for (EvolutionMode mode : {EvolutionMode::ideal, EvolutionMode::exact}) {
        const auto run = run_program(config.chain, program, initial, mode);
        drift = std::max(drift, std::abs(run.back().state.norm() - 1.0));
      }
      checks.push_back({"unitarity over " + std::to_string(program.size()) + " pulses",
                        drift < 1e-9, "norm drift " + std::to_string(drift)});
    }

    // Exact vs RK4 on one compiled Hadamard gate.
    {
      const auto gate = compile_hadamard(config.chain, 0, config.strategy, rabi);
      PulseProgram program;
      program.append_segment("H0", gate);
      const StateVector initial = ground_state(config.chain.n);
      const auto exact_run = run_program(config.chain, program, initial, EvolutionMode::exact);
      RunOptions options;
      options.rk4_points_per_period = 40.0;
      const auto rk4_run =
          run_program(config.chain, program, initial, EvolutionMode::rk4, options);
      const double distance = (exact_run.back().state - rk4_run.back().state).norm();
      std::ostringstream detail;
      detail << "state distance " << distance;
      checks.push_back({"exact vs RK4 on one Hadamard gate", distance < 1e-6, detail.str()});
    }

    print_checks(checks, out);
    for (const Check& check : checks) {
      if (!check.passed) return 2;
    }
    return 0;
  });
}

int cmd_counts(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    validate_run(config);
    const PulseAccounting counts = count_pulses(config.chain, grover_spec(config));
    out << "strategy             " << to_string(counts.strategy) << "\n"
        << "steps                " << counts.steps << "\n"
        << "H0 pulses            " << counts.hadamard0 << "\n"
        << "H2 pulses            " << counts.hadamard2 << "\n"
        << "H3 pulses            " << counts.hadamard3 << "\n"
        << "H^x3 pulses          " << counts.superposition << "\n"
        << "S0 pulses            " << counts.s0 << "\n"
        << "oracle pulses        " << counts.oracle << "\n"
        << "Grover step pulses   " << counts.grover_step << "\n"
        << "total pulses         " << counts.total << "\n"
        << "duration (tau_pi/2)  " << counts.duration_half_pi << "\n";
    return 0;
  });
}

int cmd_trace(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    validate_run(config);
    const GroverSpec spec = grover_spec(config);
    const PulseProgram program = compile_grover(spec, config.chain);
    const StateVector initial = ground_state(config.chain.n);

    const auto ideal_run = run_program(config.chain, program, initial, EvolutionMode::ideal);
    const auto true_run = run_program(config.chain, program, initial, config.mode);

    const double tau_unit = tau_half_pi(spec.rabi);
    FidelityTrace trace;
    std::ostringstream csv;
    csv << "t_over_tau_pi2,re_f,im_f,f_abs2\n";
    for (std::size_t i = 0; i < ideal_run.size(); ++i) {
      const std::complex<double> f = fidelity(ideal_run[i].state, true_run[i].state);
      const double t = ideal_run[i].time / tau_unit;
      trace.times.push_back(t);
      trace.values.push_back(f);
      csv << fmt(t) << "," << fmt(f.real()) << "," << fmt(f.imag()) << ","
          << fmt(std::norm(f)) << "\n";
    }

    const std::string path = config.out.empty() ? "trace.csv" : config.out;
    write_text_file(path, csv.str());

    const std::complex<double> final_f = trace.values.back();
    const double final_abs2 = std::norm(final_f);
    const SuccessProbability success = success_probability(true_run.back().state, spec.target);
    const SuccessProbability ideal_success =
        success_probability(ideal_run.back().state, spec.target);
    const double pi_pulse_count = trace.times.back() / 2.0;  // duration in pi-pulse units

    out << "wrote " << path << " (" << trace.times.size() << " samples)\n";
    out << "final |f|^2 = " << final_abs2 << ", Re f = " << final_f.real() << "\n";
    out << "success probability (data register) = " << success.marginal << "\n";

    if (!config.summary.empty()) {
      nlohmann::json summary;
      summary["alpha"] = spec.target;
      summary["steps"] = spec.steps;
      summary["strategy"] = to_string(spec.strategy);
      summary["mode"] = to_string(config.mode);
      summary["rabi"] = spec.rabi;
      summary["pulse_count"] = program.size();
      summary["duration_tau_pi2"] = trace.times.back();
      summary["final"] = {{"re_f", final_f.real()},
                          {"im_f", final_f.imag()},
                          {"f_abs2", final_abs2}};
      summary["success_probability"] = {{"marginal", success.marginal},
                                        {"strict", success.strict}};
      summary["ideal_success_probability"] = {{"marginal", ideal_success.marginal},
                                              {"strict", ideal_success.strict}};
      summary["per_pulse_loss"] = (1.0 - final_abs2) / static_cast<double>(program.size());
      summary["per_pi_pulse_loss"] = (1.0 - final_abs2) / pi_pulse_count;
      try {
        const FitResult fit = fit_exponential(trace, 70.0);
        summary["fit"] = {{"rate", fit.rate},
                          {"intercept", fit.intercept},
                          {"window_begin", fit.window_begin},
                          {"window_end", fit.window_end}};
      } catch (const DegenerateWindow&) {
        summary["fit"] = nullptr;
      }
      write_text_file(config.summary, summary.dump(2) + "\n");
      out << "wrote " << config.summary << "\n";
    }
    return 0;
  });
}

int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    validate_run(config);
    std::vector<double> grid;
    if (config.grid.points == 1 && config.rabi) {
      grid.push_back(*config.rabi);
    } else if (config.grid.logarithmic) {
      grid = log_grid(config.grid.lo, config.grid.hi, config.grid.points);
    } else {
      grid = linear_grid(config.grid.lo, config.grid.hi, config.grid.points);
    }

    const auto rows = rabi_scan(config.alpha, grid, config.strategy, config.chain,
                                config.steps, config.threads);

    std::ostringstream csv;
    csv << "rabi,re_f,f_abs2\n";
    for (const ScanRow& row : rows) {
      csv << fmt(row.rabi) << "," << fmt(row.re_f) << "," << fmt(row.f_abs2) << "\n";
    }
    const std::string path = config.out.empty() ? "scan.csv" : config.out;
    write_text_file(path, csv.str());
    out << "wrote " << path << " (" << rows.size() << " rows)\n";
    return 0;
  });
}

int cmd_random_avg(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    validate_run(config);
    const GroverSpec spec = grover_spec(config);
    const PulseProgram program = compile_grover(spec, config.chain);
    const AveragedTrace averaged = random_state_trace(program, config.chain, config.samples,
                                                      config.seed, config.threads);

    std::ostringstream csv;
    csv << "t_over_tau_pi2,mean_f_abs2\n";
    for (std::size_t i = 0; i < averaged.times.size(); ++i) {
      csv << fmt(averaged.times[i]) << "," << fmt(averaged.mean_f_abs2[i]) << "\n";
    }
    const std::string path = config.out.empty() ? "random_avg.csv" : config.out;
    write_text_file(path, csv.str());
    out << "wrote " << path << " (" << averaged.times.size() << " samples, "
        << config.samples << " states)\n";
    out << "final mean |f|^2 = " << averaged.mean_f_abs2.back() << "\n";
    return 0;
  });
}

}  // namespace spinchain
