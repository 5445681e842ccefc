#pragma once

#include <iosfwd>

#include "spinchain/config.hpp"

namespace spinchain {

// Command entry points behind the CLI. Each returns a process exit code:
// 0 success, 1 usage or I/O error, 2 physics validation failure. Output
// files are written whole, after the run succeeds, so failures leave no
// partial CSV behind.

// Physics self-checks: addressability, ideal gate identities, unitarity,
// exact-vs-RK4 agreement on one gate. Prints one pass/fail row per check.
int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err);

// Pulse and duration accounting for the configured strategy and step count.
int cmd_counts(const RunConfig& config, std::ostream& out, std::ostream& err);

// Fidelity trace CSV (t_over_tau_pi2, re_f, im_f, f_abs2), plus an optional
// JSON summary with final fidelity, success probabilities, the initial-decay
// exponential fit, and per-pulse loss.
int cmd_trace(const RunConfig& config, std::ostream& out, std::ostream& err);

// Rabi-frequency sweep CSV (rabi, re_f, f_abs2).
int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& err);

// Haar-random initial state average CSV (t_over_tau_pi2, mean_f_abs2).
int cmd_random_avg(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace spinchain
