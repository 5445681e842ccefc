#include <doctest.h>

#include <cmath>

#include "spinchain/experiments.hpp"
#include "spinchain/grover.hpp"
#include "spinchain/propagation.hpp"

using namespace spinchain;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kOmega = 0.1008;

ChainParameters defaults() { return ChainParameters{}; }

// Independent 8-dimensional Grover iteration on the data register alone:
// oracle phase flip followed by inversion about the mean.
double brute_force_success(int target_data, int steps) {
  Eigen::VectorXd state = Eigen::VectorXd::Constant(8, 1.0 / std::sqrt(8.0));
  for (int step = 0; step < steps; ++step) {
    state[target_data] = -state[target_data];
    const double mean = state.mean();
    state = 2.0 * mean * Eigen::VectorXd::Ones(8) - state;
  }
  return state[target_data] * state[target_data];
}

StateVector run_ideal(const ChainParameters& params, const PulseProgram& program) {
  return run_program(params, program, ground_state(4), EvolutionMode::ideal).back().state;
}

}  // namespace

TEST_CASE("pulse accounting matches the published counts") {
  const ChainParameters params = defaults();

  SUBCASE("per-gate counts") {
    CHECK(compile_hadamard(params, 0, Strategy::naive, kOmega).size() == 12);
    CHECK(compile_hadamard(params, 2, Strategy::naive, kOmega).size() == 18);
    CHECK(compile_hadamard(params, 3, Strategy::naive, kOmega).size() == 12);
    CHECK(compile_hadamard(params, 0, Strategy::grouped, kOmega).size() == 12);
    CHECK(compile_hadamard(params, 0, Strategy::split, kOmega).size() == 20);
    CHECK(compile_hadamard(params, 2, Strategy::split, kOmega).size() == 30);
    CHECK(compile_hadamard(params, 3, Strategy::split, kOmega).size() == 20);
    CHECK_THROWS_AS(compile_hadamard(params, 1, Strategy::naive, kOmega), NotDataQubit);
  }

  SUBCASE("superposition and full program") {
    CHECK(compile_superposition(params, Strategy::naive, kOmega).size() == 42);
    CHECK(compile_superposition(params, Strategy::grouped, kOmega).size() == 42);
    CHECK(compile_superposition(params, Strategy::split, kOmega).size() == 70);

    const PulseAccounting naive = count_pulses(params, {13, 2, Strategy::naive, kOmega});
    CHECK(naive.grover_step == 90);
    CHECK(naive.total == 222);
    CHECK(naive.duration_half_pi == doctest::Approx(398.0).epsilon(1e-12));

    const PulseAccounting split = count_pulses(params, {13, 2, Strategy::split, kOmega});
    CHECK(split.superposition == 70);
    CHECK(split.grover_step == 146);
    CHECK(split.total == 362);
    CHECK(split.duration_half_pi == doctest::Approx(398.0).epsilon(1e-12));
  }

  SUBCASE("S0 block") {
    const auto s0 = compile_s0(params, kOmega);
    REQUIRE(s0.size() == 5);
    double duration = 0.0;
    for (const PulseSpec& pulse : s0) {
      CHECK(pulse.k == kAncillaQubit);
      CHECK(pulse.angle == 2.0 * kPi);
      CHECK(pulse.phase == 0.0);
      duration += pulse.duration();
    }
    CHECK(duration == doctest::Approx(20.0 * tau_half_pi(kOmega)).epsilon(1e-12));
  }
}

TEST_CASE("oracle pulses select the target configurations") {
  const ChainParameters params = defaults();
  const auto check_oracle = [&](int alpha, int mu, int nu) {
    const PulseSpec pulse = compile_oracle(params, alpha, kOmega);
    CHECK(pulse.k == kAncillaQubit);
    CHECK(pulse.mu == mu);
    CHECK(pulse.nu == nu);
    CHECK(pulse.angle == 2.0 * kPi);
    CHECK(pulse.phase == 0.0);
  };
  check_oracle(0, 2, 1);
  check_oracle(8, 2, -1);
  check_oracle(5, -2, 1);
  check_oracle(13, -2, -1);
  CHECK_THROWS_AS(compile_oracle(params, 7, kOmega), InvalidTarget);
  CHECK_THROWS_AS(compile_oracle(params, 1, kOmega), InvalidTarget);
}

TEST_CASE("ideal action of S0 and the oracles is the enumerated diagonal") {
  const ChainParameters params = defaults();

  SUBCASE("S0: -1 everywhere except the all-zero data register") {
    const Eigen::MatrixXcd op = ideal_operator(params, compile_s0(params, kOmega));
    for (BasisIndex b = 0; b < 16; ++b) {
      const double wanted = data_register_value(b) == 0 ? 1.0 : -1.0;
      for (BasisIndex a = 0; a < 16; ++a) {
        CHECK(op(a, b) == (a == b ? std::complex<double>(wanted) : std::complex<double>(0.0)));
      }
    }
  }

  SUBCASE("S0 twice is the identity") {
    auto twice = compile_s0(params, kOmega);
    const auto again = compile_s0(params, kOmega);
    twice.insert(twice.end(), again.begin(), again.end());
    const Eigen::MatrixXcd op = ideal_operator(params, twice);
    CHECK(deviation_up_to_global_phase(op, Eigen::MatrixXcd::Identity(16, 16)) == 0.0);
  }

  SUBCASE("oracles: -1 exactly on the two states with matching data bits") {
    for (int alpha : kOracleTargets) {
      const Eigen::MatrixXcd op =
          ideal_operator(params, {compile_oracle(params, alpha, kOmega)});
      const int wanted = data_register_value(static_cast<BasisIndex>(alpha));
      int flipped = 0;
      for (BasisIndex b = 0; b < 16; ++b) {
        const bool match = data_register_value(b) == wanted;
        flipped += match;
        const double sign = match ? -1.0 : 1.0;
        for (BasisIndex a = 0; a < 16; ++a) {
          CHECK(op(a, b) == (a == b ? std::complex<double>(sign) : std::complex<double>(0.0)));
        }
      }
      CHECK(flipped == 2);
    }
  }
}

TEST_CASE("compiled Hadamards equal the textbook gate up to a global phase") {
  const ChainParameters params = defaults();
  Eigen::Matrix2cd hadamard;
  hadamard << 1.0, 1.0, 1.0, -1.0;
  hadamard /= std::sqrt(2.0);

  for (const Strategy strategy : {Strategy::naive, Strategy::grouped, Strategy::split}) {
    for (int k : kDataQubits) {
      const Eigen::MatrixXcd compiled =
          ideal_operator(params, compile_hadamard(params, k, strategy, kOmega));
      const Eigen::MatrixXcd wanted = single_qubit_operator_on(4, k, hadamard);
      CHECK(deviation_up_to_global_phase(compiled, wanted) < 1e-12);
    }
  }

  // The three strategies are the same operator in ideal mode.
  const Eigen::MatrixXcd a =
      ideal_operator(params, compile_superposition(params, Strategy::naive, kOmega));
  const Eigen::MatrixXcd b =
      ideal_operator(params, compile_superposition(params, Strategy::grouped, kOmega));
  const Eigen::MatrixXcd c =
      ideal_operator(params, compile_superposition(params, Strategy::split, kOmega));
  CHECK(deviation_up_to_global_phase(a, b) < 1e-12);
  CHECK(deviation_up_to_global_phase(a, c) < 1e-12);
}

TEST_CASE("ideal Grover search concentrates on the target") {
  const ChainParameters params = defaults();

  SUBCASE("success after 0, 1, 2 steps matches the 8-state brute force") {
    CHECK(brute_force_success(7, 2) == doctest::Approx(121.0 / 128.0).epsilon(1e-12));
    CHECK(brute_force_success(7, 1) == doctest::Approx(25.0 / 32.0).epsilon(1e-12));

    for (int alpha : kOracleTargets) {
      const int data = data_register_value(static_cast<BasisIndex>(alpha));
      for (int steps : {0, 1, 2}) {
        const PulseProgram program =
            compile_grover({alpha, steps, Strategy::split, kOmega}, params);
        const SuccessProbability success =
            success_probability(run_ideal(params, program), alpha);
        CHECK(success.marginal ==
              doctest::Approx(brute_force_success(data, steps)).epsilon(1e-9));
      }
    }
  }

  SUBCASE("the ancilla stays in |0> and the strict probability matches") {
    const PulseProgram program = compile_grover({13, 2, Strategy::split, kOmega}, params);
    const StateVector final_state = run_ideal(params, program);
    for (BasisIndex b = 0; b < 16; ++b) {
      if (bit(b, kAncillaQubit) == 1) CHECK(std::abs(final_state[b]) == 0.0);
    }
    const SuccessProbability success = success_probability(final_state, 13);
    CHECK(success.strict == doctest::Approx(success.marginal).epsilon(1e-12));
  }

  SUBCASE("strategies agree in ideal mode") {
    for (int alpha : {0, 5, 8}) {
      const StateVector split_state = run_ideal(
          params, compile_grover({alpha, 2, Strategy::split, kOmega}, params));
      const StateVector naive_state = run_ideal(
          params, compile_grover({alpha, 2, Strategy::naive, kOmega}, params));
      CHECK(std::abs(std::abs(fidelity(split_state, naive_state)) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("program structure: segments and duration") {
  const ChainParameters params = defaults();
  const GroverSpec spec{13, 2, Strategy::split, kOmega};
  const PulseProgram program = compile_grover(spec, params);

  REQUIRE(program.segments.size() == 9);
  CHECK(program.segments[0].label == "prep");
  CHECK(program.segments[1].label == "step1.oracle");
  CHECK(program.segments[2].label == "step1.H1");
  CHECK(program.segments[3].label == "step1.S0");
  CHECK(program.segments[4].label == "step1.H2");
  CHECK(program.segments[5].label == "step2.oracle");

  // Segments tile the program contiguously.
  std::size_t cursor = 0;
  for (const Segment& segment : program.segments) {
    CHECK(segment.begin == cursor);
    cursor = segment.end;
  }
  CHECK(cursor == program.size());

  CHECK(duration_in_half_pi_units(program) == doctest::Approx(398.0).epsilon(1e-12));

  // The compiled program round-trips through the text format bit-exactly.
  const std::string text = serialize_program(program, params);
  const ParsedProgram parsed = parse_program(text);
  REQUIRE(parsed.program.size() == program.size());
  CHECK(parsed.program.total_duration == program.total_duration);
  for (std::size_t i = 0; i < program.size(); ++i) {
    CHECK(parsed.program.start_times[i] == program.start_times[i]);
    CHECK(parsed.program.pulses[i].phase == program.pulses[i].phase);
    CHECK(parsed.program.pulses[i].angle == program.pulses[i].angle);
  }
  CHECK(serialize_program(parsed.program, parsed.params) == text);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(validate(GroverSpec{7, 2, Strategy::split, kOmega}), InvalidTarget);
  CHECK_THROWS_AS(validate(GroverSpec{13, -1, Strategy::split, kOmega}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(GroverSpec{13, 2, Strategy::split, 0.0}), std::invalid_argument);
  CHECK_NOTHROW(validate(GroverSpec{13, 0, Strategy::split, kOmega}));
}
