#include <doctest.h>

#include <cmath>

#include "spinchain/experiments.hpp"

using namespace spinchain;

namespace {
ChainParameters defaults() { return ChainParameters{}; }
}

TEST_CASE("2pi-k Rabi frequencies") {
  SUBCASE("published operating points at delta = 2 J' = 0.8") {
    CHECK(rabi_for_2pik(0.8, 4) == doctest::Approx(0.8 / std::sqrt(63.0)).epsilon(1e-15));
    CHECK(std::abs(rabi_for_2pik(0.8, 4) - 0.1008) < 5e-4);
    CHECK(std::abs(rabi_for_2pik(0.8, 3) - 0.135) < 5e-4);
    CHECK(rabi_for_2pik(0.8, 1) == doctest::Approx(0.46188).epsilon(1e-4));
    CHECK(rabi_for_2pik(0.8, 6) > 0.066);
    CHECK(rabi_for_2pik(0.8, 6) < 0.068);
  }

  SUBCASE("monotone in k, linear in delta") {
    for (int k = 1; k < 10; ++k) {
      CHECK(rabi_for_2pik(0.8, k + 1) < rabi_for_2pik(0.8, k));
      CHECK(rabi_for_2pik(2.4, k) == doctest::Approx(3.0 * rabi_for_2pik(0.8, k)).epsilon(1e-14));
    }
  }

  SUBCASE("pi/2 pulses are suppressed only for even k") {
    CHECK(two_pi_k_suppresses_half_pulses(4));
    CHECK(two_pi_k_suppresses_half_pulses(2));
    CHECK_FALSE(two_pi_k_suppresses_half_pulses(3));
    CHECK_FALSE(two_pi_k_suppresses_half_pulses(1));
  }

  SUBCASE("domain errors") {
    CHECK_THROWS_AS(rabi_for_2pik(0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(rabi_for_2pik(0.8, 0), std::invalid_argument);
  }
}

TEST_CASE("fidelity traces") {
  const ChainParameters params = defaults();
  const GroverSpec spec{13, 1, Strategy::split, rabi_for_2pik(0.8, 4)};

  SUBCASE("ideal against ideal is identically one") {
    const FidelityTrace trace = fidelity_trace(spec, params, EvolutionMode::ideal);
    for (const auto& f : trace.values) CHECK(std::abs(f - 1.0) < 1e-12);
  }

  SUBCASE("samples sit at pulse boundaries in pi/2 units") {
    const FidelityTrace trace = fidelity_trace(spec, params);
    REQUIRE(trace.times.size() == 217);  // 70 + 146 pulses + initial sample
    CHECK(trace.times.front() == 0.0);
    CHECK(trace.times.back() == doctest::Approx(70.0 + 164.0).epsilon(1e-12));
    CHECK(std::abs(trace.values.front() - 1.0) == 0.0);
    for (std::size_t i = 0; i < trace.values.size(); ++i) {
      CHECK(std::abs(trace.values[i]) <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("scan rows reproduce independently run traces") {
  const ChainParameters params = defaults();
  const double omega = 0.2550;
  const auto rows = rabi_scan(13, {omega}, Strategy::split, params, 2);
  REQUIRE(rows.size() == 1);

  const FidelityTrace trace = fidelity_trace({13, 2, Strategy::split, omega}, params);
  CHECK(rows[0].rabi == omega);
  CHECK(rows[0].re_f == doctest::Approx(trace.values.back().real()).epsilon(1e-12));
  CHECK(rows[0].f_abs2 == doctest::Approx(std::norm(trace.values.back())).epsilon(1e-12));
  CHECK(rows[0].f_abs2 >= rows[0].re_f * rows[0].re_f - 1e-9);

  CHECK_THROWS_AS(rabi_scan(13, {0.2, 0.1}, Strategy::split, params, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(rabi_scan(13, {-0.1}, Strategy::split, params, 2), std::invalid_argument);
}

TEST_CASE("grids") {
  const auto log10 = log_grid(0.06, 0.5, 10);
  CHECK(log10.front() == doctest::Approx(0.06));
  CHECK(log10.back() == doctest::Approx(0.5));
  for (std::size_t i = 1; i < log10.size(); ++i) {
    CHECK(log10[i] / log10[i - 1] ==
          doctest::Approx(log10[1] / log10[0]).epsilon(1e-12));
  }
  const auto lin3 = linear_grid(0.0, 1.0, 3);
  CHECK(lin3[1] == doctest::Approx(0.5));
}

TEST_CASE("Haar random states") {
  const StateVector a = haar_random_state(4, 42);
  const StateVector b = haar_random_state(4, 42);
  const StateVector c = haar_random_state(4, 43);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(std::abs(a.norm() - 1.0) < 1e-12);
}

TEST_CASE("random-state averaging") {
  const ChainParameters params = defaults();
  const GroverSpec spec{13, 0, Strategy::split, rabi_for_2pik(0.8, 3)};
  const PulseProgram program = compile_grover(spec, params);

  SUBCASE("deterministic in the seed and under threading") {
    const AveragedTrace one = random_state_trace(program, params, 8, 99, 1);
    const AveragedTrace two = random_state_trace(program, params, 8, 99, 1);
    const AveragedTrace threaded = random_state_trace(program, params, 8, 99, 3);
    CHECK(one.mean_f_abs2 == two.mean_f_abs2);
    CHECK(one.mean_f_abs2 == threaded.mean_f_abs2);
    CHECK(one.times.size() == program.size() + 1);
    for (double value : one.mean_f_abs2) {
      CHECK(value >= 0.0);
      CHECK(value <= 1.0 + 1e-9);
    }
  }

  SUBCASE("sample mean converges at the statistical rate") {
    const AveragedTrace small = random_state_trace(program, params, 10, 7);
    const AveragedTrace large = random_state_trace(program, params, 40, 7);
    // Different sample counts draw independent states; the estimates should
    // agree to a few standard errors of the spread of |f|^2 in [0, 1].
    CHECK(std::abs(small.mean_f_abs2.back() - large.mean_f_abs2.back()) <
          5.0 / std::sqrt(10.0));
  }
}

TEST_CASE("exponential fits") {
  SUBCASE("recovers a synthetic rate exactly") {
    FidelityTrace trace;
    const double gamma = 0.01;
    for (int i = 0; i <= 100; ++i) {
      trace.times.push_back(i);
      trace.values.push_back(std::exp(-0.5 * gamma * i));  // |f|^2 = e^{-gamma t}
    }
    const FitResult fit = fit_exponential(trace, 100.0);
    CHECK(fit.rate == doctest::Approx(gamma).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.window_begin == 0.0);
    CHECK(fit.window_end == 100.0);
  }

  SUBCASE("constant trace fits rate zero") {
    FidelityTrace trace;
    for (int i = 0; i < 10; ++i) {
      trace.times.push_back(i);
      trace.values.push_back(1.0);
    }
    CHECK(std::abs(fit_exponential(trace, 9.0).rate) < 1e-15);
  }

  SUBCASE("the window bounds which samples enter") {
    FidelityTrace trace;
    for (int i = 0; i <= 100; ++i) {
      trace.times.push_back(i);
      // Fast decay up to t = 50, flat afterwards.
      trace.values.push_back(i <= 50 ? std::exp(-0.05 * i) : std::exp(-0.05 * 50));
    }
    const FitResult early = fit_exponential(trace, 50.0);
    CHECK(early.rate == doctest::Approx(0.1).epsilon(1e-10));
    const FitResult full = fit_exponential(trace, 100.0);
    CHECK(full.rate < early.rate);
  }

  SUBCASE("degenerate windows are rejected") {
    FidelityTrace trace;
    trace.times = {0.0, 10.0};
    trace.values = {1.0, 0.9};
    CHECK_THROWS_AS(fit_exponential(trace, 5.0), DegenerateWindow);
  }
}

TEST_CASE("success probability") {
  SUBCASE("basis states") {
    const SuccessProbability hit = success_probability(basis_state(4, 13), 13);
    CHECK(hit.marginal == 1.0);
    CHECK(hit.strict == 1.0);

    // Ancilla flipped: same data bits, so the marginal still counts it.
    const SuccessProbability ancilla = success_probability(basis_state(4, 15), 13);
    CHECK(ancilla.marginal == 1.0);
    CHECK(ancilla.strict == 0.0);

    const SuccessProbability miss = success_probability(basis_state(4, 0), 13);
    CHECK(miss.marginal == 0.0);
  }

  SUBCASE("invalid targets") {
    CHECK_THROWS_AS(success_probability(basis_state(4, 0), 7), InvalidTarget);
    CHECK_THROWS_AS(success_probability(basis_state(4, 0), 16), InvalidTarget);
  }
}
