#include <doctest.h>

#include <cmath>
#include <set>

#include "spinchain/chain.hpp"

using namespace spinchain;

namespace {

ChainParameters defaults() { return ChainParameters{}; }

// Ising part of the diagonal energy: the same sum with the single-spin terms
// removed.
double ising_energy(const ChainParameters& params, BasisIndex b) {
  ChainParameters no_field = params;
  for (double& w : no_field.larmor) w = 0.0;
  return diagonal_energy(no_field, b);
}

}  // namespace

TEST_CASE("diagonal energies of hand-evaluated states") {
  const ChainParameters params = defaults();
  CHECK(diagonal_energy(params, 0b0000) == doctest::Approx(-506.4).epsilon(1e-12));
  CHECK(diagonal_energy(params, 0b1111) == doctest::Approx(493.6).epsilon(1e-12));
  CHECK(diagonal_energy(params, 0b0001) == doctest::Approx(-402.0).epsilon(1e-12));
  CHECK_THROWS_AS(diagonal_energy(params, 16), std::out_of_range);
}

TEST_CASE("neighbour offsets of reference configurations") {
  const ChainParameters params = defaults();
  CHECK(neighbour_offsets(params, 0b0000, 1) == NeighbourOffsets{2, 1});
  CHECK(neighbour_offsets(params, 0b0101, 1) == NeighbourOffsets{-2, 1});
  CHECK(neighbour_offsets(params, 0b1111, 3) == NeighbourOffsets{-1, -1});
}

TEST_CASE("offset ranges: edge and interior qubits") {
  const ChainParameters params = defaults();

  const auto mu_values = [&](int k) {
    std::set<int> mus;
    for (const auto& off : realizable_offsets(params, k)) mus.insert(off.mu);
    return mus;
  };
  CHECK(mu_values(0) == std::set<int>{-1, 1});
  CHECK(mu_values(3) == std::set<int>{-1, 1});
  CHECK(mu_values(1) == std::set<int>{-2, 0, 2});
  CHECK(mu_values(2) == std::set<int>{-2, 0, 2});

  // Every qubit of the four-qubit chain has exactly one second neighbour.
  for (int k = 0; k < 4; ++k) {
    std::set<int> nus;
    for (const auto& off : realizable_offsets(params, k)) nus.insert(off.nu);
    CHECK(nus == std::set<int>{-1, 1});
  }

  // Exhaustively, neighbour_offsets always lands in the realizable set.
  for (BasisIndex b = 0; b < dim(params); ++b) {
    for (int k = 0; k < params.n; ++k) {
      const NeighbourOffsets off = neighbour_offsets(params, b, k);
      CHECK(offsets_realizable(params, k, off.mu, off.nu));
    }
  }
  CHECK_FALSE(offsets_realizable(params, 0, 2, 1));
  CHECK_FALSE(offsets_realizable(params, 1, 1, 1));
}

TEST_CASE("transition frequencies: hand values and the offset identity") {
  const ChainParameters params = defaults();
  CHECK(transition_frequency(params, 0b0000, 0) == doctest::Approx(104.4).epsilon(1e-12));
  CHECK(transition_frequency(params, 0b0000, 1) == doctest::Approx(208.4).epsilon(1e-12));

  // w_trans = w_k + mu J + nu J' for every configuration and qubit.
  for (BasisIndex b = 0; b < dim(params); ++b) {
    for (int k = 0; k < params.n; ++k) {
      const NeighbourOffsets off = neighbour_offsets(params, b, k);
      const double expected = drive_frequency(params, k, off.mu, off.nu);
      CHECK(transition_frequency(params, b, k) == doctest::Approx(expected).epsilon(1e-13));
    }
  }
}

TEST_CASE("global spin flip cancels the single-spin terms") {
  const ChainParameters params = defaults();
  const BasisIndex all = static_cast<BasisIndex>(dim(params) - 1);
  for (BasisIndex b = 0; b < dim(params); ++b) {
    const double sum = diagonal_energy(params, b) + diagonal_energy(params, b ^ all);
    CHECK(sum == doctest::Approx(2.0 * ising_energy(params, b)).epsilon(1e-12));
  }
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(validate(defaults()));

  ChainParameters short_chain = defaults();
  short_chain.n = 2;
  short_chain.larmor = {100.0, 200.0};
  CHECK_THROWS_AS(validate(short_chain), std::invalid_argument);

  ChainParameters duplicate = defaults();
  duplicate.larmor[2] = duplicate.larmor[1];
  CHECK_THROWS_AS(validate(duplicate), std::invalid_argument);

  ChainParameters no_j2 = defaults();
  no_j2.coupling_j2 = 0.0;
  CHECK_THROWS_AS(validate(no_j2), std::invalid_argument);

  ChainParameters inverted = defaults();
  inverted.coupling_j = 0.1;  // weaker than J2
  CHECK_THROWS_AS(validate(inverted), std::invalid_argument);
}

TEST_CASE("addressability report at default parameters") {
  const AddressabilityReport report = addressability_report(defaults());

  // Adjacent nu configurations of one qubit differ by 2 J' = 0.8.
  CHECK(report.min_same_qubit_detuning == doctest::Approx(0.8).epsilon(1e-12));
  for (const DriveSummary& drive : report.drives) {
    CHECK(drive.min_same_qubit_detuning == doctest::Approx(0.8).epsilon(1e-12));
  }

  // Band edge of qubit 0 against band edge of qubit 1.
  bool found = false;
  for (const DriveSummary& drive : report.drives) {
    if (drive.qubit == 0 && drive.offsets == NeighbourOffsets{1, 1}) {
      found = true;
      CHECK(drive.min_cross_qubit_detuning == doctest::Approx(87.2).epsilon(1e-12));
    }
  }
  CHECK(found);

  // mu = 0 drives on interior qubits hit two configurations at once.
  for (const DriveSummary& drive : report.drives) {
    const bool interior = drive.qubit == 1 || drive.qubit == 2;
    if (interior && drive.offsets.mu == 0) {
      CHECK(drive.resonant_configuration_count == 2);
    } else {
      CHECK(drive.resonant_configuration_count == 1);
    }
  }

  CHECK(report.required_cross_qubit_margin == doctest::Approx(8.0));
  CHECK(report.min_cross_qubit_detuning > report.required_cross_qubit_margin);
}

TEST_CASE("addressability violations") {
  ChainParameters no_j2 = defaults();
  no_j2.coupling_j2 = 0.0;
  CHECK_THROWS_AS(addressability_report(no_j2), AddressabilityViolation);

  // Overlapping transition bands of qubits 0 and 1.
  ChainParameters crowded = defaults();
  crowded.larmor = {100.0, 109.0, 300.0, 400.0};
  CHECK_THROWS_AS(addressability_report(crowded), AddressabilityViolation);
}
