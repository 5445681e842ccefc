#include "spinchain/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spinchain {

void validate(const ChainParameters& params) {
  if (params.n < 3) {
    throw std::invalid_argument("chain needs n >= 3 so second-neighbour couplings exist");
  }
  if (static_cast<int>(params.larmor.size()) != params.n) {
    throw std::invalid_argument("expected one Larmor frequency per qubit");
  }
  for (int k = 0; k < params.n; ++k) {
    if (!(params.larmor[k] > 0.0)) {
      throw std::invalid_argument("Larmor frequency w" + std::to_string(k) +
                                  " must be strictly positive");
    }
    for (int l = 0; l < k; ++l) {
      if (params.larmor[k] == params.larmor[l]) {
        throw std::invalid_argument("duplicate Larmor frequencies make qubits " +
                                    std::to_string(l) + " and " + std::to_string(k) +
                                    " indistinguishable");
      }
    }
  }
  if (!(params.coupling_j2 > 0.0)) {
    throw std::invalid_argument(
        "J2 must be strictly positive: without second-neighbour splitting, distinct "
        "neighbour configurations share one transition frequency");
  }
  if (!(params.coupling_j > params.coupling_j2)) {
    throw std::invalid_argument("couplings must satisfy J > J2 > 0");
  }
}

namespace {

void check_basis_index(const ChainParameters& params, BasisIndex b) {
  if (b >= dim(params)) {
    throw std::out_of_range("basis index " + std::to_string(b) + " out of range for n = " +
                            std::to_string(params.n));
  }
}

void check_qubit(const ChainParameters& params, int k) {
  if (k < 0 || k >= params.n) {
    throw std::out_of_range("qubit index " + std::to_string(k) + " out of range");
  }
}

int neighbour_count(const ChainParameters& params, int k, int separation) {
  int count = 0;
  if (k - separation >= 0) ++count;
  if (k + separation < params.n) ++count;
  return count;
}

}  // namespace

NeighbourOffsets neighbour_offsets(const ChainParameters& params, BasisIndex b, int k) {
  check_basis_index(params, b);
  check_qubit(params, k);
  NeighbourOffsets offsets;
  for (int j : {k - 1, k + 1}) {
    if (j >= 0 && j < params.n) offsets.mu += spin_sign(b, j);
  }
  for (int j : {k - 2, k + 2}) {
    if (j >= 0 && j < params.n) offsets.nu += spin_sign(b, j);
  }
  return offsets;
}

bool offsets_realizable(const ChainParameters& params, int k, int mu, int nu) {
  check_qubit(params, k);
  const int m1 = neighbour_count(params, k, 1);
  const int m2 = neighbour_count(params, k, 2);
  // A sum of m terms of +-1 ranges over {-m, -m+2, ..., m}.
  return std::abs(mu) <= m1 && (mu & 1) == (m1 & 1) && std::abs(nu) <= m2 &&
         (nu & 1) == (m2 & 1);
}

std::vector<NeighbourOffsets> realizable_offsets(const ChainParameters& params, int k) {
  check_qubit(params, k);
  const int m1 = neighbour_count(params, k, 1);
  const int m2 = neighbour_count(params, k, 2);
  std::vector<NeighbourOffsets> result;
  for (int mu = -m1; mu <= m1; mu += 2) {
    for (int nu = -m2; nu <= m2; nu += 2) {
      result.push_back({mu, nu});
    }
  }
  return result;
}

double drive_frequency(const ChainParameters& params, int k, int mu, int nu) {
  check_qubit(params, k);
  return params.larmor[k] + mu * params.coupling_j + nu * params.coupling_j2;
}

double diagonal_energy(const ChainParameters& params, BasisIndex b) {
  check_basis_index(params, b);
  double energy = 0.0;
  for (int k = 0; k < params.n; ++k) {
    energy -= 0.5 * params.larmor[k] * spin_sign(b, k);
  }
  for (int k = 0; k + 1 < params.n; ++k) {
    energy -= 0.5 * params.coupling_j * spin_sign(b, k) * spin_sign(b, k + 1);
  }
  for (int k = 0; k + 2 < params.n; ++k) {
    energy -= 0.5 * params.coupling_j2 * spin_sign(b, k) * spin_sign(b, k + 2);
  }
  return energy;
}

double transition_frequency(const ChainParameters& params, BasisIndex b, int k) {
  check_basis_index(params, b);
  check_qubit(params, k);
  const BasisIndex mask = BasisIndex{1} << k;
  return diagonal_energy(params, b | mask) - diagonal_energy(params, b & ~mask);
}

AddressabilityReport addressability_report(const ChainParameters& params) {
  try {
    validate(params);
  } catch (const std::invalid_argument& e) {
    throw AddressabilityViolation(e.what());
  }

  AddressabilityReport report;
  report.required_cross_qubit_margin = 10.0 * (2.0 * params.coupling_j2);
  report.min_same_qubit_detuning = std::numeric_limits<double>::infinity();
  report.min_cross_qubit_detuning = std::numeric_limits<double>::infinity();

  for (int k = 0; k < params.n; ++k) {
    for (const NeighbourOffsets& off : realizable_offsets(params, k)) {
      DriveSummary drive;
      drive.qubit = k;
      drive.offsets = off;
      drive.frequency = drive_frequency(params, k, off.mu, off.nu);
      drive.min_same_qubit_detuning = std::numeric_limits<double>::infinity();
      drive.min_cross_qubit_detuning = std::numeric_limits<double>::infinity();

      for (int l = 0; l < params.n; ++l) {
        for (const NeighbourOffsets& other : realizable_offsets(params, l)) {
          const double gap =
              std::abs(drive.frequency - drive_frequency(params, l, other.mu, other.nu));
          if (l == k) {
            if (other == off) continue;
            drive.min_same_qubit_detuning = std::min(drive.min_same_qubit_detuning, gap);
          } else {
            drive.min_cross_qubit_detuning = std::min(drive.min_cross_qubit_detuning, gap);
          }
        }
      }

      // Number of neighbour configurations producing these offsets: choosing
      // which of the m neighbours point down. Spectator qubits do not shift
      // the frequency and are not counted.
      const auto ways = [](int m, int sum) {
        const int down = (m - sum) / 2;
        return (down == 0 || down == m) ? 1 : m;  // m <= 2 here
      };
      drive.resonant_configuration_count =
          ways(neighbour_count(params, k, 1), off.mu) * ways(neighbour_count(params, k, 2), off.nu);

      report.min_same_qubit_detuning =
          std::min(report.min_same_qubit_detuning, drive.min_same_qubit_detuning);
      report.min_cross_qubit_detuning =
          std::min(report.min_cross_qubit_detuning, drive.min_cross_qubit_detuning);
      report.drives.push_back(drive);
    }
  }

  if (!(report.min_cross_qubit_detuning > report.required_cross_qubit_margin)) {
    throw AddressabilityViolation(
        "cross-qubit transition gap " + std::to_string(report.min_cross_qubit_detuning) +
        " does not exceed the required margin " +
        std::to_string(report.required_cross_qubit_margin) +
        "; drives would excite other qubits");
  }
  return report;
}

}  // namespace spinchain
