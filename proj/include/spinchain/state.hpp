#pragma once

#include <Eigen/Dense>
#include <complex>

#include "spinchain/chain.hpp"

namespace spinchain {

// 2^n complex amplitudes in the computational basis, interaction picture.
using StateVector = Eigen::VectorXcd;

inline StateVector basis_state(int n, BasisIndex b) {
  StateVector psi = StateVector::Zero(std::ptrdiff_t{1} << n);
  psi[b] = 1.0;
  return psi;
}

inline StateVector ground_state(int n) { return basis_state(n, 0); }

inline bool is_normalized(const StateVector& psi, double tol = 1e-9) {
  return std::abs(psi.squaredNorm() - 1.0) <= tol;
}

}  // namespace spinchain
