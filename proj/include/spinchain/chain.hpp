#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinchain {

// Computational basis index. Bit k of the index is the state alpha_k of
// qubit k, so index 13 denotes |1101> = (alpha_3,alpha_2,alpha_1,alpha_0)
// = (1,1,0,1). alpha_k = 0 is the low-energy single-spin orientation
// (spin value +1/2).
using BasisIndex = std::uint32_t;

inline int bit(BasisIndex b, int k) { return static_cast<int>((b >> k) & 1u); }

// Twice the spin value of qubit k: +1 for alpha_k = 0, -1 for alpha_k = 1.
inline int spin_sign(BasisIndex b, int k) { return bit(b, k) ? -1 : +1; }

// Static configuration of the chain: one Larmor frequency per qubit plus
// uniform nearest-neighbour (J) and second-neighbour (J') Ising couplings,
// all as dimensionless angular frequencies.
struct ChainParameters {
  int n = 4;
  std::vector<double> larmor{100.0, 200.0, 300.0, 400.0};
  double coupling_j = 4.0;   // nearest-neighbour coupling J
  double coupling_j2 = 0.4;  // second-neighbour coupling J'
};

// Throws std::invalid_argument unless n >= 3, all Larmor frequencies are
// positive and pairwise distinct, and J > J' > 0.
void validate(const ChainParameters& params);

inline std::size_t dim(const ChainParameters& params) {
  return std::size_t{1} << params.n;
}

// Sums of +-1 over the orientations of the nearest (mu) and second (nu)
// neighbours of qubit k. Flipping qubit k shifts its transition frequency
// by mu*J + nu*J', so (mu, nu) identifies which neighbour configuration a
// drive frequency addresses.
struct NeighbourOffsets {
  int mu = 0;
  int nu = 0;
  bool operator==(const NeighbourOffsets&) const = default;
};

NeighbourOffsets neighbour_offsets(const ChainParameters& params, BasisIndex b, int k);

// True if some basis configuration of qubit k's neighbours produces (mu, nu).
bool offsets_realizable(const ChainParameters& params, int k, int mu, int nu);

// All realizable offset pairs of qubit k in ascending (mu, nu) order.
std::vector<NeighbourOffsets> realizable_offsets(const ChainParameters& params, int k);

// Drive frequency addressing configuration (mu, nu) of qubit k:
// w_k + mu*J + nu*J'. Single authoritative expression; resonance tests
// elsewhere rely on reproducing it bit-for-bit.
double drive_frequency(const ChainParameters& params, int k, int mu, int nu);

// Diagonal energy (E/hbar) of basis state b:
//   -sum_k w_k s_k - 2J sum_k s_k s_{k+1} - 2J' sum_k s_k s_{k+2},
// with s_k = (-1)^{alpha_k}/2.
double diagonal_energy(const ChainParameters& params, BasisIndex b);

// Energy cost of flipping qubit k from alpha_k=0 to alpha_k=1 with the rest
// of b fixed; identically equals drive_frequency(params, k, mu, nu) for the
// offsets of b at k.
double transition_frequency(const ChainParameters& params, BasisIndex b, int k);

class AddressabilityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Detuning summary for one addressable drive (k, mu, nu).
struct DriveSummary {
  int qubit = 0;
  NeighbourOffsets offsets;
  double frequency = 0.0;
  double min_same_qubit_detuning = 0.0;   // nearest other transition of qubit k
  double min_cross_qubit_detuning = 0.0;  // nearest transition of any other qubit
  int resonant_configuration_count = 0;   // >1 flags an intentional degeneracy
};

struct AddressabilityReport {
  std::vector<DriveSummary> drives;
  double min_same_qubit_detuning = 0.0;
  double min_cross_qubit_detuning = 0.0;
  double required_cross_qubit_margin = 0.0;  // 10 * (2 J')
};

// Enumerates every drive (k, mu, nu) and its detunings. Throws
// AddressabilityViolation if the parameters fail validate() or if any drive
// lies within 10*(2J') of a transition of another qubit, i.e. if the chain
// is not frequency-selective. mu = 0 drives on interior qubits resonate with
// two neighbour configurations at once; these are reported, not errors.
AddressabilityReport addressability_report(const ChainParameters& params);

}  // namespace spinchain
