#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spintrend/spin_ring.hpp"

namespace spintrend {

// Full 2^M-dimensional model of the ring, for cross-checking the
// single-excitation reduction at small M. Couplings enter as
// (J/2)(XX + YY + eps ZZ) and biases couple to the excitation number
// operator (I + Z)/2, the convention under which the projected block of the
// XX ring equals the reduced M x M matrix exactly. For eps = 1 the
// projection picks up an extra diagonal (sum J)/2 - (J_{n-1,n} + J_{n,n+1});
// with uniform couplings that is a multiple of the identity, leaving all
// transfer probabilities unchanged.
struct FullSpaceModel {
    Eigen::MatrixXd hamiltonian;        // 2^M x 2^M, real symmetric
    std::vector<int> excitation_basis;  // full-space index of |site m up>, m = 1..M
    Eigen::MatrixXd projector;          // 2^M x M, columns e_{excitation_basis[m]}

    Eigen::MatrixXd projected_block() const;  // P^T H P
};

// M <= 8 only (memory guard).
FullSpaceModel full_hamiltonian_oracle(const SpinRingSpec& ring, const BiasController& ctrl);

// Number of excited spins of each full-space basis state; the diagonal of
// the counting operator (1/2) sum (I + Z_m).
std::vector<int> excitation_counts(int spins);

}  // namespace spintrend
