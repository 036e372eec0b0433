#pragma once

#include <array>
#include <cstdint>

#include "qmet/dv_channels.hpp"
#include "qmet/linalg.hpp"

namespace qmet {

/// The four Bell projectors |Phi_a><Phi_a| with |Phi_a> = (I (x) sigma_a)|Phi+>,
/// together with the Pauli set generating them.
struct BellBasis {
    std::array<Mat, 4> projectors;  // rank-1, orthogonal, sum to I4
    std::array<Mat, 4> paulis;
};

BellBasis bell_basis();

// Deterministic teleportation: Bell-measure the input qubit against the
// second subsystem of the bipartite resource (ordering: output system
// first, measured qubit second), average the four corrected branches.
// Throws if the branch probabilities fail to sum to 1 within 1e-10.
DensityMatrix teleport(const DensityMatrix& input, const DensityMatrix& resource,
                       const CorrectionTable& corrections);

// Max trace distance between direct channel action and teleportation over
// the channel's Choi state, over `trials` random input states.
double simulate_and_compare(const KrausChannel& ch, const CorrectionTable& table,
                            int trials, std::uint64_t seed);

}  // namespace qmet
