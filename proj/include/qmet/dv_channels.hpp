#pragma once

#include <array>
#include <vector>

#include "qmet/linalg.hpp"

namespace qmet {

enum class ChannelKind { erasure, dephasing, depolarizing, custom };

/// Trace-preserving channel in Kraus form. The factory functions validate
/// completeness (sum K^dag K = I within 1e-12).
struct KrausChannel {
    int in_dim = 0;
    int out_dim = 0;
    std::vector<Mat> kraus;
    ChannelKind kind = ChannelKind::custom;
    double param = 0.0;
};

// sigma_0..sigma_3 (I, X, Y, Z).
const std::array<Mat, 4>& pauli();

// Validate completeness and wrap the operator list.
KrausChannel custom_channel(std::vector<Mat> kraus, double param = 0.0);

// erasure: qubit -> qutrit, third basis vector flags erasure.
// dephasing: (1-p) rho + p Z rho Z.
// depolarizing: (1-p) rho + p I/2.
KrausChannel make_channel(ChannelKind kind, double p);

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho);

// Extend the channel with an identity on an ancilla of dimension anc_dim
// (channel acts on the first factor).
DensityMatrix apply_extended(const KrausChannel& ch, const DensityMatrix& rho,
                             int anc_dim);

// Choi state (E (x) I)(Phi+) for a qubit-input channel; the channel output
// is the first subsystem, the intact ancilla qubit the second.
DensityMatrix choi(const KrausChannel& ch);

/// Input/output unitary pairs for the teleportation covariance property:
/// E(U_a rho U_a^dag) = V_a E(rho) V_a^dag for the four input Paulis.
struct CorrectionTable {
    std::vector<Mat> input_unitaries;   // 4 unitaries on in_dim
    std::vector<Mat> output_unitaries;  // 4 unitaries on out_dim
};

// V_a = sigma_a; valid for Pauli-diagonal qubit channels.
CorrectionTable pauli_corrections();

// V_a = sigma_a (+) 1, acting trivially on the erasure flag.
CorrectionTable erasure_corrections();

struct CovarianceCheck {
    bool covariant = false;
    double max_deviation = 0.0;
};

// Exhaustive check over the matrix-unit operator basis: reports the maximum
// trace-norm deviation of E(U_a X U_a^dag) from V_a E(X) V_a^dag.
CovarianceCheck verify_tele_covariance(const KrausChannel& ch,
                                       const CorrectionTable& table,
                                       double tol = 1e-10);

}  // namespace qmet
