#pragma once

#include <Eigen/Dense>
#include <utility>

#include "qmet/linalg.hpp"

namespace qmet {

/// Truncated number-basis representation of a bosonic state. `data` is a
/// Hermitian PSD matrix of dimension cutoff (one mode) or cutoff^2 (two
/// modes, row-major mode order) whose trace falls short of 1 by at most
/// `tail`, the estimated truncated probability mass.
struct FockState {
    int cutoff = 0;
    int modes = 1;
    Mat data;
    double tail = 0.0;
};

inline constexpr int kDefaultCutoff = 40;
inline constexpr double kTailLimit = 1e-4;

// Constructors throw when the truncated mass at the given cutoff exceeds
// kTailLimit; raise the cutoff in that case.
FockState fock_coherent(Cplx alpha, int cutoff = kDefaultCutoff);
FockState fock_thermal(double nbar, int cutoff = kDefaultCutoff);
FockState fock_tmsv(double r, int cutoff = kDefaultCutoff);
// Two-mode squeezing applied to a product of thermal states (Williamson
// form of the standard-form two-mode Gaussian states).
FockState fock_two_mode_squeezed_thermal(double r, double n1, double n2,
                                         int cutoff = kDefaultCutoff);

// Annihilation operator on the truncated basis.
Mat lowering_op(int cutoff);

// exp(alpha a^dag - conj(alpha) a), exp(-i phi n), exp(r/2 (a^2 - a^dag^2)),
// exp(r (a^dag b^dag - a b)): unitaries on the truncated space, accurate for
// states supported well inside the cutoff.
Mat displacement_op(Cplx alpha, int cutoff);
Mat rotation_op(double phi, int cutoff);
Mat squeeze_op(double r, int cutoff);
Mat two_mode_squeeze_op(double r, int cutoff);

// Conjugate the state by a unitary on its own space (tail unchanged; the
// truncated-generator unitaries above are exactly unitary on the kept basis).
FockState fock_conjugate(const Mat& u, const FockState& s);

// Beam splitter restricted to the total-photon-number-n sector, in the
// basis |k>_sys |n-k>_env indexed by k = 0..n. Orthogonal; cos^2(theta)
// = eta is the transmissivity of the system arm.
Eigen::MatrixXd beam_splitter_block(int n, double eta);

// Mix the single-mode input with a thermal environment on a beam splitter
// of transmissivity eta and trace the environment out. Exact on every kept
// total-photon sector; throws when input tail + environment tail + cropped
// output mass exceeds tail_budget.
FockState fock_thermal_loss(double eta, double nbar, const FockState& rho,
                            double tail_budget = kTailLimit);

// Uhlmann fidelity of the truncated matrices, accurate to O(tail). The
// computation restricts to the joint numerical support (diagonal weight
// above 1e-13) before diagonalizing.
double oracle_fidelity(const FockState& a, const FockState& b);

// First and second quadrature moments of a truncated state, for
// cross-checking against covariance-matrix constructions.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> fock_moments(const FockState& s);

}  // namespace qmet
