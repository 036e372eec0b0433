#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "qmet/qfi_result.hpp"

namespace qmet {

// Conventions: hbar = 1, vacuum quadrature variance 1/2, quadrature order
// (q1, p1, q2, p2, ...), symplectic form Omega = direct sum of [[0,1],[-1,0]].

Eigen::MatrixXd symplectic_form(int modes);

/// Gaussian state of `modes() = mean.size()/2` bosonic modes, described by
/// its first and second statistical moments.
struct GaussianState {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cm;

    int modes() const { return static_cast<int>(mean.size()) / 2; }
};

// The m symplectic eigenvalues of a 2m x 2m covariance matrix, ascending.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& cm);

// Physicality: symmetric and all symplectic eigenvalues >= 1/2 - tol.
bool is_valid_cm(const Eigen::MatrixXd& cm, double tol = 1e-10);
void validate_state(const GaussianState& s, double tol = 1e-10);

// Total mean photon number over all modes.
double mean_photons(const GaussianState& s);

GaussianState vacuum_state(int modes = 1);
GaussianState thermal_gaussian(double nbar);
GaussianState coherent_gaussian(const Eigen::Vector2d& mean);

// Two-mode squeezed vacuum: zero mean, diagonal blocks cosh(2r)/2 I,
// off-diagonal sinh(2r)/2 Z. Reduced single mode is thermal with sinh^2 r.
GaussianState tmsv(double r);

// Two thermal modes coupled by a two-mode squeezer (the Williamson form
// of the zero-mean standard-form states); reduces to tmsv at n1 = n2 = 0.
GaussianState two_mode_squeezed_thermal(double r, double n1, double n2);

enum class GaussKind { thermal_loss, amplifier, additive, custom };

/// One-mode Gaussian channel (T, N, d): x -> T x + d, V -> T V T^T + N.
struct GaussianChannel {
    Eigen::Matrix2d T = Eigen::Matrix2d::Identity();
    Eigen::Matrix2d N = Eigen::Matrix2d::Zero();
    Eigen::Vector2d d = Eigen::Vector2d::Zero();
    GaussKind kind = GaussKind::custom;
    double eta = 1.0;
    double nbar = 0.0;
    double nu = 0.0;

    // det N >= (det T - 1)^2 / 4; a violation signals an unphysical map.
    bool satisfies_noise_bound(double tol = 1e-10) const;
};

// T = sqrt(eta) I, N = (1-eta)(nbar + 1/2) I, eta in [0, 1].
GaussianChannel thermal_loss_channel(double eta, double nbar);
// T = sqrt(eta) I, N = (eta-1)(nbar + 1/2) I, eta > 1.
GaussianChannel amplifier_channel(double eta, double nbar);
// T = I, N = nu I, nu >= 0.
GaussianChannel additive_channel(double nu);
// Dispatcher: (eta, nbar) for loss/amplifier, (nu) for additive.
GaussianChannel make_gaussian_channel(GaussKind kind, double a, double b = 0.0);

// Apply the channel to one mode of a state, identity on the others.
GaussianState apply_gaussian(const GaussianChannel& ch, const GaussianState& s,
                             int mode = 0);

// (E (x) I)(tmsv(r)): channel on the first mode.
GaussianState choi_cm(const GaussianChannel& ch, double r);

/// Two-mode resource in block form [[A, C], [C^T, B]].
struct ResourceCM {
    Eigen::Matrix2d A, B, C;

    Eigen::Matrix4d assemble() const;
    GaussianState state() const;  // zero mean; validates the CM
};

ResourceCM tmsv_blocks(double r);

// Finite-energy resource simulating the phase-insensitive channel
// (eta, nu) under gain sqrt(eta):
//   a = cosh(2r)/2, b = |1-eta|/2 + eta cosh(2r)/2, c = sqrt(eta) sinh(2r)/2,
//   r = -(1/2) ln[(2 nu - |1-eta|) / (2 eta)].
// Requires nu > |1-eta|/2.
ResourceCM finite_resource(double eta, double nu);

// Teleportation over the resource with gain g: T = g I,
// N = g^2 Z A Z + B - g (Z C + C^T Z), d = 0.
GaussianChannel bk_teleport_channel(const ResourceCM& res, double g);

// Uhlmann fidelity of two Gaussian states from their moments.
double gaussian_fidelity(const GaussianState& s1, const GaussianState& s2);

/// One-parameter phase-insensitive channel family. theta is nbar for
/// loss/amplifier (eta fixed) and nu for the additive channel.
struct CvFamily {
    GaussKind kind = GaussKind::additive;
    double eta = 1.0;
    std::function<GaussianChannel(double)> eval;
};

CvFamily cv_family(GaussKind kind, double eta = 1.0);

// QFI of the finite-r Choi-state family at theta, via
// 8[1 - F]/dtheta^2 with the fidelity evaluated at theta -/+ dtheta/2.
// dtheta <= 0 selects the default 2e-3 * max(1, |theta|).
QfiResult qfi_gaussian(const CvFamily& family, double theta, double r,
                       double dtheta = 0.0);

struct ChoiLimit {
    double value = 0.0;
    std::vector<double> grid_values;
    bool monotone = false;
};

// r -> infinity extrapolation of qfi_gaussian over an increasing r grid
// (>= 3 points): polynomial fit in the tail variable z = e^{-2r} through
// the last three points, evaluated at z = 0.
ChoiLimit qfi_choi_limit(const CvFamily& family, double theta,
                         const std::vector<double>& r_grid);

// QFI of the finite-energy resource family sigma_{nu(theta)} at theta.
// dtheta <= 0 selects the default 2e-2 * max(1, |theta|).
QfiResult qfi_suboptimal(const CvFamily& family, double theta,
                         double dtheta = 0.0);

// Lower bound on the energy-bounded deviation of teleportation over
// tmsv(r) with the given gain from the identity channel: maximum of
// 2(1 - F) over coherent test states with |mean|^2/2 <= N and two-mode
// squeezed test states with total energy <= N.
double bk_error_lower_bound(double r, double N, double gain = 1.0);

}  // namespace qmet
