#pragma once

#include <functional>

#include "qmet/dv_channels.hpp"
#include "qmet/linalg.hpp"
#include "qmet/qfi_result.hpp"

namespace qmet {

/// One-parameter channel family theta -> KrausChannel together with the
/// bipartite probe of the assisted protocol (default Phi+). The channel
/// acts on the first factor of the probe.
struct ParamFamilyDV {
    ChannelKind kind = ChannelKind::custom;
    std::function<KrausChannel(double)> eval;
    DensityMatrix probe;
    double lo = 0.0, hi = 1.0;  // open parameter domain
};

// Families keyed by the probability parameter whose estimation the Choi
// state governs. For erasure and dephasing this is the p of make_channel;
// the depolarizing family is keyed by the total Pauli-error probability
// theta, i.e. (1-theta) rho + (theta/3)(X rho X + Y rho Y + Z rho Z).
ParamFamilyDV dv_family(ChannelKind kind);

// (E_theta (x) I)(probe).
DensityMatrix family_output(const ParamFamilyDV& family, double theta);

// Symmetric logarithmic derivative: L = sum_{l_j+l_k > cutoff}
// 2/(l_j+l_k) <e_j|drho|e_k> |e_j><e_k|.
Mat sld(const DensityMatrix& rho, const Mat& drho, double cutoff = 1e-12);

// Tr(L^2 rho) for the SLD of (rho, drho).
double qfi_from_derivative(const DensityMatrix& rho, const Mat& drho,
                           double cutoff = 1e-12);

// QFI of the assisted output family at theta; central-difference state
// derivative with step 1e-5 * max(1, |theta|).
QfiResult qfi_sld(const ParamFamilyDV& family, double theta);

// QFI via 8[1 - F]/dtheta^2 with the fidelity evaluated between the states
// at theta -/+ dtheta/2 (centred at theta). Halving dtheta must move the
// value by < 0.1% or the result is flagged unconverged.
QfiResult qfi_fidelity(const ParamFamilyDV& family, double theta,
                       double dtheta = 1e-4);

// 1/[p(1-p)] for the three named families; p in the open interval (0,1).
double closed_form_dv_qfi(ChannelKind kind, double p);

// 1/(n * qfi_single).
double qcrb(double qfi_single, long n);

// m * n * program_qfi, the adaptive-protocol QFI ceiling for an n-use
// protocol simulated with m program copies per use; requires m <= n.
double stretching_bound(double program_qfi, long n, long m = 1);

}  // namespace qmet
