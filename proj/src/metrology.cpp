#include "qmet/metrology.hpp"

#include <cmath>
#include <stdexcept>

namespace qmet {

namespace {

DensityMatrix bell_probe() {
    Vec phi = Vec::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    return DensityMatrix(phi * phi.adjoint());
}

KrausChannel pauli_mix_channel(double theta) {
    if (!(theta >= 0.0 && theta <= 1.0))
        throw std::invalid_argument("pauli mix: theta must lie in [0, 1]");
    const auto& s = pauli();
    std::vector<Mat> ks{std::sqrt(1.0 - theta) * s[0],
                        std::sqrt(theta / 3.0) * s[1],
                        std::sqrt(theta / 3.0) * s[2],
                        std::sqrt(theta / 3.0) * s[3]};
    return custom_channel(std::move(ks), theta);
}

}  // namespace

ParamFamilyDV dv_family(ChannelKind kind) {
    ParamFamilyDV f{kind, {}, bell_probe(), 0.0, 1.0};
    switch (kind) {
        case ChannelKind::erasure:
        case ChannelKind::dephasing:
            f.eval = [kind](double theta) { return make_channel(kind, theta); };
            break;
        case ChannelKind::depolarizing:
            f.eval = [](double theta) { return pauli_mix_channel(theta); };
            break;
        case ChannelKind::custom:
            throw std::invalid_argument("dv_family: no built-in custom family");
    }
    return f;
}

DensityMatrix family_output(const ParamFamilyDV& family, double theta) {
    const KrausChannel ch = family.eval(theta);
    const int anc = family.probe.dim() / ch.in_dim;
    return apply_extended(ch, family.probe, anc);
}

Mat sld(const DensityMatrix& rho, const Mat& drho, double cutoff) {
    if (drho.rows() != rho.dim() || drho.cols() != rho.dim())
        throw std::invalid_argument("sld: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Mat> es(rho.mat());
    const Eigen::VectorXd lam = es.eigenvalues();
    const Mat& v = es.eigenvectors();
    const Mat d = v.adjoint() * drho * v;
    Mat l = Mat::Zero(rho.dim(), rho.dim());
    for (int j = 0; j < rho.dim(); ++j)
        for (int k = 0; k < rho.dim(); ++k)
            if (lam(j) + lam(k) > cutoff) l(j, k) = 2.0 * d(j, k) / (lam(j) + lam(k));
    return v * l * v.adjoint();
}

double qfi_from_derivative(const DensityMatrix& rho, const Mat& drho,
                           double cutoff) {
    const Mat l = sld(rho, drho, cutoff);
    return (l * l * rho.mat()).trace().real();
}

QfiResult qfi_sld(const ParamFamilyDV& family, double theta) {
    const double h = 1e-5 * std::max(1.0, std::abs(theta));
    if (!(theta - h > family.lo && theta + h < family.hi))
        throw std::invalid_argument("qfi_sld: theta too close to the domain boundary");
    const DensityMatrix rho = family_output(family, theta);
    const Mat drho =
        (family_output(family, theta + h).mat() - family_output(family, theta - h).mat()) /
        (2.0 * h);
    return {qfi_from_derivative(rho, drho), QfiMethod::sld, h, true};
}

namespace {

double qfi_fidelity_once(const ParamFamilyDV& family, double theta, double dtheta) {
    const DensityMatrix lo = family_output(family, theta - dtheta / 2.0);
    const DensityMatrix hi = family_output(family, theta + dtheta / 2.0);
    return 8.0 * (1.0 - uhlmann_fidelity(lo, hi)) / (dtheta * dtheta);
}

}  // namespace

QfiResult qfi_fidelity(const ParamFamilyDV& family, double theta, double dtheta) {
    if (dtheta <= 0.0) throw std::invalid_argument("qfi_fidelity: dtheta must be > 0");
    if (!(theta - dtheta / 2.0 > family.lo && theta + dtheta / 2.0 < family.hi))
        throw std::invalid_argument("qfi_fidelity: theta too close to the domain boundary");
    const double value = qfi_fidelity_once(family, theta, dtheta);
    const double halved = qfi_fidelity_once(family, theta, dtheta / 2.0);
    const bool converged = std::abs(halved - value) <= 1e-3 * std::abs(value);
    return {value, QfiMethod::fidelity, dtheta, converged};
}

double closed_form_dv_qfi(ChannelKind kind, double p) {
    if (kind == ChannelKind::custom)
        throw std::invalid_argument("closed_form_dv_qfi: no closed form for custom");
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("closed_form_dv_qfi: diverges at the boundary");
    return 1.0 / (p * (1.0 - p));
}

double qcrb(double qfi_single, long n) {
    if (qfi_single <= 0.0) throw std::invalid_argument("qcrb: QFI must be positive");
    if (n < 1) throw std::invalid_argument("qcrb: n must be >= 1");
    return 1.0 / (static_cast<double>(n) * qfi_single);
}

double stretching_bound(double program_qfi, long n, long m) {
    if (program_qfi < 0.0)
        throw std::invalid_argument("stretching_bound: QFI must be non-negative");
    if (n < 1 || m < 1) throw std::invalid_argument("stretching_bound: n, m must be >= 1");
    if (m > n) throw std::invalid_argument("stretching_bound: m must not exceed n");
    return static_cast<double>(m) * static_cast<double>(n) * program_qfi;
}

}  // namespace qmet
