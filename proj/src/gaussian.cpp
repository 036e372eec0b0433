#include "qmet/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qmet {

namespace {

const Eigen::Matrix2d kZ = (Eigen::Matrix2d() << 1.0, 0.0, 0.0, -1.0).finished();

}  // namespace

Eigen::MatrixXd symplectic_form(int modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
    for (int k = 0; k < modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& cm) {
    const int m = static_cast<int>(cm.rows()) / 2;
    Eigen::EigenSolver<Eigen::MatrixXd> es(symplectic_form(m) * cm, false);
    std::vector<double> mags;
    mags.reserve(2 * m);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        mags.push_back(std::abs(es.eigenvalues()(i)));
    std::sort(mags.begin(), mags.end());
    std::vector<double> out;
    for (int k = 0; k < m; ++k) out.push_back((mags[2 * k] + mags[2 * k + 1]) / 2.0);
    return out;
}

bool is_valid_cm(const Eigen::MatrixXd& cm, double tol) {
    if (cm.rows() != cm.cols() || cm.rows() % 2 != 0 || cm.rows() == 0) return false;
    if ((cm - cm.transpose()).cwiseAbs().maxCoeff() > 1e-12) return false;
    const auto nus = symplectic_eigenvalues(cm);
    return nus.front() >= 0.5 - tol;
}

void validate_state(const GaussianState& s, double tol) {
    if (s.mean.size() != s.cm.rows() || !is_valid_cm(s.cm, tol))
        throw std::invalid_argument("GaussianState: invalid covariance matrix");
}

double mean_photons(const GaussianState& s) {
    return (s.cm.trace() + s.mean.squaredNorm()) / 2.0 - s.modes() / 2.0;
}

GaussianState vacuum_state(int modes) {
    return {Eigen::VectorXd::Zero(2 * modes),
            Eigen::MatrixXd::Identity(2 * modes, 2 * modes) / 2.0};
}

GaussianState thermal_gaussian(double nbar) {
    if (nbar < 0.0) throw std::invalid_argument("thermal_gaussian: nbar must be >= 0");
    return {Eigen::VectorXd::Zero(2),
            (nbar + 0.5) * Eigen::MatrixXd::Identity(2, 2)};
}

GaussianState coherent_gaussian(const Eigen::Vector2d& mean) {
    GaussianState s = vacuum_state(1);
    s.mean = mean;
    return s;
}

GaussianState tmsv(double r) {
    if (r < 0.0) throw std::invalid_argument("tmsv: r must be >= 0");
    return tmsv_blocks(r).state();
}

GaussianState two_mode_squeezed_thermal(double r, double n1, double n2) {
    if (n1 < 0.0 || n2 < 0.0)
        throw std::invalid_argument("two_mode_squeezed_thermal: nbar must be >= 0");
    Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
    s.topLeftCorner<2, 2>() = std::cosh(r) * Eigen::Matrix2d::Identity();
    s.bottomRightCorner<2, 2>() = std::cosh(r) * Eigen::Matrix2d::Identity();
    s.topRightCorner<2, 2>() = std::sinh(r) * kZ;
    s.bottomLeftCorner<2, 2>() = std::sinh(r) * kZ;
    const Eigen::Vector4d diag(n1 + 0.5, n1 + 0.5, n2 + 0.5, n2 + 0.5);
    return {Eigen::VectorXd::Zero(4), s * diag.asDiagonal() * s.transpose()};
}

bool GaussianChannel::satisfies_noise_bound(double tol) const {
    const double lhs = N.determinant();
    const double rhs = (T.determinant() - 1.0) * (T.determinant() - 1.0) / 4.0;
    return lhs >= rhs - tol;
}

GaussianChannel thermal_loss_channel(double eta, double nbar) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::invalid_argument("thermal_loss_channel: eta must lie in [0, 1]");
    if (nbar < 0.0)
        throw std::invalid_argument("thermal_loss_channel: nbar must be >= 0");
    GaussianChannel ch;
    ch.kind = GaussKind::thermal_loss;
    ch.eta = eta;
    ch.nbar = nbar;
    ch.nu = (1.0 - eta) * (nbar + 0.5);
    ch.T = std::sqrt(eta) * Eigen::Matrix2d::Identity();
    ch.N = ch.nu * Eigen::Matrix2d::Identity();
    return ch;
}

GaussianChannel amplifier_channel(double eta, double nbar) {
    if (!(eta > 1.0))
        throw std::invalid_argument("amplifier_channel: gain must exceed 1");
    if (nbar < 0.0)
        throw std::invalid_argument("amplifier_channel: nbar must be >= 0");
    GaussianChannel ch;
    ch.kind = GaussKind::amplifier;
    ch.eta = eta;
    ch.nbar = nbar;
    ch.nu = (eta - 1.0) * (nbar + 0.5);
    ch.T = std::sqrt(eta) * Eigen::Matrix2d::Identity();
    ch.N = ch.nu * Eigen::Matrix2d::Identity();
    return ch;
}

GaussianChannel additive_channel(double nu) {
    if (nu < 0.0) throw std::invalid_argument("additive_channel: nu must be >= 0");
    GaussianChannel ch;
    ch.kind = GaussKind::additive;
    ch.eta = 1.0;
    ch.nu = nu;
    ch.N = nu * Eigen::Matrix2d::Identity();
    return ch;
}

GaussianChannel make_gaussian_channel(GaussKind kind, double a, double b) {
    switch (kind) {
        case GaussKind::thermal_loss: return thermal_loss_channel(a, b);
        case GaussKind::amplifier: return amplifier_channel(a, b);
        case GaussKind::additive: return additive_channel(a);
        case GaussKind::custom: break;
    }
    throw std::invalid_argument("make_gaussian_channel: custom needs explicit matrices");
}

GaussianState apply_gaussian(const GaussianChannel& ch, const GaussianState& s,
                             int mode) {
    if (mode < 0 || mode >= s.modes())
        throw std::invalid_argument("apply_gaussian: mode index out of range");
    const int n = 2 * s.modes();
    Eigen::MatrixXd scatter = Eigen::MatrixXd::Identity(n, n);
    scatter.block<2, 2>(2 * mode, 2 * mode) = ch.T;
    GaussianState out;
    out.mean = scatter * s.mean;
    out.mean.segment<2>(2 * mode) += ch.d;
    out.cm = scatter * s.cm * scatter.transpose();
    out.cm.block<2, 2>(2 * mode, 2 * mode) += ch.N;
    return out;
}

GaussianState choi_cm(const GaussianChannel& ch, double r) {
    return apply_gaussian(ch, tmsv(r), 0);
}

Eigen::Matrix4d ResourceCM::assemble() const {
    Eigen::Matrix4d v;
    v.topLeftCorner<2, 2>() = A;
    v.topRightCorner<2, 2>() = C;
    v.bottomLeftCorner<2, 2>() = C.transpose();
    v.bottomRightCorner<2, 2>() = B;
    return v;
}

GaussianState ResourceCM::state() const {
    GaussianState s{Eigen::VectorXd::Zero(4), assemble()};
    validate_state(s);
    return s;
}

ResourceCM tmsv_blocks(double r) {
    ResourceCM res;
    res.A = res.B = (std::cosh(2.0 * r) / 2.0) * Eigen::Matrix2d::Identity();
    res.C = (std::sinh(2.0 * r) / 2.0) * kZ;
    return res;
}

ResourceCM finite_resource(double eta, double nu) {
    if (eta <= 0.0) throw std::invalid_argument("finite_resource: eta must be > 0");
    const double gap = 2.0 * nu - std::abs(1.0 - eta);
    if (gap <= 0.0)
        throw std::invalid_argument(
            "finite_resource: nu must exceed |1-eta|/2 (quantum-limited boundary)");
    const double r = -0.5 * std::log(gap / (2.0 * eta));
    ResourceCM res;
    res.A = (std::cosh(2.0 * r) / 2.0) * Eigen::Matrix2d::Identity();
    res.B = (std::abs(1.0 - eta) / 2.0 + eta * std::cosh(2.0 * r) / 2.0) *
            Eigen::Matrix2d::Identity();
    res.C = (std::sqrt(eta) * std::sinh(2.0 * r) / 2.0) * kZ;
    return res;
}

GaussianChannel bk_teleport_channel(const ResourceCM& res, double g) {
    if (g <= 0.0) throw std::invalid_argument("bk_teleport_channel: gain must be > 0");
    GaussianChannel ch;
    ch.kind = GaussKind::custom;
    ch.eta = g * g;
    ch.T = g * Eigen::Matrix2d::Identity();
    Eigen::Matrix2d n = g * g * kZ * res.A * kZ + res.B -
                        g * (kZ * res.C + res.C.transpose() * kZ);
    ch.N = (n + n.transpose()) / 2.0;
    return ch;
}

double gaussian_fidelity(const GaussianState& s1, const GaussianState& s2) {
    if (s1.modes() != s2.modes())
        throw std::invalid_argument("gaussian_fidelity: mode count mismatch");
    validate_state(s1, 1e-9);
    validate_state(s2, 1e-9);
    if (s1.mean == s2.mean && s1.cm == s2.cm) return 1.0;

    const int m = s1.modes();
    const Eigen::MatrixXd omega = symplectic_form(m);
    const Eigen::MatrixXd vsum = s1.cm + s2.cm;
    const Eigen::MatrixXd vsum_inv = vsum.inverse();
    const Eigen::MatrixXd vaux =
        omega.transpose() * vsum_inv * (omega / 4.0 + s2.cm * omega * s1.cm);
    const Eigen::MatrixXd minv = (vaux * omega).inverse();
    const Eigen::MatrixXd w =
        Eigen::MatrixXd::Identity(2 * m, 2 * m) + 0.25 * minv * minv;

    Eigen::EigenSolver<Eigen::MatrixXd> es(w, false);
    std::complex<double> prod = 1.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        std::complex<double> wi = es.eigenvalues()(i);
        if (wi.real() < 0.0 && std::abs(wi.imag()) < 1e-10) wi = 0.0;
        prod *= 1.0 + std::sqrt(wi);
    }
    double f4 = std::pow(4.0, m) * vaux.determinant() * prod.real() /
                vsum.determinant();
    if (!std::isfinite(f4))
        throw std::runtime_error("gaussian_fidelity: formula evaluation failed");
    f4 = std::max(f4, 0.0);

    const Eigen::VectorXd delta = s2.mean - s1.mean;
    const double overlap = std::exp(-0.25 * delta.dot(vsum_inv * delta));
    return std::min(std::pow(f4, 0.25) * overlap, 1.0);
}

CvFamily cv_family(GaussKind kind, double eta) {
    CvFamily f{kind, eta, {}};
    switch (kind) {
        case GaussKind::thermal_loss:
            f.eval = [eta](double nbar) { return thermal_loss_channel(eta, nbar); };
            break;
        case GaussKind::amplifier:
            f.eval = [eta](double nbar) { return amplifier_channel(eta, nbar); };
            break;
        case GaussKind::additive:
            f.eta = 1.0;
            f.eval = [](double nu) { return additive_channel(nu); };
            break;
        case GaussKind::custom:
            throw std::invalid_argument("cv_family: no built-in custom family");
    }
    return f;
}

namespace {

double qfi_two_point(const GaussianState& lo, const GaussianState& hi, double dtheta) {
    return 8.0 * (1.0 - gaussian_fidelity(lo, hi)) / (dtheta * dtheta);
}

double qfi_gaussian_once(const CvFamily& family, double theta, double r,
                         double dtheta) {
    const GaussianState lo = choi_cm(family.eval(theta - dtheta / 2.0), r);
    const GaussianState hi = choi_cm(family.eval(theta + dtheta / 2.0), r);
    return qfi_two_point(lo, hi, dtheta);
}

}  // namespace

QfiResult qfi_gaussian(const CvFamily& family, double theta, double r,
                       double dtheta) {
    if (dtheta <= 0.0) dtheta = 2e-3 * std::max(1.0, std::abs(theta));
    const double value = qfi_gaussian_once(family, theta, r, dtheta);
    const double halved = qfi_gaussian_once(family, theta, r, dtheta / 2.0);
    const bool converged = std::abs(halved - value) <= 1e-3 * std::abs(value);
    return {value, QfiMethod::fidelity, dtheta, converged};
}

ChoiLimit qfi_choi_limit(const CvFamily& family, double theta,
                         const std::vector<double>& r_grid) {
    if (r_grid.size() < 3)
        throw std::invalid_argument("qfi_choi_limit: need at least 3 grid points");
    for (std::size_t i = 1; i < r_grid.size(); ++i)
        if (r_grid[i] <= r_grid[i - 1])
            throw std::invalid_argument("qfi_choi_limit: r grid must be increasing");

    ChoiLimit out;
    for (double r : r_grid)
        out.grid_values.push_back(qfi_gaussian(family, theta, r).value);

    out.monotone = true;
    for (std::size_t i = 1; i < out.grid_values.size(); ++i)
        if (out.grid_values[i] < out.grid_values[i - 1] - 1e-9)
            out.monotone = false;

    // Quadratic in the tail variable z = e^{-2r} through the last three
    // points, evaluated at z = 0.
    const std::size_t n = r_grid.size();
    double z[3], q[3];
    for (int i = 0; i < 3; ++i) {
        z[i] = std::exp(-2.0 * r_grid[n - 3 + i]);
        q[i] = out.grid_values[n - 3 + i];
    }
    // Lagrange interpolation at z = 0.
    out.value = q[0] * (z[1] * z[2]) / ((z[0] - z[1]) * (z[0] - z[2])) +
                q[1] * (z[0] * z[2]) / ((z[1] - z[0]) * (z[1] - z[2])) +
                q[2] * (z[0] * z[1]) / ((z[2] - z[0]) * (z[2] - z[1]));
    return out;
}

namespace {

GaussianState suboptimal_resource(const CvFamily& family, double theta) {
    const GaussianChannel ch = family.eval(theta);
    return finite_resource(ch.eta, ch.nu).state();
}

double qfi_suboptimal_once(const CvFamily& family, double theta, double dtheta) {
    const GaussianState lo = suboptimal_resource(family, theta - dtheta / 2.0);
    const GaussianState hi = suboptimal_resource(family, theta + dtheta / 2.0);
    return qfi_two_point(lo, hi, dtheta);
}

}  // namespace

QfiResult qfi_suboptimal(const CvFamily& family, double theta, double dtheta) {
    if (dtheta <= 0.0) dtheta = 2e-2 * std::max(1.0, std::abs(theta));
    const double value = qfi_suboptimal_once(family, theta, dtheta);
    const double halved = qfi_suboptimal_once(family, theta, dtheta / 2.0);
    const bool converged = std::abs(halved - value) <= 1e-3 * std::abs(value);
    return {value, QfiMethod::fidelity, dtheta, converged};
}

double bk_error_lower_bound(double r, double N, double gain) {
    if (r < 0.0 || N < 0.0)
        throw std::invalid_argument("bk_error_lower_bound: r, N must be >= 0");
    const GaussianChannel ch = bk_teleport_channel(tmsv_blocks(r), gain);

    double bound = 0.0;
    // Coherent test states at mean photon numbers {0, N/2, N}.
    for (double energy : {0.0, N / 2.0, N}) {
        const GaussianState in =
            coherent_gaussian({std::sqrt(2.0 * energy), 0.0});
        bound = std::max(bound, 2.0 * (1.0 - gaussian_fidelity(in, apply_gaussian(ch, in))));
    }
    // Two-mode squeezed test states, channel on one arm, energy <= N.
    for (double energy : {N / 2.0, N}) {
        if (energy <= 0.0) continue;
        const double rt = std::asinh(std::sqrt(energy / 2.0));
        const GaussianState in = tmsv(rt);
        bound = std::max(bound, 2.0 * (1.0 - gaussian_fidelity(in, apply_gaussian(ch, in, 0))));
    }
    return bound;
}

}  // namespace qmet
