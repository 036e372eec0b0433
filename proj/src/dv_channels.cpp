#include "qmet/dv_channels.hpp"

#include <cmath>
#include <stdexcept>

namespace qmet {

const std::array<Mat, 4>& pauli() {
    static const std::array<Mat, 4> p = [] {
        std::array<Mat, 4> a;
        for (auto& m : a) m = Mat::Zero(2, 2);
        a[0](0, 0) = a[0](1, 1) = 1.0;
        a[1](0, 1) = a[1](1, 0) = 1.0;
        a[2](0, 1) = Cplx(0.0, -1.0);
        a[2](1, 0) = Cplx(0.0, 1.0);
        a[3](0, 0) = 1.0;
        a[3](1, 1) = -1.0;
        return a;
    }();
    return p;
}

namespace {

void check_completeness(const std::vector<Mat>& kraus, int in_dim) {
    Mat acc = Mat::Zero(in_dim, in_dim);
    for (const Mat& k : kraus) acc += k.adjoint() * k;
    if ((acc - Mat::Identity(in_dim, in_dim)).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("KrausChannel: not trace preserving");
}

void check_param(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("make_channel: p must lie in [0, 1]");
}

}  // namespace

KrausChannel custom_channel(std::vector<Mat> kraus, double param) {
    if (kraus.empty())
        throw std::invalid_argument("custom_channel: empty Kraus list");
    const int in_dim = static_cast<int>(kraus.front().cols());
    const int out_dim = static_cast<int>(kraus.front().rows());
    for (const Mat& k : kraus)
        if (k.cols() != in_dim || k.rows() != out_dim)
            throw std::invalid_argument("custom_channel: inconsistent shapes");
    check_completeness(kraus, in_dim);
    return {in_dim, out_dim, std::move(kraus), ChannelKind::custom, param};
}

KrausChannel make_channel(ChannelKind kind, double p) {
    check_param(p);
    const auto& s = pauli();
    std::vector<Mat> ks;
    int out_dim = 2;
    switch (kind) {
        case ChannelKind::erasure: {
            out_dim = 3;
            Mat keep = Mat::Zero(3, 2);  // qubit embedded above the flag
            keep(0, 0) = keep(1, 1) = 1.0;
            Mat f0 = Mat::Zero(3, 2), f1 = Mat::Zero(3, 2);
            f0(2, 0) = 1.0;
            f1(2, 1) = 1.0;
            ks = {std::sqrt(1.0 - p) * keep, std::sqrt(p) * f0, std::sqrt(p) * f1};
            break;
        }
        case ChannelKind::dephasing:
            ks = {std::sqrt(1.0 - p) * s[0], std::sqrt(p) * s[3]};
            break;
        case ChannelKind::depolarizing:
            // (1-p) rho + p I/2 == mixture of Paulis with weight p/4 each.
            ks = {std::sqrt(1.0 - 0.75 * p) * s[0], std::sqrt(p / 4.0) * s[1],
                  std::sqrt(p / 4.0) * s[2], std::sqrt(p / 4.0) * s[3]};
            break;
        case ChannelKind::custom:
            throw std::invalid_argument("make_channel: custom needs explicit Kraus list");
    }
    check_completeness(ks, 2);
    return {2, out_dim, std::move(ks), kind, p};
}

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
    if (rho.dim() != ch.in_dim)
        throw std::invalid_argument("apply_channel: dimension mismatch");
    Mat out = Mat::Zero(ch.out_dim, ch.out_dim);
    for (const Mat& k : ch.kraus) out += k * rho.mat() * k.adjoint();
    return DensityMatrix((out + out.adjoint()) / 2.0);
}

DensityMatrix apply_extended(const KrausChannel& ch, const DensityMatrix& rho,
                             int anc_dim) {
    if (rho.dim() != ch.in_dim * anc_dim)
        throw std::invalid_argument("apply_extended: dimension mismatch");
    const Mat id = Mat::Identity(anc_dim, anc_dim);
    Mat out = Mat::Zero(ch.out_dim * anc_dim, ch.out_dim * anc_dim);
    for (const Mat& k : ch.kraus) {
        const Mat ke = tensor(k, id);
        out += ke * rho.mat() * ke.adjoint();
    }
    return DensityMatrix((out + out.adjoint()) / 2.0);
}

DensityMatrix choi(const KrausChannel& ch) {
    if (ch.in_dim != 2)
        throw std::invalid_argument("choi: only qubit-input channels supported");
    Vec phi = Vec::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    return apply_extended(ch, DensityMatrix(phi * phi.adjoint()), 2);
}

CorrectionTable pauli_corrections() {
    const auto& s = pauli();
    CorrectionTable t;
    for (const Mat& m : s) {
        t.input_unitaries.push_back(m);
        t.output_unitaries.push_back(m);
    }
    return t;
}

CorrectionTable erasure_corrections() {
    const auto& s = pauli();
    CorrectionTable t;
    for (const Mat& m : s) {
        t.input_unitaries.push_back(m);
        Mat v = Mat::Identity(3, 3);
        v.topLeftCorner(2, 2) = m;
        t.output_unitaries.push_back(v);
    }
    return t;
}

CovarianceCheck verify_tele_covariance(const KrausChannel& ch,
                                       const CorrectionTable& table,
                                       double tol) {
    if (table.input_unitaries.size() != 4 || table.output_unitaries.size() != 4)
        throw std::invalid_argument("verify_tele_covariance: table must have 4 entries");
    for (const Mat& u : table.input_unitaries)
        if (u.rows() != ch.in_dim || u.cols() != ch.in_dim)
            throw std::invalid_argument("verify_tele_covariance: input unitary shape");
    for (const Mat& v : table.output_unitaries)
        if (v.rows() != ch.out_dim || v.cols() != ch.out_dim)
            throw std::invalid_argument("verify_tele_covariance: output unitary shape");

    auto raw_apply = [&](const Mat& x) {
        Mat out = Mat::Zero(ch.out_dim, ch.out_dim);
        for (const Mat& k : ch.kraus) out += k * x * k.adjoint();
        return out;
    };

    // Linearity makes the matrix-unit basis check exhaustive.
    double worst = 0.0;
    for (int a = 0; a < 4; ++a) {
        const Mat& u = table.input_unitaries[a];
        const Mat& v = table.output_unitaries[a];
        for (int i = 0; i < ch.in_dim; ++i) {
            for (int j = 0; j < ch.in_dim; ++j) {
                Mat unit = Mat::Zero(ch.in_dim, ch.in_dim);
                unit(i, j) = 1.0;
                const Mat lhs = raw_apply(u * unit * u.adjoint());
                const Mat rhs = v * raw_apply(unit) * v.adjoint();
                worst = std::max(worst, trace_norm(lhs - rhs));
            }
        }
    }
    return {worst <= tol, worst};
}

}  // namespace qmet
