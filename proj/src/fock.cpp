#include "qmet/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qmet {

namespace {

void check_cutoff(int cutoff) {
    if (cutoff < 4) throw std::invalid_argument("fock: cutoff must be >= 4");
}

void check_tail(double tail) {
    if (tail > kTailLimit)
        throw std::invalid_argument(
            "fock: truncated mass exceeds the tail limit; raise the cutoff");
}

// exp(G) for anti-Hermitian G via the Hermitian spectrum of iG.
Mat expm_antihermitian(const Mat& g) {
    Eigen::SelfAdjointEigenSolver<Mat> es(Cplx(0.0, 1.0) * g);
    Vec phases(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < phases.size(); ++k)
        phases(k) = std::exp(Cplx(0.0, -es.eigenvalues()(k)));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

std::vector<double> thermal_probs(double nbar, int cutoff) {
    std::vector<double> p(cutoff);
    const double ratio = nbar / (nbar + 1.0);
    double cur = 1.0 / (nbar + 1.0);
    for (int n = 0; n < cutoff; ++n) {
        p[n] = cur;
        cur *= ratio;
    }
    return p;
}

}  // namespace

Mat lowering_op(int cutoff) {
    Mat a = Mat::Zero(cutoff, cutoff);
    for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

FockState fock_coherent(Cplx alpha, int cutoff) {
    check_cutoff(cutoff);
    Vec ket(cutoff);
    ket(0) = std::exp(-std::norm(alpha) / 2.0);
    for (int n = 1; n < cutoff; ++n) ket(n) = ket(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    const double kept = ket.squaredNorm();
    const double tail = std::max(0.0, 1.0 - kept);
    check_tail(tail);
    return {cutoff, 1, ket * ket.adjoint(), tail};
}

FockState fock_thermal(double nbar, int cutoff) {
    check_cutoff(cutoff);
    if (nbar < 0.0) throw std::invalid_argument("fock_thermal: nbar must be >= 0");
    const auto p = thermal_probs(nbar, cutoff);
    const double tail = nbar > 0.0 ? std::pow(nbar / (nbar + 1.0), cutoff) : 0.0;
    check_tail(tail);
    Mat m = Mat::Zero(cutoff, cutoff);
    for (int n = 0; n < cutoff; ++n) m(n, n) = p[n];
    return {cutoff, 1, std::move(m), tail};
}

FockState fock_tmsv(double r, int cutoff) {
    check_cutoff(cutoff);
    if (r < 0.0) throw std::invalid_argument("fock_tmsv: r must be >= 0");
    const double lam = std::tanh(r);
    Vec ket = Vec::Zero(cutoff * cutoff);
    double amp = std::sqrt(1.0 - lam * lam);
    for (int n = 0; n < cutoff; ++n) {
        ket(n * cutoff + n) = amp;
        amp *= lam;
    }
    const double tail = std::pow(lam, 2.0 * cutoff);
    check_tail(tail);
    return {cutoff, 2, ket * ket.adjoint(), tail};
}

Mat displacement_op(Cplx alpha, int cutoff) {
    const Mat a = lowering_op(cutoff);
    return expm_antihermitian(alpha * a.adjoint() - std::conj(alpha) * a);
}

Mat rotation_op(double phi, int cutoff) {
    Mat u = Mat::Zero(cutoff, cutoff);
    for (int n = 0; n < cutoff; ++n) u(n, n) = std::exp(Cplx(0.0, -phi * n));
    return u;
}

Mat squeeze_op(double r, int cutoff) {
    const Mat a = lowering_op(cutoff);
    return expm_antihermitian((r / 2.0) * (a * a - (a * a).adjoint()));
}

Mat two_mode_squeeze_op(double r, int cutoff) {
    // The generator r(a^dag b^dag - a b) conserves the photon-number
    // difference; exponentiate block by block.
    Mat u = Mat::Zero(cutoff * cutoff, cutoff * cutoff);
    for (int delta = -(cutoff - 1); delta <= cutoff - 1; ++delta) {
        std::vector<int> idx;  // flat indices |k, k-delta>
        for (int k = std::max(0, delta); k < cutoff && k - delta < cutoff; ++k)
            idx.push_back(k * cutoff + (k - delta));
        const int n = static_cast<int>(idx.size());
        Mat g = Mat::Zero(n, n);
        for (int i = 0; i + 1 < n; ++i) {
            const int k = std::max(0, delta) + i;
            const int l = k - delta;
            const double amp = r * std::sqrt(double(k + 1) * double(l + 1));
            g(i + 1, i) = amp;
            g(i, i + 1) = -amp;
        }
        const Mat ub = expm_antihermitian(g);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) u(idx[i], idx[j]) = ub(i, j);
    }
    return u;
}

FockState fock_conjugate(const Mat& u, const FockState& s) {
    if (u.rows() != s.data.rows())
        throw std::invalid_argument("fock_conjugate: dimension mismatch");
    Mat out = u * s.data * u.adjoint();
    return {s.cutoff, s.modes, (out + out.adjoint()) / 2.0, s.tail};
}

FockState fock_two_mode_squeezed_thermal(double r, double n1, double n2,
                                         int cutoff) {
    // The squeezer conserves the photon-number difference and the thermal
    // product is diagonal, so the state is a direct sum over difference
    // sectors; conjugate block by block.
    check_cutoff(cutoff);
    const auto p1 = thermal_probs(n1, cutoff);
    const auto p2 = thermal_probs(n2, cutoff);
    const double tail =
        (n1 > 0.0 ? std::pow(n1 / (n1 + 1.0), cutoff) : 0.0) +
        (n2 > 0.0 ? std::pow(n2 / (n2 + 1.0), cutoff) : 0.0);
    check_tail(tail);

    const Mat u_full = two_mode_squeeze_op(r, cutoff);
    Mat out = Mat::Zero(cutoff * cutoff, cutoff * cutoff);
    for (int delta = -(cutoff - 1); delta <= cutoff - 1; ++delta) {
        std::vector<int> idx;
        for (int k = std::max(0, delta); k < cutoff && k - delta < cutoff; ++k)
            idx.push_back(k * cutoff + (k - delta));
        const int n = static_cast<int>(idx.size());
        Mat ub(n, n);
        Eigen::VectorXd diag(n);
        for (int i = 0; i < n; ++i) {
            const int k = std::max(0, delta) + i;
            diag(i) = p1[k] * p2[k - delta];
            for (int j = 0; j < n; ++j) ub(i, j) = u_full(idx[i], idx[j]);
        }
        const Mat block = ub * diag.asDiagonal() * ub.adjoint();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out(idx[i], idx[j]) = block(i, j);
    }
    return {cutoff, 2, std::move(out), tail};
}

Eigen::MatrixXd beam_splitter_block(int n, double eta) {
    if (n < 0 || !(eta >= 0.0 && eta <= 1.0))
        throw std::invalid_argument("beam_splitter_block: bad arguments");
    const double theta = std::acos(std::sqrt(eta));
    Mat g = Mat::Zero(n + 1, n + 1);
    for (int k = 0; k + 1 <= n; ++k) {
        const double amp = std::sqrt(double(k + 1) * double(n - k));
        g(k + 1, k) = amp;   // a^dag b
        g(k, k + 1) = -amp;  // -a b^dag
    }
    return expm_antihermitian(theta * g).real();
}

FockState fock_thermal_loss(double eta, double nbar, const FockState& rho,
                            double tail_budget) {
    if (rho.modes != 1)
        throw std::invalid_argument("fock_thermal_loss: single-mode input required");
    if (!(eta >= 0.0 && eta <= 1.0) || nbar < 0.0)
        throw std::invalid_argument("fock_thermal_loss: bad channel parameters");

    const int c = rho.cutoff;
    const int big = 2 * c - 1;  // output support before cropping
    const auto p_env = thermal_probs(nbar, c);
    const double env_tail =
        nbar > 0.0 ? std::pow(nbar / (nbar + 1.0), c) : 0.0;

    std::vector<Eigen::MatrixXd> blocks(2 * c - 1);
    for (int n = 0; n <= 2 * c - 2; ++n) blocks[n] = beam_splitter_block(n, eta);

    Mat out_big = Mat::Zero(big, big);
    // Kraus branch (l -> l') of the environment, applied via the sector
    // blocks: A[k + l - l', k] = sqrt(p_l) U_{k+l}(k + l - l', k).
    std::vector<Cplx> coeff(c);
    for (int l = 0; l < c; ++l) {
        const double w = std::sqrt(p_env[l]);
        for (int lp = 0; lp <= 2 * c - 2; ++lp) {
            const int shift = l - lp;
            int kmin = std::max(0, -shift);
            bool any = false;
            for (int k = kmin; k < c; ++k) {
                const int n = k + l;
                const int kp = k + shift;
                coeff[k] = (kp <= n) ? Cplx(w * blocks[n](kp, k), 0.0) : Cplx(0.0, 0.0);
                if (coeff[k] != Cplx(0.0, 0.0)) any = true;
            }
            if (!any) continue;
            for (int k = kmin; k < c; ++k) {
                if (coeff[k] == Cplx(0.0, 0.0)) continue;
                for (int j = kmin; j < c; ++j)
                    out_big(k + shift, j + shift) +=
                        coeff[k] * rho.data(k, j) * std::conj(coeff[j]);
            }
        }
    }

    double cropped = 0.0;
    for (int k = c; k < big; ++k) cropped += out_big(k, k).real();
    const double tail = rho.tail + env_tail + std::max(0.0, cropped);
    if (tail > tail_budget)
        throw std::runtime_error(
            "fock_thermal_loss: truncation loss exceeds the tail budget");

    Mat out = out_big.topLeftCorner(c, c);
    out = (out + out.adjoint()) / 2.0;
    return {c, 1, std::move(out), tail};
}

double oracle_fidelity(const FockState& a, const FockState& b) {
    if (a.cutoff != b.cutoff || a.modes != b.modes)
        throw std::invalid_argument("oracle_fidelity: mismatched representations");
    // Joint numerical support; dropping diagonal weight below 1e-13 moves
    // the fidelity by far less than the tail budget.
    std::vector<int> idx;
    for (Eigen::Index i = 0; i < a.data.rows(); ++i)
        if (a.data(i, i).real() + b.data(i, i).real() > 1e-13)
            idx.push_back(static_cast<int>(i));
    const int n = static_cast<int>(idx.size());
    Mat ra(n, n), rb(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ra(i, j) = a.data(idx[i], idx[j]);
            rb(i, j) = b.data(idx[i], idx[j]);
        }
    const Mat sq = sqrt_psd((rb + rb.adjoint()) / 2.0, 1e-10);
    const Mat inner = sq * ((ra + ra.adjoint()) / 2.0) * sq;
    Eigen::SelfAdjointEigenSolver<Mat> es((inner + inner.adjoint()) / 2.0,
                                          Eigen::EigenvaluesOnly);
    double f = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        f += std::sqrt(std::max(0.0, es.eigenvalues()(i)));
    return std::min(f, 1.0);
}

namespace {

struct Triplet {
    int row, col;
    Cplx val;
};

// Quadrature operators as triplet lists; they are band matrices, so the
// moment traces reduce to O(dim) sums.
std::vector<std::vector<Triplet>> quad_triplets(int cutoff, int modes) {
    const double s2 = std::sqrt(2.0);
    std::vector<Triplet> q1, p1;
    for (int n = 1; n < cutoff; ++n) {
        const double amp = std::sqrt(static_cast<double>(n));
        q1.push_back({n - 1, n, amp / s2});
        q1.push_back({n, n - 1, amp / s2});
        p1.push_back({n - 1, n, Cplx(0.0, -amp / s2)});
        p1.push_back({n, n - 1, Cplx(0.0, amp / s2)});
    }
    if (modes == 1) return {q1, p1};

    auto lift = [cutoff](const std::vector<Triplet>& t, bool first) {
        std::vector<Triplet> out;
        out.reserve(t.size() * cutoff);
        for (const auto& e : t)
            for (int l = 0; l < cutoff; ++l)
                out.push_back(first
                                  ? Triplet{e.row * cutoff + l, e.col * cutoff + l, e.val}
                                  : Triplet{l * cutoff + e.row, l * cutoff + e.col, e.val});
        return out;
    };
    return {lift(q1, true), lift(p1, true), lift(q1, false), lift(p1, false)};
}

Cplx trace_product(const std::vector<Triplet>& op, const Mat& rho) {
    Cplx acc = 0.0;
    for (const auto& e : op) acc += e.val * rho(e.col, e.row);
    return acc;
}

// Tr(A B rho) with both operators in triplet form.
Cplx trace_product(const std::vector<Triplet>& a,
                   const std::vector<std::vector<Triplet>>& b_by_row,
                   const Mat& rho) {
    Cplx acc = 0.0;
    for (const auto& ea : a)
        for (const auto& eb : b_by_row[ea.col]) acc += ea.val * eb.val * rho(eb.col, ea.row);
    return acc;
}

std::vector<std::vector<Triplet>> bucket_rows(const std::vector<Triplet>& t,
                                              int dim) {
    std::vector<std::vector<Triplet>> rows(dim);
    for (const auto& e : t) rows[e.row].push_back(e);
    return rows;
}

}  // namespace

std::pair<Eigen::VectorXd, Eigen::MatrixXd> fock_moments(const FockState& s) {
    if (s.modes != 1 && s.modes != 2)
        throw std::invalid_argument("fock_moments: one or two modes supported");
    const auto quads = quad_triplets(s.cutoff, s.modes);
    const int dim = static_cast<int>(quads.size());
    const int full = static_cast<int>(s.data.rows());

    std::vector<std::vector<std::vector<Triplet>>> rows;
    rows.reserve(dim);
    for (const auto& q : quads) rows.push_back(bucket_rows(q, full));

    Eigen::VectorXd mean(dim);
    for (int i = 0; i < dim; ++i) mean(i) = trace_product(quads[i], s.data).real();

    Eigen::MatrixXd cm(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const Cplx ij = trace_product(quads[i], rows[j], s.data);
            const Cplx ji = trace_product(quads[j], rows[i], s.data);
            cm(i, j) = ((ij + ji) / 2.0).real() - mean(i) * mean(j);
        }
    return {mean, cm};
}

}  // namespace qmet
