#include "qmet/linalg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qmet {

DensityMatrix::DensityMatrix(Mat m) : data_(std::move(m)) {
    if (data_.rows() != data_.cols() || data_.rows() == 0)
        throw std::invalid_argument("DensityMatrix: matrix must be square");
    const double herm = (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermTol)
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    const double tr = std::abs(data_.trace() - Cplx(1.0, 0.0));
    if (tr > kTraceTol)
        throw std::invalid_argument("DensityMatrix: trace != 1");
    Eigen::SelfAdjointEigenSolver<Mat> es(data_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kEigTol)
        throw std::invalid_argument("DensityMatrix: negative eigenvalue");
}

Mat tensor(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

namespace {

// Strides for mixed-radix index decomposition, last subsystem fastest.
std::vector<Eigen::Index> strides_of(const std::vector<int>& dims) {
    std::vector<Eigen::Index> s(dims.size());
    Eigen::Index acc = 1;
    for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
        s[i] = acc;
        acc *= dims[i];
    }
    return s;
}

Eigen::Index total_dim(const std::vector<int>& dims) {
    Eigen::Index d = 1;
    for (int x : dims) {
        if (x <= 0) throw std::invalid_argument("subsystem dimension must be positive");
        d *= x;
    }
    return d;
}

}  // namespace

Mat partial_trace(const Mat& m, const std::vector<int>& dims,
                  const std::vector<int>& keep) {
    const Eigen::Index full = total_dim(dims);
    if (m.rows() != full || m.cols() != full)
        throw std::invalid_argument("partial_trace: dims do not match matrix");
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= static_cast<int>(dims.size()))
            throw std::invalid_argument("partial_trace: keep index out of range");
        if (i > 0 && keep[i] <= keep[i - 1])
            throw std::invalid_argument("partial_trace: keep must be strictly increasing");
    }

    std::vector<int> traced;
    for (int i = 0; i < static_cast<int>(dims.size()); ++i)
        if (std::find(keep.begin(), keep.end(), i) == keep.end()) traced.push_back(i);

    const auto strides = strides_of(dims);
    Eigen::Index dk = 1, dt = 1;
    for (int i : keep) dk *= dims[i];
    for (int i : traced) dt *= dims[i];

    // Flat offset of a combined index over the listed subsystems.
    auto offset = [&](const std::vector<int>& sites, Eigen::Index combined) {
        Eigen::Index off = 0;
        for (int i = static_cast<int>(sites.size()) - 1; i >= 0; --i) {
            const int s = sites[i];
            off += (combined % dims[s]) * strides[s];
            combined /= dims[s];
        }
        return off;
    };

    Mat out = Mat::Zero(dk, dk);
    for (Eigen::Index r = 0; r < dk; ++r) {
        const Eigen::Index ro = offset(keep, r);
        for (Eigen::Index c = 0; c < dk; ++c) {
            const Eigen::Index co = offset(keep, c);
            Cplx acc = 0.0;
            for (Eigen::Index t = 0; t < dt; ++t) {
                const Eigen::Index to = offset(traced, t);
                acc += m(ro + to, co + to);
            }
            out(r, c) = acc;
        }
    }
    return out;
}

Mat embed(const Mat& op, const std::vector<int>& dims,
          const std::vector<int>& sites) {
    Eigen::Index dop = 1;
    for (int s : sites) {
        if (s < 0 || s >= static_cast<int>(dims.size()))
            throw std::invalid_argument("embed: site out of range");
        dop *= dims[s];
    }
    if (op.rows() != dop || op.cols() != dop)
        throw std::invalid_argument("embed: operator does not match site dimensions");

    const Eigen::Index full = total_dim(dims);
    const auto strides = strides_of(dims);

    std::vector<int> rest;
    for (int i = 0; i < static_cast<int>(dims.size()); ++i)
        if (std::find(sites.begin(), sites.end(), i) == sites.end()) rest.push_back(i);
    Eigen::Index drest = 1;
    for (int i : rest) drest *= dims[i];

    auto offset = [&](const std::vector<int>& ss, Eigen::Index combined) {
        Eigen::Index off = 0;
        for (int i = static_cast<int>(ss.size()) - 1; i >= 0; --i) {
            const int s = ss[i];
            off += (combined % dims[s]) * strides[s];
            combined /= dims[s];
        }
        return off;
    };

    Mat out = Mat::Zero(full, full);
    for (Eigen::Index r = 0; r < dop; ++r) {
        const Eigen::Index ro = offset(sites, r);
        for (Eigen::Index c = 0; c < dop; ++c) {
            if (op(r, c) == Cplx(0.0, 0.0)) continue;
            const Eigen::Index co = offset(sites, c);
            for (Eigen::Index t = 0; t < drest; ++t) {
                const Eigen::Index to = offset(rest, t);
                out(ro + to, co + to) = op(r, c);
            }
        }
    }
    return out;
}

Mat sqrt_psd(const Mat& m, double eig_tol) {
    Eigen::SelfAdjointEigenSolver<Mat> es((m + m.adjoint()) / 2.0);
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -eig_tol)
            throw std::invalid_argument("sqrt_psd: matrix not PSD within tolerance");
        if (ev(i) < 0.0) ev(i) = 0.0;
    }
    return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
           es.eigenvectors().adjoint();
}

double trace_norm(const Mat& m) {
    return m.jacobiSvd().singularValues().sum();
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
    const Mat rs = sqrt_psd(sigma.mat());
    const Mat inner = rs * rho.mat() * rs;
    Eigen::SelfAdjointEigenSolver<Mat> es((inner + inner.adjoint()) / 2.0,
                                          Eigen::EigenvaluesOnly);
    double f = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        f += std::sqrt(std::max(0.0, es.eigenvalues()(i)));
    return std::min(f, 1.0);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw std::invalid_argument("trace_distance: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Mat> es(rho.mat() - sigma.mat(),
                                          Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum() / 2.0;
}

double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - uhlmann_fidelity(rho, sigma))));
}

std::uint64_t Rng::next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
}

Cplx Rng::normal_cplx() {
    const double re = normal();
    return {re, normal()};
}

std::uint64_t Rng::derive(std::uint64_t master, std::uint64_t index) {
    Rng r(master ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    return r.next_u64();
}

DensityMatrix random_density(int dim, Rng& rng) {
    Mat g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.normal_cplx();
    Mat rho = g * g.adjoint();
    rho /= rho.trace();
    // Symmetrize away last-bit drift before validation.
    rho = (rho + rho.adjoint()) / 2.0;
    return DensityMatrix(rho);
}

}  // namespace qmet
