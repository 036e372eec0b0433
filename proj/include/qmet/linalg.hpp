#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace qmet {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Finite-dimensional quantum state: Hermitian, PSD and unit-trace complex
/// matrix. The constructor validates all three invariants and throws
/// std::invalid_argument on violation.
class DensityMatrix {
public:
    explicit DensityMatrix(Mat m);

    int dim() const { return static_cast<int>(data_.rows()); }
    const Mat& mat() const { return data_; }

    static constexpr double kHermTol = 1e-12;
    static constexpr double kEigTol = 1e-12;
    static constexpr double kTraceTol = 1e-12;

private:
    Mat data_;
};

// Kronecker product of two square matrices.
Mat tensor(const Mat& a, const Mat& b);

// Reduce `m` (acting on the tensor product of subsystems with the given
// dimensions) to the subsystems listed in `keep` (0-based, strictly
// increasing). The trace is preserved.
Mat partial_trace(const Mat& m, const std::vector<int>& dims,
                  const std::vector<int>& keep);

// Lift an operator acting on the subsystems listed in `sites` (in that
// order) to the full tensor-product space, identity elsewhere.
Mat embed(const Mat& op, const std::vector<int>& dims,
          const std::vector<int>& sites);

// Principal square root of a Hermitian PSD matrix. Eigenvalues in
// [-eig_tol, 0) are clamped to zero; more negative ones throw.
Mat sqrt_psd(const Mat& m, double eig_tol = 1e-12);

// Sum of singular values.
double trace_norm(const Mat& m);

// F(rho, sigma) = Tr sqrt(sqrt(sigma) rho sqrt(sigma)), in [0, 1].
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// (1/2) || rho - sigma ||_1, normalized to [0, 1].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// sqrt(2 [1 - F(rho, sigma)]).
double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Deterministic random stream with counter-based derivation, so that
/// per-trial substreams do not depend on evaluation order.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    double uniform();                  // [0, 1)
    double normal();                   // standard normal, Box-Muller
    Cplx normal_cplx();                // independent N(0,1) parts

    // Substream seed for trial `index`, independent of call order.
    static std::uint64_t derive(std::uint64_t master, std::uint64_t index);

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Hilbert-Schmidt-uniform random state: G G^dag / Tr(G G^dag) with
// complex Gaussian G.
DensityMatrix random_density(int dim, Rng& rng);

}  // namespace qmet
