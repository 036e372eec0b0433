#include "qmet/teleport.hpp"

#include <cmath>
#include <stdexcept>

namespace qmet {

BellBasis bell_basis() {
    BellBasis b;
    b.paulis = pauli();
    Vec phi = Vec::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    for (int a = 0; a < 4; ++a) {
        const Vec ket = tensor(Mat::Identity(2, 2), b.paulis[a]) * phi;
        b.projectors[a] = ket * ket.adjoint();
    }
    return b;
}

DensityMatrix teleport(const DensityMatrix& input, const DensityMatrix& resource,
                       const CorrectionTable& corrections) {
    if (input.dim() != 2)
        throw std::invalid_argument("teleport: input must be a qubit");
    if (resource.dim() % 2 != 0)
        throw std::invalid_argument("teleport: resource must end in a qubit subsystem");
    const int d_out = resource.dim() / 2;
    if (corrections.output_unitaries.size() != 4)
        throw std::invalid_argument("teleport: corrections must cover 4 outcomes");
    for (const Mat& v : corrections.output_unitaries)
        if (v.rows() != d_out || v.cols() != d_out)
            throw std::invalid_argument("teleport: correction dimension mismatch");

    const BellBasis bell = bell_basis();
    const Mat joint = tensor(input.mat(), resource.mat());  // order (a, B, A)
    const std::vector<int> dims{2, d_out, 2};

    Mat out = Mat::Zero(d_out, d_out);
    double total_prob = 0.0;
    for (int a = 0; a < 4; ++a) {
        const Mat proj = embed(bell.projectors[a], dims, {0, 2});
        const Mat branch = partial_trace(proj * joint, dims, {1});
        total_prob += branch.trace().real();
        const Mat& v = corrections.output_unitaries[a];
        out += v.adjoint() * branch * v;
    }
    if (std::abs(total_prob - 1.0) > 1e-10)
        throw std::runtime_error("teleport: branch probabilities do not sum to 1");
    return DensityMatrix((out + out.adjoint()) / 2.0);
}

double simulate_and_compare(const KrausChannel& ch, const CorrectionTable& table,
                            int trials, std::uint64_t seed) {
    const DensityMatrix resource = choi(ch);
    Rng rng(seed);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const DensityMatrix rho = random_density(2, rng);
        const DensityMatrix direct = apply_channel(ch, rho);
        const DensityMatrix via_tp = teleport(rho, resource, table);
        worst = std::max(worst, trace_distance(direct, via_tp));
    }
    return worst;
}

}  // namespace qmet
