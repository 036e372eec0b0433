#include "qmet/estimation.hpp"

#include <cmath>
#include <stdexcept>

#include "qmet/teleport.hpp"

namespace qmet {

std::vector<long> sample_povm(const DensityMatrix& state,
                              const std::vector<Mat>& povm, long shots,
                              std::uint64_t seed) {
    if (povm.empty()) throw std::invalid_argument("sample_povm: empty POVM");
    if (shots < 0) throw std::invalid_argument("sample_povm: negative shot count");
    Mat sum = Mat::Zero(state.dim(), state.dim());
    for (const Mat& e : povm) {
        if (e.rows() != state.dim() || e.cols() != state.dim())
            throw std::invalid_argument("sample_povm: element dimension mismatch");
        Eigen::SelfAdjointEigenSolver<Mat> es((e + e.adjoint()) / 2.0,
                                              Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-10)
            throw std::invalid_argument("sample_povm: element not PSD");
        sum += e;
    }
    if ((sum - Mat::Identity(state.dim(), state.dim())).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("sample_povm: POVM does not resolve the identity");

    const std::size_t k = povm.size();
    std::vector<double> cdf(k);
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        acc += std::max(0.0, (povm[i] * state.mat()).trace().real());
        cdf[i] = acc;
    }
    for (std::size_t i = 0; i < k; ++i) cdf[i] /= acc;

    std::vector<long> counts(k, 0);
    Rng rng(seed);
    for (long s = 0; s < shots; ++s) {
        const double u = rng.uniform();
        std::size_t idx = 0;
        while (idx + 1 < k && u >= cdf[idx]) ++idx;
        ++counts[idx];
    }
    return counts;
}

namespace {

struct ExperimentDesign {
    std::vector<Mat> povm;
    // Maps outcome counts to the parameter estimate.
    double (*estimate)(const std::vector<long>&, long);
};

ExperimentDesign design_for(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::dephasing: {
            auto bell = bell_basis();
            std::vector<Mat> povm(bell.projectors.begin(), bell.projectors.end());
            return {std::move(povm), [](const std::vector<long>& c, long n) {
                        return static_cast<double>(c[3]) / static_cast<double>(n);
                    }};
        }
        case ChannelKind::depolarizing: {
            auto bell = bell_basis();
            std::vector<Mat> povm(bell.projectors.begin(), bell.projectors.end());
            return {std::move(povm), [](const std::vector<long>& c, long n) {
                        const long flips = c[1] + c[2] + c[3];
                        return 4.0 / 3.0 * static_cast<double>(flips) /
                               static_cast<double>(n);
                    }};
        }
        case ChannelKind::erasure: {
            // Choi state lives on (qutrit out) x (qubit ancilla); the flag
            // is the third output level.
            Mat flag3 = Mat::Zero(3, 3);
            flag3(2, 2) = 1.0;
            Mat flag = tensor(flag3, Mat::Identity(2, 2));
            std::vector<Mat> povm{flag, Mat::Identity(6, 6) - flag};
            return {std::move(povm), [](const std::vector<long>& c, long n) {
                        return static_cast<double>(c[0]) / static_cast<double>(n);
                    }};
        }
        case ChannelKind::custom:
            break;
    }
    throw std::invalid_argument("run_block_experiment: unsupported family");
}

}  // namespace

ExperimentResult run_block_experiment(ChannelKind kind, double p_true, long n,
                                      int trials, std::uint64_t seed) {
    if (!(p_true > 0.0 && p_true < 1.0))
        throw std::invalid_argument("run_block_experiment: p must lie in (0, 1)");
    if (n < 1 || trials < 1)
        throw std::invalid_argument("run_block_experiment: n, trials must be >= 1");

    const DensityMatrix probe_out = choi(make_channel(kind, p_true));
    const ExperimentDesign design = design_for(kind);

    ExperimentResult res;
    res.theta_true = p_true;
    res.n = n;
    res.trials = trials;
    res.seed = seed;
    res.qcrb = p_true * (1.0 - p_true) / static_cast<double>(n);
    res.estimates.reserve(trials);

    double acc = 0.0;
    for (int t = 0; t < trials; ++t) {
        const auto counts =
            sample_povm(probe_out, design.povm, n, Rng::derive(seed, t));
        const double est = design.estimate(counts, n);
        res.estimates.push_back(est);
        acc += (est - p_true) * (est - p_true);
    }
    res.empirical_var = acc / static_cast<double>(trials);
    return res;
}

double sql_scaling_fit(const std::vector<ExperimentResult>& results) {
    if (results.size() < 3)
        throw std::invalid_argument("sql_scaling_fit: need at least 3 points");
    double nmin = results.front().n, nmax = results.front().n;
    for (const auto& r : results) {
        nmin = std::min(nmin, static_cast<double>(r.n));
        nmax = std::max(nmax, static_cast<double>(r.n));
        if (r.empirical_var <= 0.0)
            throw std::invalid_argument("sql_scaling_fit: non-positive variance");
    }
    if (nmax / nmin < 100.0)
        throw std::invalid_argument("sql_scaling_fit: n grid must span two decades");

    const double m = static_cast<double>(results.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& r : results) {
        const double x = std::log(static_cast<double>(r.n));
        const double y = std::log(r.empirical_var);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace qmet
