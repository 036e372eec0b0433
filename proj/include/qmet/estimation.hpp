#pragma once

#include <cstdint>
#include <vector>

#include "qmet/dv_channels.hpp"
#include "qmet/linalg.hpp"

namespace qmet {

/// Outcome of one block-protocol estimation experiment: `trials`
/// independent repetitions, each using the channel n times on half of a
/// maximally entangled probe. The variance is taken about theta_true.
struct ExperimentResult {
    double theta_true = 0.0;
    long n = 0;
    int trials = 0;
    std::vector<double> estimates;
    double empirical_var = 0.0;
    double qcrb = 0.0;
    std::uint64_t seed = 0;
};

// Multinomial outcome counts of `shots` measurements of `povm` on `state`;
// reproducible for a fixed seed. Throws when an element fails PSD or the
// set does not sum to the identity within 1e-10.
std::vector<long> sample_povm(const DensityMatrix& state,
                              const std::vector<Mat>& povm, long shots,
                              std::uint64_t seed);

// Entanglement-assisted block experiment for one of the three channel
// families: the Choi state is measured shotwise and the probability
// parameter estimated from its sufficient statistic (flip fraction for
// dephasing, flag fraction for erasure, 4/3 x non-Phi+ fraction for
// depolarizing). Trials draw independent counter-derived substreams.
ExperimentResult run_block_experiment(ChannelKind kind, double p_true, long n,
                                      int trials, std::uint64_t seed);

// Least-squares slope of log(empirical_var) against log(n); requires at
// least 3 results whose n values span two decades.
double sql_scaling_fit(const std::vector<ExperimentResult>& results);

}  // namespace qmet
