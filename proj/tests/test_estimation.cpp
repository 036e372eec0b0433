#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qmet/estimation.hpp"
#include "qmet/teleport.hpp"

using namespace qmet;

TEST_CASE("sample_povm: deterministic projective measurement") {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = 1.0;
    DensityMatrix state(m);
    std::vector<Mat> povm{m, Mat::Identity(2, 2) - m};
    auto counts = sample_povm(state, povm, 1000, 42);
    CHECK(counts[0] == 1000);
    CHECK(counts[1] == 0);
}

TEST_CASE("sample_povm: Bell statistics of the dephasing Choi state") {
    const double p = 0.3;
    auto xi = choi(make_channel(ChannelKind::dephasing, p));
    auto bell = bell_basis();
    std::vector<Mat> povm(bell.projectors.begin(), bell.projectors.end());
    const long shots = 20000;
    auto counts = sample_povm(xi, povm, shots, 7);
    const double freq = static_cast<double>(counts[3]) / shots;
    const double ci = 3.0 * std::sqrt(p * (1.0 - p) / shots);
    CHECK(std::abs(freq - p) < ci);
    CHECK(counts[1] == 0);  // orthogonal components never fire
    CHECK(counts[2] == 0);
}

TEST_CASE("sample_povm: uniform POVM gives flat counts") {
    Rng rng(5);
    auto state = random_density(3, rng);
    std::vector<Mat> povm(3, Mat::Identity(3, 3) / 3.0);
    const long shots = 30000;
    auto counts = sample_povm(state, povm, shots, 11);
    for (long c : counts)
        CHECK(std::abs(c / static_cast<double>(shots) - 1.0 / 3.0) <
              3.0 * std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / shots));
}

TEST_CASE("sample_povm: invalid sets are rejected") {
    Rng rng(6);
    auto state = random_density(2, rng);
    std::vector<Mat> short_povm{0.5 * Mat::Identity(2, 2)};
    CHECK_THROWS_AS(sample_povm(state, short_povm, 10, 1), std::invalid_argument);

    Mat neg = Mat::Zero(2, 2);
    neg.diagonal() << 1.5, 1.0;
    std::vector<Mat> nonpsd{neg, Mat::Identity(2, 2) - neg};
    CHECK_THROWS_AS(sample_povm(state, nonpsd, 10, 1), std::invalid_argument);
}

TEST_CASE("sample_povm: seed reproducibility") {
    Rng rng(8);
    auto state = random_density(2, rng);
    std::vector<Mat> povm{Mat::Identity(2, 2) / 2.0, Mat::Identity(2, 2) / 2.0};
    CHECK(sample_povm(state, povm, 500, 99) == sample_povm(state, povm, 500, 99));
    CHECK(sample_povm(state, povm, 500, 99) != sample_povm(state, povm, 500, 100));
}

TEST_CASE("run_block_experiment: dephasing variance matches the QCRB") {
    auto res = run_block_experiment(ChannelKind::dephasing, 0.3, 1000, 200, 12345);
    CHECK(res.qcrb == doctest::Approx(2.1e-4));
    // The flip-count design is exactly binomial, so the empirical variance
    // sits within 3 standard errors of p(1-p)/n.
    const double se = res.qcrb * std::sqrt(2.0 / res.trials);
    CHECK(std::abs(res.empirical_var - res.qcrb) < 3.0 * se);

    // Unbiasedness at 3 standard errors of the mean.
    double mean = 0.0;
    for (double e : res.estimates) mean += e;
    mean /= res.estimates.size();
    CHECK(std::abs(mean - 0.3) < 3.0 * std::sqrt(res.qcrb / res.trials));
}

TEST_CASE("run_block_experiment: variance halves when n doubles") {
    auto a = run_block_experiment(ChannelKind::dephasing, 0.5, 100, 500, 777);
    auto b = run_block_experiment(ChannelKind::dephasing, 0.5, 200, 500, 778);
    const double ratio = b.empirical_var / a.empirical_var;
    CHECK(ratio > 0.4);
    CHECK(ratio < 0.6);
}

TEST_CASE("run_block_experiment: erasure and depolarizing designs") {
    auto er = run_block_experiment(ChannelKind::erasure, 0.25, 500, 300, 31);
    double mean = 0.0;
    for (double e : er.estimates) mean += e;
    mean /= er.estimates.size();
    CHECK(std::abs(mean - 0.25) < 3.0 * std::sqrt(er.qcrb / er.trials));
    CHECK(er.empirical_var >= er.qcrb * (1.0 - 3.0 / std::sqrt(er.trials)));

    auto dep = run_block_experiment(ChannelKind::depolarizing, 0.4, 500, 300, 37);
    mean = 0.0;
    for (double e : dep.estimates) mean += e;
    mean /= dep.estimates.size();
    // 4/3-scaled flip fraction is unbiased for the mixing probability; its
    // variance exceeds p(1-p)/n, so use its own binomial spread.
    const double q = 0.75 * 0.4;
    const double est_var = (16.0 / 9.0) * q * (1.0 - q) / 500.0;
    CHECK(std::abs(mean - 0.4) < 3.0 * std::sqrt(est_var / dep.trials));
    CHECK(dep.empirical_var >= dep.qcrb * (1.0 - 3.0 / std::sqrt(dep.trials)));
}

TEST_CASE("run_block_experiment: reproducible and validated") {
    auto a = run_block_experiment(ChannelKind::dephasing, 0.3, 50, 20, 5);
    auto b = run_block_experiment(ChannelKind::dephasing, 0.3, 50, 20, 5);
    CHECK(a.estimates == b.estimates);
    CHECK(a.empirical_var == b.empirical_var);

    CHECK_THROWS_AS(run_block_experiment(ChannelKind::dephasing, 0.0, 10, 10, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_block_experiment(ChannelKind::dephasing, 0.5, 0, 10, 1),
                    std::invalid_argument);
}

TEST_CASE("sql_scaling_fit: synthetic scalings") {
    auto synth = [](double expo) {
        std::vector<ExperimentResult> rs;
        for (long n : {100L, 1000L, 10000L}) {
            ExperimentResult r;
            r.n = n;
            r.empirical_var = std::pow(static_cast<double>(n), expo);
            rs.push_back(r);
        }
        return rs;
    };
    CHECK(sql_scaling_fit(synth(-1.0)) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(sql_scaling_fit(synth(0.0)) == doctest::Approx(0.0));
    CHECK(sql_scaling_fit(synth(-2.0)) == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("sql_scaling_fit: rejects thin grids") {
    std::vector<ExperimentResult> rs(2);
    rs[0].n = 100;
    rs[0].empirical_var = 1.0;
    rs[1].n = 10000;
    rs[1].empirical_var = 0.01;
    CHECK_THROWS_AS(sql_scaling_fit(rs), std::invalid_argument);

    std::vector<ExperimentResult> narrow(3);
    for (int i = 0; i < 3; ++i) {
        narrow[i].n = 100 + i;
        narrow[i].empirical_var = 1.0;
    }
    CHECK_THROWS_AS(sql_scaling_fit(narrow), std::invalid_argument);
}
