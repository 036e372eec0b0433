#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qmet/linalg.hpp"

using namespace qmet;

namespace {

Mat ket_proj(int dim, int k) {
    Mat m = Mat::Zero(dim, dim);
    m(k, k) = 1.0;
    return m;
}

DensityMatrix bell_phi_plus() {
    Vec v = Vec::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return DensityMatrix(v * v.adjoint());
}

}  // namespace

TEST_CASE("tensor: identity and basis projectors") {
    Mat i2 = Mat::Identity(2, 2);
    CHECK((tensor(i2, i2) - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

    Mat p01 = tensor(ket_proj(2, 0), ket_proj(2, 1));
    CHECK((p01 - ket_proj(4, 1)).cwiseAbs().maxCoeff() == 0.0);

    Mat a = Mat::Zero(2, 2);
    a.diagonal() << 0.5, 0.5;
    Mat b = Mat::Zero(2, 2);
    b.diagonal() << 1.0, 0.0;
    Mat expect = Mat::Zero(4, 4);
    expect.diagonal() << 0.5, 0.0, 0.5, 0.0;
    CHECK((tensor(a, b) - expect).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("partial_trace: maximally entangled and product states") {
    Mat phi = bell_phi_plus().mat();
    Mat red = partial_trace(phi, {2, 2}, {0});
    CHECK((red - Mat::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-15);

    Rng rng(11);
    DensityMatrix r1 = random_density(2, rng);
    DensityMatrix r2 = random_density(3, rng);
    Mat prod = tensor(r1.mat(), r2.mat());
    CHECK((partial_trace(prod, {2, 3}, {0}) - r1.mat()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((partial_trace(prod, {2, 3}, {1}) - r2.mat()).cwiseAbs().maxCoeff() < 1e-14);

    // Trace preservation on a random tripartite state.
    DensityMatrix r3 = random_density(8, rng);
    Mat red3 = partial_trace(r3.mat(), {2, 2, 2}, {1});
    CHECK(std::abs(red3.trace() - Cplx(1.0, 0.0)) < 1e-14);
}

TEST_CASE("partial_trace: dimension mismatch throws") {
    Mat m = Mat::Identity(4, 4);
    CHECK_THROWS_AS(partial_trace(m, {2, 3}, {0}), std::invalid_argument);
}

TEST_CASE("embed: operator on selected sites") {
    Rng rng(5);
    DensityMatrix op = random_density(2, rng);
    // Embedding on site 0 of [2,3] equals op (x) I3.
    Mat e = embed(op.mat(), {2, 3}, {0});
    CHECK((e - tensor(op.mat(), Mat::Identity(3, 3))).cwiseAbs().maxCoeff() < 1e-15);
    // Embedding on site 1 equals I2 (x) op'.
    DensityMatrix op3 = random_density(3, rng);
    Mat e2 = embed(op3.mat(), {2, 3}, {1});
    CHECK((e2 - tensor(Mat::Identity(2, 2), op3.mat())).cwiseAbs().maxCoeff() < 1e-15);
    // Non-adjacent sites: embed on (0,2) of [2,2,2], compare against
    // manual construction.
    Mat p = tensor(op.mat(), op.mat());
    Mat full = embed(p, {2, 2, 2}, {0, 2});
    Mat manual = Mat::Zero(8, 8);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    for (int b = 0; b < 2; ++b)
                        manual((i * 2 + b) * 2 + k, (j * 2 + b) * 2 + l) =
                            p(i * 2 + k, j * 2 + l);
    CHECK((full - manual).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("uhlmann_fidelity: reference values") {
    Rng rng(17);
    DensityMatrix rho = random_density(4, rng);
    CHECK(uhlmann_fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-12));

    DensityMatrix k0{ket_proj(2, 0)}, k1{ket_proj(2, 1)};
    CHECK(uhlmann_fidelity(k0, k1) == doctest::Approx(0.0).epsilon(1e-12));

    DensityMatrix mixed{Mat::Identity(2, 2) / 2.0};
    CHECK(uhlmann_fidelity(mixed, k0) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("trace_distance and bures_distance: reference values") {
    DensityMatrix k0{ket_proj(2, 0)}, k1{ket_proj(2, 1)};
    DensityMatrix mixed{Mat::Identity(2, 2) / 2.0};

    CHECK(trace_distance(k0, k0) == doctest::Approx(0.0));
    CHECK(trace_distance(k0, k1) == doctest::Approx(1.0));
    CHECK(trace_distance(mixed, k0) == doctest::Approx(0.5));

    CHECK(bures_distance(k0, k0) == doctest::Approx(0.0));
    CHECK(bures_distance(k0, k1) == doctest::Approx(std::sqrt(2.0)));
    CHECK(bures_distance(mixed, k0) ==
          doctest::Approx(std::sqrt(2.0 - std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("distance inequalities over random pairs") {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const int dim = 2 + static_cast<int>(rng.next_u64() % 3);
        DensityMatrix a = random_density(dim, rng);
        DensityMatrix b = random_density(dim, rng);
        const double f = uhlmann_fidelity(a, b);
        const double d = trace_distance(a, b);
        const double db = bures_distance(a, b);
        // Fuchs-van de Graaf sandwich.
        CHECK(1.0 - f <= d + 1e-10);
        CHECK(d <= std::sqrt(1.0 - f * f) + 1e-10);
        // d_B^2 <= unnormalized trace norm of the difference.
        CHECK(db * db <= 2.0 * d + 1e-10);
    }
}

TEST_CASE("fidelity is multiplicative over tensor products") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        DensityMatrix a1 = random_density(2, rng);
        DensityMatrix b1 = random_density(2, rng);
        DensityMatrix a2 = random_density(3, rng);
        DensityMatrix b2 = random_density(3, rng);
        DensityMatrix ta{tensor(a1.mat(), a2.mat())};
        DensityMatrix tb{tensor(b1.mat(), b2.mat())};
        const double lhs = uhlmann_fidelity(ta, tb);
        const double rhs = uhlmann_fidelity(a1, b1) * uhlmann_fidelity(a2, b2);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("partial_trace composed with tensor recovers factors") {
    Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        DensityMatrix a = random_density(2, rng);
        DensityMatrix b = random_density(4, rng);
        Mat t = tensor(a.mat(), b.mat());
        CHECK((partial_trace(t, {2, 4}, {0}) - a.mat()).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((partial_trace(t, {2, 4}, {1}) - b.mat()).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("DensityMatrix validation") {
    Mat bad = Mat::Identity(2, 2);
    CHECK_THROWS_AS(DensityMatrix{bad}, std::invalid_argument);  // trace 2

    Mat nonherm = Mat::Zero(2, 2);
    nonherm(0, 0) = 0.5;
    nonherm(1, 1) = 0.5;
    nonherm(0, 1) = Cplx(0.1, 0.0);
    CHECK_THROWS_AS(DensityMatrix{nonherm}, std::invalid_argument);

    Mat negeig = Mat::Zero(2, 2);
    negeig.diagonal() << 1.2, -0.2;
    CHECK_THROWS_AS(DensityMatrix{negeig}, std::invalid_argument);
}

TEST_CASE("sqrt_psd: clamps tiny negatives, rejects real ones") {
    Mat m = Mat::Zero(2, 2);
    m.diagonal() << 1.0, -5e-13;
    Mat r = sqrt_psd(m);
    CHECK(std::abs(r(0, 0).real() - 1.0) < 1e-14);
    CHECK(std::abs(r(1, 1)) == 0.0);

    Mat bad = Mat::Zero(2, 2);
    bad.diagonal() << 1.0, -1e-6;
    CHECK_THROWS_AS(sqrt_psd(bad), std::invalid_argument);
}

TEST_CASE("Rng: determinism and derived substreams") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    CHECK(Rng::derive(7, 0) != Rng::derive(7, 1));
    CHECK(Rng::derive(7, 3) == Rng::derive(7, 3));
}
