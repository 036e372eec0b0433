#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qmet/fock.hpp"
#include "qmet/gaussian.hpp"

using namespace qmet;

TEST_CASE("fock_thermal: vacuum limit and geometric weights") {
    auto vac = fock_thermal(0.0, 8);
    CHECK(vac.data(0, 0).real() == doctest::Approx(1.0));
    CHECK(vac.tail == 0.0);

    auto th = fock_thermal(1.0, 40);
    CHECK(th.data(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(th.data(1, 1).real() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(th.tail == doctest::Approx(std::pow(2.0, -40.0)).epsilon(1e-10));
}

TEST_CASE("fock_tmsv: vacuum limit") {
    auto s = fock_tmsv(0.0, 6);
    CHECK(s.data(0, 0).real() == doctest::Approx(1.0));
    CHECK(s.data.cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("fock constructors refuse excessive truncation") {
    CHECK_THROWS(fock_thermal(5.0, 8));
    CHECK_THROWS(fock_coherent(Cplx(3.0, 0.0), 8));
}

TEST_CASE("coherent state moments match the displaced vacuum") {
    const Cplx alpha(0.6, -0.4);
    auto s = fock_coherent(alpha, 40);
    auto [mean, cm] = fock_moments(s);
    CHECK(mean(0) == doctest::Approx(std::sqrt(2.0) * alpha.real()).epsilon(1e-9));
    CHECK(mean(1) == doctest::Approx(std::sqrt(2.0) * alpha.imag()).epsilon(1e-9));
    CHECK((cm - Eigen::MatrixXd::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-9);

    // Same state via the displacement unitary.
    auto via_d = fock_conjugate(displacement_op(alpha, 40), fock_thermal(0.0, 40));
    CHECK((via_d.data - s.data).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("squeeze and rotation unitaries reproduce Gaussian moments") {
    const double r = 0.45, phi = 0.8;
    auto s = fock_conjugate(rotation_op(phi, 40) * squeeze_op(r, 40),
                            fock_thermal(0.2, 40));
    auto [mean, cm] = fock_moments(s);
    CHECK(mean.cwiseAbs().maxCoeff() < 1e-9);

    Eigen::Matrix2d rot;
    rot << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
    Eigen::Matrix2d sq = Eigen::Vector2d(std::exp(-r), std::exp(r)).asDiagonal();
    Eigen::Matrix2d expect = 0.7 * rot * sq * sq * rot.transpose();
    CHECK((cm - expect).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("fock_tmsv moments match the covariance-matrix construction") {
    const double r = 0.6;
    auto [mean, cm] = fock_moments(fock_tmsv(r, 40));
    CHECK(mean.cwiseAbs().maxCoeff() < 1e-10);
    CHECK((cm - tmsv(r).cm).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("two-mode squeezed thermal matches its Williamson form") {
    const double r = 0.5, n1 = 0.2, n2 = 0.1;
    auto [mean, cm] = fock_moments(fock_two_mode_squeezed_thermal(r, n1, n2, 40));

    Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
    const double ch = std::cosh(r), sh = std::sinh(r);
    const Eigen::Matrix2d z = Eigen::Vector2d(1.0, -1.0).asDiagonal();
    s.topLeftCorner<2, 2>() = ch * Eigen::Matrix2d::Identity();
    s.bottomRightCorner<2, 2>() = ch * Eigen::Matrix2d::Identity();
    s.topRightCorner<2, 2>() = sh * z;
    s.bottomLeftCorner<2, 2>() = sh * z;
    Eigen::Vector4d diag(n1 + 0.5, n1 + 0.5, n2 + 0.5, n2 + 0.5);
    Eigen::Matrix4d expect = s * diag.asDiagonal() * s.transpose();

    CHECK(mean.cwiseAbs().maxCoeff() < 1e-10);
    CHECK((cm - expect).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("beam_splitter_block: unitary on every kept sector") {
    for (int n : {1, 5, 20, 60}) {
        for (double eta : {0.0, 0.3, 0.7, 1.0}) {
            auto u = beam_splitter_block(n, eta);
            const double dev =
                (u * u.transpose() - Eigen::MatrixXd::Identity(n + 1, n + 1))
                    .cwiseAbs()
                    .maxCoeff();
            CHECK(dev < 1e-10);
        }
    }
}

TEST_CASE("fock_thermal_loss: transparent and fully reflective limits") {
    auto in = fock_coherent(Cplx(0.8, 0.2), 32);
    auto out = fock_thermal_loss(1.0, 1.5, in);
    // Transparent up to the environment tail at this cutoff.
    CHECK((out.data - in.data).cwiseAbs().maxCoeff() < out.tail);

    auto swapped = fock_thermal_loss(0.0, 1.0, in);
    auto th = fock_thermal(1.0, 32);
    CHECK((swapped.data - th.data).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("fock_thermal_loss: first-moment bookkeeping") {
    auto count = [](const FockState& s) {
        double n = 0.0;
        for (int k = 0; k < s.cutoff; ++k) n += k * s.data(k, k).real();
        return n;
    };
    auto in = fock_coherent(Cplx(1.0, 0.0), 40);  // n_in = 1
    for (double eta : {0.25, 0.5, 0.9}) {
        auto out = fock_thermal_loss(eta, 1.0, in);
        CHECK(count(out) == doctest::Approx(eta * 1.0 + (1.0 - eta) * 1.0).epsilon(1e-6));
        CHECK(out.data.trace().real() >= 1.0 - out.tail - 1e-12);
        CHECK(out.data.trace().real() <= 1.0 + 1e-12);
    }
    auto vac = fock_thermal(0.0, 40);
    auto out = fock_thermal_loss(0.5, 1.0, vac);
    CHECK(count(out) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("fock_thermal_loss: agrees with moments of the Gaussian route") {
    const double eta = 0.6, nb = 0.8;
    auto out = fock_thermal_loss(eta, nb, fock_coherent(Cplx(0.5, -0.3), 40));
    auto [mean, cm] = fock_moments(out);

    auto gs = apply_gaussian(thermal_loss_channel(eta, nb),
                             coherent_gaussian({0.5 * std::sqrt(2.0),
                                                -0.3 * std::sqrt(2.0)}));
    CHECK((mean - gs.mean).cwiseAbs().maxCoeff() < 1e-7);
    CHECK((cm - gs.cm).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("fock_thermal_loss: matches the dense embed/mix/trace route") {
    // Small-cutoff cross-check against literally embedding the input with
    // the environment, applying the blocked two-mode unitary and tracing.
    const int c = 10, big = 2 * c - 1;
    const double eta = 0.35, nb = 0.3;
    auto in = fock_coherent(Cplx(0.4, 0.3), c);

    Mat joint = Mat::Zero(big * big, big * big);
    auto th = fock_thermal(nb, c);
    for (int k = 0; k < c; ++k)
        for (int j = 0; j < c; ++j)
            for (int l = 0; l < c; ++l)
                joint(k * big + l, j * big + l) += in.data(k, j) * th.data(l, l);

    Mat bs = Mat::Zero(big * big, big * big);
    for (int n = 0; n <= 2 * c - 2; ++n) {
        auto u = beam_splitter_block(n, eta);
        for (int k = 0; k <= n; ++k)
            for (int j = 0; j <= n; ++j)
                bs(k * big + (n - k), j * big + (n - j)) = u(k, j);
    }
    // Complete the unitary on sectors n > 2c-2 (identity there; the input
    // has no support on them).
    for (int k = 0; k < big; ++k)
        for (int l = 0; l < big; ++l)
            if (k + l > 2 * c - 2) bs(k * big + l, k * big + l) = 1.0;

    Mat mixed = bs * joint * bs.adjoint();
    Mat reduced = partial_trace(mixed, {big, big}, {0});
    Mat cropped = reduced.topLeftCorner(c, c);

    auto out = fock_thermal_loss(eta, nb, in);
    CHECK((out.data - cropped).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("oracle_fidelity: closed-form cross-checks") {
    CHECK(oracle_fidelity(fock_thermal(1.0, 40), fock_thermal(1.0, 40)) ==
          doctest::Approx(1.0).epsilon(1e-9));

    const double f = oracle_fidelity(fock_thermal(0.0, 40), fock_thermal(1.0, 40));
    CHECK(std::abs(f - 1.0 / std::sqrt(2.0)) < 1e-4);

    const double f2 = oracle_fidelity(fock_tmsv(0.5, 40), fock_tmsv(0.6, 40));
    CHECK(std::abs(f2 - gaussian_fidelity(tmsv(0.5), tmsv(0.6))) < 1e-4);
}

TEST_CASE("oracle_fidelity: doubling the cutoff is stable") {
    const double f20 = oracle_fidelity(fock_thermal(0.5, 20), fock_thermal(1.2, 20));
    const double f40 = oracle_fidelity(fock_thermal(0.5, 40), fock_thermal(1.2, 40));
    const double tail20 = fock_thermal(1.2, 20).tail;
    CHECK(std::abs(f40 - f20) < 10.0 * tail20);
}
