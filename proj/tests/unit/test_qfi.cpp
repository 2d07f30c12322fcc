#include "ddm/oracles.hpp"
#include "ddm/qfi.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

using namespace ddm;
using doctest::Approx;

namespace {

DephasingRecord twist(double theta, double r = 0.0) {
    DephasingRecord rec;
    rec.omega_twist = theta;
    rec.r = r;
    return rec;
}

} // namespace

TEST_SUITE("qfi") {

TEST_CASE("coherent spin state sits at the standard quantum limit") {
    for (int n : {2, 10, 100, 200}) {
        const auto r = qfi_max(c_matrix_mixed(css_state(n), collective_ops(n)), n);
        CHECK(r.f_max == Approx(n).epsilon(1e-10));
        CHECK(r.eta == Approx(1.0).epsilon(1e-10));
    }
    const auto c = c_matrix_pure(css_state(30), collective_ops(30));
    CHECK(std::abs(c(0, 0)) < 1e-10);
    CHECK(c(1, 1) == Approx(30.0));
    CHECK(c(2, 2) == Approx(30.0));
}

TEST_CASE("maximally mixed state carries no information") {
    CHECK(c_matrix_mixed(maximally_mixed(8), collective_ops(8)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("largest eigenvalue of the C matrix") {
    Eigen::Matrix3d d = Eigen::Vector3d(1.5, 7.0, 3.0).asDiagonal();
    const auto r = qfi_max(d, 7);
    CHECK(r.f_max == Approx(7.0));
    CHECK(r.eta == Approx(1.0));
    CHECK(std::abs(r.optimal_axis.y()) == Approx(1.0));
    Eigen::Matrix3d bad = Eigen::Matrix3d::Identity();
    bad(0, 1) = 0.5;
    CHECK_THROWS_AS(qfi_max(bad, 3), std::invalid_argument);
    CHECK_THROWS_AS(qfi_max(d, 0), std::invalid_argument);
}

TEST_CASE("pure route needs a pure state") {
    CHECK_THROWS_AS(c_matrix_pure(evolve(css_state(6), twist(0.1, 0.5)), collective_ops(6)), std::domain_error);
}

TEST_CASE("closed form at zero twist is the standard quantum limit") {
    for (int n : {2, 5, 50, 200}) {
        CHECK(eta_pure_closed(n, 0.0) == Approx(1.0));
        CHECK(qfi_pure_closed(n, 0.0).f_max == Approx(n));
    }
}

TEST_CASE("closed form agrees with the matrix route") {
    for (int n : {2, 3, 8, 33})
        for (double theta : {0.0, 0.02, 0.15, 0.5, 0.9, 1.4}) {
            const CollectiveState s = evolve(css_state(n), twist(theta));
            const CollectiveOps ops = collective_ops(n);
            const auto matrix = qfi_max(c_matrix_pure(s, ops), n);
            const auto closed = qfi_pure_closed(n, theta);
            CHECK(closed.f_max == Approx(matrix.f_max).epsilon(1e-10));
            // Block-diagonal C from the moments matches entry by entry.
            CHECK((closed.c_matrix - matrix.c_matrix).cwiseAbs().maxCoeff() < 1e-9 * n * n);
        }
}

TEST_CASE("Heisenberg bound, rotation invariance, dephasing never helps") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 12; ++k) {
        const int n = 2 + static_cast<int>(unit(rng) * 30);
        const double theta = unit(rng);
        const double r = 0.5 * unit(rng);
        const CollectiveOps ops = collective_ops(n);
        const CollectiveState mixed = evolve(css_state(n), twist(theta, r));
        const double f_mixed = qfi_max(c_matrix_mixed(mixed, ops), n).f_max;
        const double f_pure = qfi_max(c_matrix_pure(evolve(css_state(n), twist(theta)), ops), n).f_max;
        CHECK(f_mixed <= static_cast<double>(n) * n + 1e-9);
        CHECK(f_mixed <= f_pure + 1e-9);
        const Eigen::Vector3d axis = Eigen::Vector3d(unit(rng), unit(rng) - 0.5, unit(rng)).normalized();
        const double f_rot = qfi_max(c_matrix_mixed(oracle::rotate(mixed, axis, 2.0 * unit(rng)), ops), n).f_max;
        CHECK(f_rot == Approx(f_mixed).epsilon(1e-8));
    }
}

TEST_CASE("Cramer-Rao bound") {
    CHECK(qcr_bound(200.0) == Approx(1.0 / std::sqrt(200.0)));
    CHECK(qcr_bound(200.0 * 200.0 / 2.0) == Approx(std::sqrt(2.0) / 200.0));
    CHECK(qcr_bound(50.0, 4) == Approx(qcr_bound(50.0, 1) / 2.0));
    CHECK_THROWS_AS(qcr_bound(0.0), std::invalid_argument);
    CHECK_THROWS_AS(qcr_bound(3.0, 0), std::invalid_argument);
}

} // TEST_SUITE
