#include "ddm/oracles.hpp"
#include "ddm/spin_system.hpp"

#include <doctest.h>

#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

using namespace ddm;
using doctest::Approx;

namespace {

DephasingRecord make_rec(double r, double omega, double phi = 0.0, double t = 0.0) {
    DephasingRecord rec;
    rec.r = r;
    rec.omega_twist = omega;
    rec.phi_integral = phi;
    rec.t = t;
    return rec;
}

} // namespace

TEST_SUITE("spin_system") {

TEST_CASE("angular momentum algebra") {
    for (int n : {1, 2, 7, 20}) {
        const CollectiveOps ops = collective_ops(n);
        const ComplexMatrix comm = ops.jx * ops.jy - ops.jy * ops.jx;
        CHECK((comm - cplx(0, 1) * ops.jz).cwiseAbs().maxCoeff() < 1e-12);
        const double j = 0.5 * n;
        const ComplexMatrix cas = ops.jx * ops.jx + ops.jy * ops.jy + ops.jz * ops.jz;
        CHECK((cas - j * (j + 1) * ComplexMatrix::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(ops.jz(0, 0).real() == Approx(dicke_m(n, 0)));
    }
}

TEST_CASE("coherent spin state") {
    const auto c2 = css_amplitudes(2);
    CHECK(c2[0] == Approx(0.5));
    CHECK(c2[1] == Approx(1.0 / std::sqrt(2.0)));
    CHECK(c2[2] == Approx(0.5));
    for (int n : {1, 10, 400, 1000}) CHECK(css_amplitudes(n).norm() == Approx(1.0).epsilon(1e-14));

    const int n = 30;
    const CollectiveState css = css_state(n);
    const CollectiveOps ops = collective_ops(n);
    CHECK(expectation_hermitian(css, ops.jz) == Approx(0.0).scale(1.0));
    CHECK(expectation_hermitian(css, ops.jz * ops.jz) == Approx(n / 4.0));
    CHECK(expectation_hermitian(css, ops.jx) == Approx(n / 2.0));
    CHECK(purity(css) == Approx(1.0));
    CHECK_THROWS_AS(css_state(0), std::invalid_argument);
}

TEST_CASE("maximally mixed state") {
    const CollectiveState mm = maximally_mixed(9);
    const CollectiveOps ops = collective_ops(9);
    CHECK(purity(mm) == Approx(0.1));
    CHECK(std::abs(expectation(mm, ops.jx)) < 1e-14);
    CHECK(std::abs(expectation(mm, ops.jz)) < 1e-14);
}

TEST_CASE("state construction checks") {
    CHECK_THROWS_AS(CollectiveState(3, ComplexMatrix::Identity(3, 3)), std::invalid_argument);
    CHECK_THROWS_AS(evolve(css_state(4), make_rec(-1.0, 0.0)), std::invalid_argument);
    const CollectiveOps ops = collective_ops(3);
    CHECK_THROWS_AS(expectation_hermitian(css_state(3), cplx(0, 1) * ops.jx), std::logic_error);
}

TEST_CASE("identity map and full dephasing") {
    const CollectiveState css = css_state(12);
    CHECK((evolve(css, make_rec(0.0, 0.0)).rho() - css.rho()).cwiseAbs().maxCoeff() == 0.0);
    const CollectiveState dead = evolve(css, make_rec(500.0, 0.3, 0.2));
    const auto c = css_amplitudes(12);
    double expected = 0.0;
    for (int k = 0; k <= 12; ++k) expected += std::pow(c[k], 4);
    CHECK(purity(dead) == Approx(expected).epsilon(1e-12));
}

TEST_CASE("element map matches operator-level evolution") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 6; ++k) {
        const int n = 2 + k * 3;
        const double theta = unit(rng), r = 0.3 * unit(rng), phi = unit(rng);
        const CollectiveState s = evolve(css_state(n), make_rec(r, theta, phi));
        const ComplexMatrix ref = oracle::evolve_operator_level(css_state(n).rho(), n, theta, r, phi);
        CHECK((s.rho() - ref).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("effective twist includes collisions") {
    const DephasingRecord rec = make_rec(0.0, 0.3, 0.0, 2.0);
    CHECK(effective_twist(rec, 0.05) == Approx(0.2));
    const CollectiveState a = evolve(css_state(8), rec, 1.0, 0.05);
    const CollectiveState b = evolve(css_state(8), make_rec(0.0, 0.2, 0.0, 2.0));
    CHECK((a.rho() - b.rho()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("evolution preserves the state invariants") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 40; ++k) {
        const int n = 1 + static_cast<int>(unit(rng) * 40);
        const CollectiveState s0 = css_state(n);
        const CollectiveState s = evolve(s0, make_rec(2.0 * unit(rng), 3.0 * unit(rng), unit(rng)), 0.7);
        CHECK((s.rho() - s.rho().adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(s.rho().trace() - 1.0) < 1e-12);
        CHECK((s.rho().diagonal() - s0.rho().diagonal()).cwiseAbs().maxCoeff() < 1e-15);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s.rho(), Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() > -1e-10);
        CHECK(purity(s) <= 1.0 + 1e-12);
    }
}

TEST_CASE("dephasing lowers purity at fixed phases") {
    const CollectiveState s = evolve(css_state(20), make_rec(0.0, 0.4, 0.3));
    double prev = purity(s);
    for (double r : {0.01, 0.1, 0.5, 2.0}) {
        const double p = purity(evolve(css_state(20), make_rec(r, 0.4, 0.3)));
        CHECK(p < prev);
        prev = p;
    }
}

TEST_CASE("closed-form moments of the twisted state") {
    const auto m0 = pure_expectations_closed(40, 0.0);
    CHECK(m0.jx == Approx(20.0));
    CHECK(m0.jx2 == Approx(400.0));
    CHECK(m0.jy2 == Approx(10.0));
    CHECK(m0.jz2 == Approx(10.0));

    for (int n : {2, 5, 20})
        for (double theta : {0.05, 0.3, 1.1}) {
            const CollectiveState s = evolve(css_state(n), make_rec(0.0, theta));
            const CollectiveOps ops = collective_ops(n);
            const auto m = pure_expectations_closed(n, theta);
            const ComplexMatrix jp = ops.jx + cplx(0, 1) * ops.jy;
            const ComplexMatrix one = ComplexMatrix::Identity(n + 1, n + 1);
            CHECK(m.jx == Approx(expectation_hermitian(s, ops.jx)).epsilon(1e-10));
            CHECK(m.jx2 == Approx(expectation_hermitian(s, ops.jx * ops.jx)).epsilon(1e-10));
            CHECK(m.jy2 == Approx(expectation_hermitian(s, ops.jy * ops.jy)).epsilon(1e-10));
            CHECK(m.jz2 == Approx(expectation_hermitian(s, ops.jz * ops.jz)).epsilon(1e-10));
            const cplx e1 = expectation(s, jp * (2.0 * ops.jz + one));
            CHECK(std::abs(m.jp_2jz1 - e1) < 1e-10 * n * n);
            CHECK(std::abs(m.jp2 - expectation(s, jp * jp)) < 1e-10 * n * n);
            const double j = 0.5 * n;
            CHECK(m.jx2 + m.jy2 + m.jz2 == Approx(j * (j + 1)));
        }
}

TEST_CASE("signed power") {
    CHECK(signed_power(0.0, 3.0) == 0.0);
    CHECK(signed_power(-0.5, 3.0) == Approx(-0.125));
    CHECK(signed_power(0.5, 2.0) == Approx(0.25));
    CHECK(signed_power(-0.5, 2.0) == Approx(0.25));
    CHECK(signed_power(0.3, 1000.0) == 0.0);
}

} // TEST_SUITE
