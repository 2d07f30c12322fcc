#include "ddm/error.hpp"
#include "ddm/quadrature.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

using namespace ddm;
using doctest::Approx;

TEST_SUITE("quadrature") {

TEST_CASE("closed-form integrals") {
    const double t1 = 1.0;
    const auto r_free = [&](double w) { return w == 0.0 ? 0.0 : std::exp(-w) * (1.0 - std::cos(w * t1)) / w; };
    const auto r = integrate_semi_infinite(r_free, 1.0, t1);
    CHECK(r.value == Approx(0.5 * std::log(2.0)).epsilon(1e-10));
    CHECK(std::abs(r.value - 0.5 * std::log(2.0)) <= r.error_estimate + 1e-15);

    const double t10 = 10.0;
    const auto omega_free = [&](double w) {
        if (w * t10 < 1e-4) return std::exp(-w) * w * t10 * t10 * t10 / 6.0;
        return std::exp(-w) * (w * t10 - std::sin(w * t10)) / w;
    };
    const auto o = integrate_semi_infinite(omega_free, 1.0, t10);
    CHECK(o.value == Approx(10.0 - std::atan(10.0)).epsilon(1e-10));
    CHECK(std::abs(o.value - (10.0 - std::atan(10.0))) <= o.error_estimate + 1e-14);

    const auto e = integrate_semi_infinite([](double w) { return std::exp(-w); }, 1.0, 0.0);
    CHECK(e.value == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("finite upper limit") {
    const auto r = integrate_semi_infinite([](double w) { return std::cos(w); }, 1.0, 3.0, {}, std::numbers::pi / 2.0);
    CHECK(r.value == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("error estimate meets the requested tolerance") {
    QuadratureSpec spec;
    spec.rel_tol = 1e-10;
    const double t = 30.0;
    const auto f = [&](double w) { return w == 0.0 ? 0.0 : std::exp(-w) * (1.0 - std::cos(w * t)) / w; };
    const auto r = integrate_semi_infinite(f, 1.0, t, spec);
    CHECK(r.error_estimate <= spec.rel_tol * std::abs(r.value) + spec.abs_floor);
    CHECK(std::abs(r.value - 0.5 * std::log1p(t * t)) <= spec.rel_tol * std::abs(r.value));
}

TEST_CASE("result is stable when the panel budget doubles") {
    const double t = 12.0;
    const auto f = [&](double w) { return w == 0.0 ? 0.0 : std::exp(-w) * (1.0 - std::cos(w * t)) / w; };
    QuadratureSpec a;
    QuadratureSpec b;
    b.max_panels = 2 * a.max_panels;
    CHECK(std::abs(integrate_semi_infinite(f, 1.0, t, a).value - integrate_semi_infinite(f, 1.0, t, b).value) <
          a.abs_floor);
}

TEST_CASE("budget exhaustion raises NumericFailure with the partial value") {
    QuadratureSpec spec;
    spec.max_panels = 3;
    spec.rel_tol = 1e-14;
    spec.abs_floor = 1e-300;
    const auto f = [](double w) { return std::exp(-w) * std::abs(std::sin(37.0 * w)); };
    try {
        (void)integrate_semi_infinite(f, 1.0, 0.0, spec, 10.0);
        FAIL("expected NumericFailure");
    } catch (const NumericFailure& e) {
        CHECK(e.partial_value() > 0.0);
        CHECK(e.achieved_error() > 0.0);
    }
}

TEST_CASE("quadrature settings are validated") {
    QuadratureSpec bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = {};
    bad.max_panels = 0;
    CHECK_THROWS_AS(integrate_semi_infinite([](double) { return 0.0; }, 1.0, 1.0, bad), std::invalid_argument);
    CHECK_THROWS_AS(integrate_semi_infinite([](double) { return 0.0; }, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("single panel rule is exact for low-degree polynomials") {
    const auto p = gauss_kronrod_15([](double x) { return 3.0 * x * x * x * x - x + 2.0; }, -1.0, 2.0);
    CHECK(p.value == Approx(3.0 * 33.0 / 5.0 - 1.5 + 6.0).epsilon(1e-14));
}

} // TEST_SUITE
