#include "ddm/noise_model.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

using namespace ddm;
using doctest::Approx;

TEST_SUITE("noise_model") {

TEST_CASE("spectral densities") {
    const NoiseSpec cold{0.1, 1.0, 0.0};
    CHECK(spectral_density(cold, 0.0) == 0.0);
    CHECK(spectral_density(cold, 1.0) == Approx(0.1 * std::exp(-1.0)));
    CHECK(spectral_density(cold, 1.0) == Approx(0.036788).epsilon(1e-5));
    CHECK(interacting_spectrum(cold, 0.7) == spectral_density(cold, 0.7));

    const NoiseSpec warm{0.1, 1.0, 1.0};
    CHECK(interacting_spectrum(warm, 0.0) == Approx(0.2));
    CHECK(interacting_spectrum(warm, 1e-9) == Approx(0.2));
    CHECK(interacting_spectrum(warm, 2.0) == Approx(0.035541).epsilon(1e-5));
    CHECK(interacting_spectrum(warm, 2.0) == Approx(0.2 * std::exp(-2.0) / std::tanh(1.0)));
    // Series and direct branches meet.
    CHECK(interacting_spectrum(warm, 1.99e-4) == Approx(interacting_spectrum(warm, 2.01e-4)).epsilon(1e-6));
    CHECK_THROWS_AS(spectral_density(cold, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(interacting_spectrum(warm, -1.0), std::invalid_argument);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS((NoiseSpec{-0.1, 1.0, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((NoiseSpec{0.1, 0.0, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((NoiseSpec{0.1, 1.0, -1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS(decoherence_R(NoiseSpec{0.1, 1.0, -1.0}, free_evolution(1.0)), std::invalid_argument);
}

TEST_CASE("free evolution closed forms") {
    const NoiseSpec cold{0.1, 1.0, 0.0};
    CHECK(decoherence_R(cold, free_evolution(1.0)) == Approx(0.05 * std::log(2.0)).epsilon(1e-10));
    CHECK(decoherence_R(cold, free_evolution(1.0)) == Approx(0.034657).epsilon(1e-5));
    CHECK(twisting_Omega(cold, free_evolution(10.0)) == Approx(0.1 * (10.0 - std::atan(10.0))).epsilon(1e-10));
    CHECK(twisting_Omega(cold, free_evolution(10.0)) == Approx(0.852887).epsilon(1e-6));
    CHECK(free_Omega_closed(cold, 0.0) == 0.0);
    CHECK(free_R_closed(cold, 0.0) == 0.0);
    CHECK(free_R_closed(NoiseSpec{0.1, 1.0, 2.0}, 0.0) == 0.0);
    // Asymptote alpha (omega_c t - pi/2).
    CHECK(free_Omega_closed(cold, 1e6) == Approx(0.1 * (1e6 - std::acos(-1.0) / 2.0)).epsilon(1e-12));
    CHECK(free_R_closed(cold, 3.0) == Approx(0.05 * std::log(10.0)));
}

TEST_CASE("finite-temperature closed form is a low-temperature result") {
    const NoiseSpec spec{0.1, 1.0, 0.01};
    for (double t : {0.1, 0.5, 2.0, 10.0, 30.0, 50.0}) {
        const double q = decoherence_R(spec, free_evolution(t));
        CHECK(free_R_closed(spec, t) == Approx(q).epsilon(0.01));
    }
    // At T = omega_c the reduced form is visibly off.
    const NoiseSpec hot{0.1, 1.0, 1.0};
    CHECK(std::abs(free_R_closed(hot, 1.0) / decoherence_R(hot, free_evolution(1.0)) - 1.0) > 0.01);
}

TEST_CASE("zero time gives zero record") {
    const NoiseSpec spec{0.1, 1.0, 1.0};
    for (auto family : {SequenceFamily::Free, SequenceFamily::PDD, SequenceFamily::UDD}) {
        const DephasingRecord rec = dephasing_record(spec, family, 4, 0.0);
        CHECK(rec.r == 0.0);
        CHECK(rec.omega_twist == 0.0);
        CHECK(rec.phi_integral == 0.0);
    }
    // Vanishing duration through the quadrature route.
    CHECK(decoherence_R(spec, udd_times(3, 1e-7)) == Approx(0.0).scale(1e-12));
    CHECK(twisting_Omega(spec, udd_times(3, 1e-7)) == Approx(0.0).scale(1e-12));
}

TEST_CASE("R grows with temperature; Omega ignores it") {
    for (auto seq : {free_evolution(3.0), pdd_times(4, 5.0), udd_times(10, 8.0)}) {
        double prev = -1.0;
        const double omega0 = twisting_Omega(NoiseSpec{0.05, 1.0, 0.0}, seq);
        for (double temp : {0.0, 0.1, 0.5, 1.0, 3.0}) {
            const NoiseSpec spec{0.05, 1.0, temp};
            const double r = decoherence_R(spec, seq);
            CHECK(r >= 0.0);
            CHECK(r >= prev);
            prev = r;
            CHECK(twisting_Omega(spec, seq) == omega0);
        }
    }
}

TEST_CASE("dynamical decoupling suppresses decoherence") {
    const NoiseSpec spec{0.1, 1.0, 1.0};
    for (double t : {0.5, 2.0, 5.0, 10.0, 15.0, 20.0})
        CHECK(decoherence_R(spec, udd_times(50, t)) < decoherence_R(spec, free_evolution(t)));
    // Near zero for t <= 10; the tail rises by t = 20.
    for (double t : {1.0, 5.0, 10.0}) CHECK(decoherence_R(spec, udd_times(50, t)) < 1e-3);
}

TEST_CASE("twisting under many Uhrig pulses is strongly suppressed") {
    const NoiseSpec spec{0.1, 1.0, 1.0};
    const double w10 = twisting_Omega(spec, udd_times(50, 10.0));
    const double w20 = twisting_Omega(spec, udd_times(50, 20.0));
    CHECK(std::abs(w10) < 0.02);
    CHECK(std::abs(w20) > std::abs(w10));
    CHECK(std::abs(w20) < twisting_Omega(spec, free_evolution(20.0)));
}

TEST_CASE("record carries all fields") {
    const NoiseSpec spec{0.1, 1.0, 1.0};
    const DephasingRecord rec = dephasing_record(spec, SequenceFamily::PDD, 2, 3.0);
    CHECK(rec.t == 3.0);
    CHECK(rec.phi_integral == Approx(1.0));
    CHECK(rec.r == Approx(decoherence_R(spec, pdd_times(2, 3.0))));
    CHECK(rec.omega_twist == Approx(twisting_Omega(spec, pdd_times(2, 3.0))));
    CHECK(decoherence_R_detail(spec, pdd_times(2, 3.0)).error_estimate <= 1e-8 * rec.r + 1e-12);
}

} // TEST_SUITE
