#include "ddm/noise_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ddm {

namespace {

void require_omega(double omega) {
    if (!(omega >= 0.0) || !std::isfinite(omega))
        throw std::invalid_argument("angular frequency must be non-negative and finite");
}

// ln(sinh(x) / x) without overflow or cancellation.
double log_sinhc(double x) {
    if (x < 1e-3) {
        const double x2 = x * x;
        return x2 / 6.0 - x2 * x2 / 180.0;
    }
    if (x > 20.0) return x - std::log(2.0 * x) + std::log1p(-std::exp(-2.0 * x));
    return std::log(std::sinh(x) / x);
}

// Upper integration limit. Beyond it the integrand's envelope tail,
// amplitude * omega_c * exp(-W / omega_c) / W^power, drops below target.
double envelope_cutoff(double amplitude, double omega_c, int power, double target, double start) {
    double w = std::max(start, omega_c);
    for (int iter = 0; iter < 200; ++iter) {
        const double tail = amplitude * omega_c * std::exp(-w / omega_c) / std::pow(w, power);
        if (tail < target) return w;
        w += omega_c;
    }
    return w;
}

// Hard cap on the frequency domain; tracks the pulse density.
double domain_cap(const NoiseSpec& spec, const PulseSequence& seq) {
    const double t = seq.duration();
    return 50.0 * std::max(spec.omega_c, 2.0 * std::numbers::pi * (seq.pulse_count() + 1) / t);
}

} // namespace

void NoiseSpec::validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be >= 0");
    if (!(omega_c > 0.0) || !std::isfinite(omega_c)) throw std::invalid_argument("omega_c must be > 0");
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) throw std::invalid_argument("temperature must be >= 0");
}

double spectral_density(const NoiseSpec& spec, double omega) {
    require_omega(omega);
    return spec.alpha * omega * std::exp(-omega / spec.omega_c);
}

double interacting_spectrum(const NoiseSpec& spec, double omega) {
    require_omega(omega);
    if (spec.temperature == 0.0) return spectral_density(spec, omega);
    const double x = 0.5 * omega / spec.temperature; // beta w / 2
    const double damping = spec.alpha * std::exp(-omega / spec.omega_c);
    if (x < 1e-4) return damping * 2.0 * spec.temperature * (1.0 + x * x / 3.0);
    return damping * omega / std::tanh(x);
}

QuadratureResult decoherence_R_detail(const NoiseSpec& spec, const PulseSequence& seq, const QuadratureSpec& quad) {
    spec.validate();
    const double t = seq.duration();
    const double n1 = seq.pulse_count() + 1.0;
    // |F| <= 2(n+1)^2 / w^2 and coth <= coth(W / 2T) at the tail.
    double amp = 2.0 * spec.alpha * n1 * n1;
    if (spec.temperature > 0.0) amp *= 1.0 + 2.0 * spec.temperature / spec.omega_c;
    const double cap = std::min(domain_cap(spec, seq), envelope_cutoff(amp, spec.omega_c, 1, 1e-2 * quad.abs_floor, 1.0));
    const auto integrand = [&](double w) { return interacting_spectrum(spec, w) * filter_function(seq, w); };
    return integrate_semi_infinite(integrand, spec.omega_c, t, quad, cap);
}

QuadratureResult twisting_Omega_detail(const NoiseSpec& spec, const PulseSequence& seq, const QuadratureSpec& quad) {
    spec.validate();
    const double t = seq.duration();
    // |f| <= 2(n+2) t / w.
    const double amp = 2.0 * spec.alpha * (seq.pulse_count() + 2.0) * t;
    const double cap = std::min(domain_cap(spec, seq), envelope_cutoff(amp, spec.omega_c, 0, 1e-2 * quad.abs_floor, 1.0));
    const auto integrand = [&](double w) { return spectral_density(spec, w) * f_kernel(seq, w); };
    return integrate_semi_infinite(integrand, spec.omega_c, t, quad, cap);
}

double decoherence_R(const NoiseSpec& spec, const PulseSequence& seq, const QuadratureSpec& quad) {
    return decoherence_R_detail(spec, seq, quad).value;
}

double twisting_Omega(const NoiseSpec& spec, const PulseSequence& seq, const QuadratureSpec& quad) {
    return twisting_Omega_detail(spec, seq, quad).value;
}

double free_Omega_closed(const NoiseSpec& spec, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("time must be non-negative");
    const double x = spec.omega_c * t;
    return spec.alpha * (x - std::atan(x));
}

double free_R_closed(const NoiseSpec& spec, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("time must be non-negative");
    const double x = spec.omega_c * t;
    double r = 0.5 * std::log1p(x * x);
    if (spec.temperature > 0.0) r += log_sinhc(std::numbers::pi * spec.temperature * t);
    return spec.alpha * r;
}

DephasingRecord dephasing_record(const NoiseSpec& spec, const PulseSequence& seq, const QuadratureSpec& quad) {
    DephasingRecord rec;
    rec.t = seq.duration();
    rec.r = decoherence_R(spec, seq, quad);
    rec.omega_twist = twisting_Omega(spec, seq, quad);
    rec.phi_integral = epsilon_integral(seq);
    return rec;
}

DephasingRecord dephasing_record(const NoiseSpec& spec, SequenceFamily family, int n, double t,
                                 const QuadratureSpec& quad) {
    if (!(t >= 0.0)) throw std::invalid_argument("time must be non-negative");
    if (t == 0.0) {
        spec.validate();
        return {};
    }
    return dephasing_record(spec, make_sequence(family, n, t), quad);
}

} // namespace ddm
