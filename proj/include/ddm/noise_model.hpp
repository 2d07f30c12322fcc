#pragma once

#include "ddm/pulse_sequences.hpp"
#include "ddm/quadrature.hpp"

namespace ddm {

/// Ohmic bath J(w) = alpha * w * exp(-w / omega_c) at temperature T
/// (natural units: omega_c sets the frequency scale, k_B = hbar = 1).
struct NoiseSpec {
    double alpha = 0.1;
    double omega_c = 1.0;
    double temperature = 0.0;

    void validate() const;
};

/// R(t), Omega(t) and the phase integral Phi for one (sequence, bath, t) point.
struct DephasingRecord {
    double r = 0.0;
    double omega_twist = 0.0;
    double phi_integral = 0.0;
    double t = 0.0;
};

double spectral_density(const NoiseSpec& spec, double omega);

/// G(w) = J(w) coth(w / 2T); G = J at T = 0 and G -> 2 alpha T as w -> 0.
double interacting_spectrum(const NoiseSpec& spec, double omega);

/// R(t) = int_0^inf G(w) F_n(w, t) dw with t = seq.duration().
double decoherence_R(const NoiseSpec& spec, const PulseSequence& seq, const QuadratureSpec& quad = {});

/// Omega(t) = int_0^inf J(w) f_n(w, t) dw with t = seq.duration().
double twisting_Omega(const NoiseSpec& spec, const PulseSequence& seq, const QuadratureSpec& quad = {});

/// Full quadrature results (value and error estimate).
QuadratureResult decoherence_R_detail(const NoiseSpec& spec, const PulseSequence& seq,
                                      const QuadratureSpec& quad = {});
QuadratureResult twisting_Omega_detail(const NoiseSpec& spec, const PulseSequence& seq,
                                       const QuadratureSpec& quad = {});

/// alpha [omega_c t - arctan(omega_c t)]: Omega(t) without pulses.
double free_Omega_closed(const NoiseSpec& spec, double t);

/// alpha { ln(1 + omega_c^2 t^2)/2 + ln[sinh(pi T t)/(pi T t)] }: R(t) without
/// pulses. Exact at T = 0 (second term absent); approximate for 0 < T << omega_c.
double free_R_closed(const NoiseSpec& spec, double t);

DephasingRecord dephasing_record(const NoiseSpec& spec, const PulseSequence& seq, const QuadratureSpec& quad = {});

/// Same, for a named family; t = 0 yields the all-zero record.
DephasingRecord dephasing_record(const NoiseSpec& spec, SequenceFamily family, int n, double t,
                                 const QuadratureSpec& quad = {});

} // namespace ddm
