#pragma once

// Brute-force reference computations. These deliberately avoid the closed
// forms used by the library so the two routes can be compared.

#include "ddm/pulse_sequences.hpp"
#include "ddm/spin_system.hpp"

#include <Eigen/Dense>

namespace ddm::oracle {

/// Iterated composite Gauss-Legendre evaluation of
/// int_0^t ds int_0^s ds' eps(s) eps(s') sin w(s - s'), with eps sampled
/// through modulation().
double f_kernel_double_integral(const PulseSequence& seq, double omega);

/// |int_0^t e^{iws} eps(s) ds|^2 / 2 by composite Gauss-Legendre.
double filter_direct(const PulseSequence& seq, double omega);

/// Operator-level dephasing evolution: twist by expm(i theta Jz^2), phase by
/// expm(-i lambda_phi Jz), then average expm(-i phi Jz) rho expm(i phi Jz)
/// over phi ~ Normal(0, 2R) by trapezoid quadrature.
ComplexMatrix evolve_operator_level(const ComplexMatrix& rho0, int n_atoms, double theta, double r,
                                    double lambda_phi);

/// exp(-i angle J.axis) rho exp(i angle J.axis) via the matrix exponential.
CollectiveState rotate(const CollectiveState& state, const Eigen::Vector3d& axis, double angle);

} // namespace ddm::oracle
