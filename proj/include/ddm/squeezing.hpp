#pragma once

#include "ddm/noise_model.hpp"
#include "ddm/spin_system.hpp"

#include <functional>

namespace ddm {

/// Kitagawa-Ueda squeezing parameter and the quadrature angle achieving it.
/// psi_opt lies in [0, pi) and is measured from n1 towards n2, where for a
/// mean spin along +x n1 = y and n2 = z.
struct SqueezingResult {
    double xi2 = 1.0;
    double psi_opt = 0.0;
};

/// Dephased one-axis-twisting formula for the coherent spin state:
///   A = 1 - cos^{2j-2}(2 Theta) e^{-4R},  B = -4 sin(Theta) cos^{2j-2}(Theta) e^{-R}
///   xi2 = 1 + (2j - 1)/4 (A - sqrt(A^2 + B^2))
SqueezingResult squeezing_analytic(int n_atoms, double theta, double r);
SqueezingResult squeezing_analytic(int n_atoms, const DephasingRecord& rec, double chi = 0.0);

/// Squeezing from the state itself: covariance of the two quadratures
/// orthogonal to the mean spin. Throws std::domain_error if |<J>| < 1e-10.
SqueezingResult squeezing_numeric(const CollectiveState& state, const CollectiveOps& ops);
SqueezingResult squeezing_numeric(const CollectiveState& state);

/// Large-j optimum (3 / 4j) (2j / 3)^{1/3}.
double squeezing_limit(int n_atoms);

struct ScalarMinimum {
    double x = 0.0;
    double value = 0.0;
};

/// Coarse scan over [lo, hi] with `points` samples, then golden-section
/// refinement around the best sample.
ScalarMinimum minimize_scan_golden(const std::function<double(double)>& fn, double lo, double hi, int points = 400,
                                   double x_tol = 1e-10);

} // namespace ddm
