#pragma once

#include <functional>
#include <limits>

namespace ddm {

struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_floor = 1e-12;
    int max_panels = 4096;

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;      // panels after adaptive refinement
    int evaluations = 0; // integrand calls
};

using Integrand = std::function<double(double)>;

/// Integrates an exponentially damped, possibly oscillatory integrand over
/// (0, upper]. The domain is cut into panels no wider than
/// min(pi / oscillation_scale, cutoff_scale); each panel gets a 15-point
/// Gauss-Kronrod rule, and the panel with the largest error is bisected until
/// the summed error meets rel_tol * |value| + abs_floor.
///
/// With upper = +inf the panel march stops once it is past 10 * cutoff_scale
/// and three consecutive panels each contribute less than abs_floor / 100 in
/// absolute value.
///
/// Throws NumericFailure (with the partial value) when the panel budget is
/// exhausted.
QuadratureResult integrate_semi_infinite(const Integrand& integrand, double cutoff_scale,
                                         double oscillation_scale, const QuadratureSpec& spec = {},
                                         double upper = std::numeric_limits<double>::infinity());

/// Single 15-point Gauss-Kronrod panel with the embedded 7-point Gauss error
/// estimate. Exposed for tests.
struct PanelEstimate {
    double value;
    double error;
    double abs_value; // integral of |f|, used for termination heuristics
};
PanelEstimate gauss_kronrod_15(const Integrand& integrand, double a, double b);

} // namespace ddm
