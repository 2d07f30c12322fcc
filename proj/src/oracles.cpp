#include "ddm/oracles.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace ddm::oracle {

namespace {

using Rule = boost::math::quadrature::gauss<double, 20>;

// Composite 20-point Gauss-Legendre on [a, b] with pieces no wider than h.
double composite(const std::function<double(double)>& f, double a, double b, double h) {
    if (!(b > a)) return 0.0;
    const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / h)));
    const double w = (b - a) / pieces;
    double total = 0.0;
    for (int p = 0; p < pieces; ++p) {
        const double lo = a + p * w;
        total += Rule::integrate(f, lo, lo + w);
    }
    return total;
}

// Splits [a, b] at pulse instants so the integrand is smooth on every piece.
double piecewise(const PulseSequence& seq, const std::function<double(double)>& f, double a, double b, double h) {
    double total = 0.0;
    double lo = a;
    for (double tj : seq.times()) {
        if (tj <= lo) continue;
        if (tj >= b) break;
        total += composite(f, lo, tj, h);
        lo = tj;
    }
    return total + composite(f, lo, b, h);
}

// Sign on the open piece containing s; evaluation points never sit on a pulse.
double eps_at(const PulseSequence& seq, double s) { return static_cast<double>(modulation(seq, s)); }

} // namespace

double f_kernel_double_integral(const PulseSequence& seq, double omega) {
    const double t = seq.duration();
    const double h = std::min(t, 1.0 / std::max(omega, 1e-12));
    const auto inner = [&](double s) {
        const auto g = [&](double sp) { return eps_at(seq, sp) * std::sin(omega * (s - sp)); };
        return eps_at(seq, s) * piecewise(seq, g, 0.0, s, h);
    };
    return piecewise(seq, inner, 0.0, t, h);
}

double filter_direct(const PulseSequence& seq, double omega) {
    const double t = seq.duration();
    const double h = std::min(t, 1.0 / std::max(omega, 1e-12));
    const double re = piecewise(seq, [&](double s) { return eps_at(seq, s) * std::cos(omega * s); }, 0.0, t, h);
    const double im = piecewise(seq, [&](double s) { return eps_at(seq, s) * std::sin(omega * s); }, 0.0, t, h);
    return 0.5 * (re * re + im * im);
}

ComplexMatrix evolve_operator_level(const ComplexMatrix& rho0, int n_atoms, double theta, double r,
                                    double lambda_phi) {
    const CollectiveOps ops = collective_ops(n_atoms);
    const cplx i(0.0, 1.0);
    const ComplexMatrix jz2 = ops.jz * ops.jz;
    const ComplexMatrix u = (i * theta * jz2).exp() * (-i * lambda_phi * ops.jz).exp();
    const ComplexMatrix twisted = u * rho0 * u.adjoint();
    if (r == 0.0) return twisted;

    const double sigma = std::sqrt(2.0 * r);
    const int nodes = 1601;
    const double span = 12.0 * sigma;
    const double step = 2.0 * span / (nodes - 1);
    ComplexMatrix acc = ComplexMatrix::Zero(rho0.rows(), rho0.cols());
    for (int k = 0; k < nodes; ++k) {
        const double phi = -span + k * step;
        const double weight = std::exp(-0.5 * phi * phi / (sigma * sigma)) / (sigma * std::sqrt(2.0 * std::numbers::pi));
        const ComplexMatrix kick = (-i * phi * ops.jz).exp();
        acc += (weight * step) * (kick * twisted * kick.adjoint());
    }
    return acc;
}

CollectiveState rotate(const CollectiveState& state, const Eigen::Vector3d& axis, double angle) {
    const CollectiveOps ops = collective_ops(state.n_atoms());
    const Eigen::Vector3d n = axis.normalized();
    const ComplexMatrix gen = n.x() * ops.jx + n.y() * ops.jy + n.z() * ops.jz;
    const ComplexMatrix u = (cplx(0.0, -angle) * gen).exp();
    return CollectiveState(state.n_atoms(), u * state.rho() * u.adjoint());
}

} // namespace ddm::oracle
