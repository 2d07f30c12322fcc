#include "ddm/squeezing.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ddm {

namespace {

double wrap_half_turn(double psi) {
    psi = std::fmod(psi, std::numbers::pi);
    if (psi < 0.0) psi += std::numbers::pi;
    if (psi >= std::numbers::pi) psi = 0.0;
    return psi;
}

} // namespace

SqueezingResult squeezing_analytic(int n_atoms, double theta, double r) {
    if (n_atoms < 2) throw std::invalid_argument("squeezing needs N >= 2");
    if (!(r >= 0.0)) throw std::invalid_argument("decoherence function must be non-negative");
    const double j = 0.5 * n_atoms;
    const double a = 1.0 - signed_power(std::cos(2.0 * theta), 2.0 * j - 2.0) * std::exp(-4.0 * r);
    const double b = -4.0 * std::sin(theta) * signed_power(std::cos(theta), 2.0 * j - 2.0) * std::exp(-r);
    SqueezingResult out;
    // A - sqrt(A^2 + B^2) = -B^2 / (A + sqrt(A^2 + B^2)) avoids cancellation for A > 0.
    const double root = std::hypot(a, b);
    const double gap = (a > 0.0) ? -(b * b) / (a + root) : a - root;
    out.xi2 = 1.0 + 0.25 * (2.0 * j - 1.0) * gap;
    out.psi_opt = wrap_half_turn(0.5 * (std::numbers::pi + std::atan2(b, a)));
    return out;
}

SqueezingResult squeezing_analytic(int n_atoms, const DephasingRecord& rec, double chi) {
    return squeezing_analytic(n_atoms, effective_twist(rec, chi), rec.r);
}

SqueezingResult squeezing_numeric(const CollectiveState& state, const CollectiveOps& ops) {
    if (state.n_atoms() < 1) throw std::invalid_argument("empty state");
    const Eigen::Vector3d mean(expectation_hermitian(state, ops.jx), expectation_hermitian(state, ops.jy),
                               expectation_hermitian(state, ops.jz));
    const double len = mean.norm();
    if (len < 1e-10) throw std::domain_error("mean spin vanishes; squeezing direction undefined");
    const Eigen::Vector3d n0 = mean / len;

    Eigen::Vector3d n1 = Eigen::Vector3d::UnitZ().cross(n0);
    if (n1.norm() < 1e-8) n1 = n0.cross(Eigen::Vector3d::UnitX());
    n1.normalize();
    const Eigen::Vector3d n2 = n0.cross(n1);

    const ComplexMatrix a = n1.x() * ops.jx + n1.y() * ops.jy + n1.z() * ops.jz;
    const ComplexMatrix b = n2.x() * ops.jx + n2.y() * ops.jy + n2.z() * ops.jz;
    const double ea = expectation_hermitian(state, a);
    const double eb = expectation_hermitian(state, b);
    const ComplexMatrix ab = a * b;
    Eigen::Matrix2d cov;
    cov(0, 0) = expectation_hermitian(state, a * a) - ea * ea;
    cov(1, 1) = expectation_hermitian(state, b * b) - eb * eb;
    cov(0, 1) = cov(1, 0) = expectation_hermitian(state, 0.5 * (ab + ab.adjoint())) - ea * eb;

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
    const Eigen::Vector2d v = es.eigenvectors().col(0);
    SqueezingResult out;
    out.xi2 = 2.0 * es.eigenvalues()(0) / state.spin();
    out.psi_opt = wrap_half_turn(std::atan2(v(1), v(0)));
    return out;
}

SqueezingResult squeezing_numeric(const CollectiveState& state) {
    return squeezing_numeric(state, collective_ops(state.n_atoms()));
}

double squeezing_limit(int n_atoms) {
    if (n_atoms < 2) throw std::invalid_argument("squeezing limit needs N >= 2");
    const double j = 0.5 * n_atoms;
    return 0.75 / j * std::cbrt(2.0 * j / 3.0);
}

ScalarMinimum minimize_scan_golden(const std::function<double(double)>& fn, double lo, double hi, int points,
                                   double x_tol) {
    if (!(hi > lo) || points < 2) throw std::invalid_argument("invalid scan interval");
    const double step = (hi - lo) / (points - 1);
    int best = 0;
    double best_val = fn(lo);
    for (int i = 1; i < points; ++i) {
        const double v = fn(lo + i * step);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    double a = lo + std::max(0, best - 1) * step;
    double b = lo + std::min(points - 1, best + 1) * step;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = fn(c), fd = fn(d);
    while (b - a > x_tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = fn(d);
        }
    }
    ScalarMinimum out{0.5 * (a + b), fn(0.5 * (a + b))};
    if (best_val < out.value) out = {lo + best * step, best_val};
    return out;
}

} // namespace ddm
