#include "ddm/spin_system.hpp"

#include <cmath>
#include <stdexcept>

namespace ddm {

namespace {

void require_atoms(int n_atoms) {
    if (n_atoms < 1) throw std::invalid_argument("atom count must be >= 1");
}

} // namespace

double signed_power(double x, double p) {
    if (x == 0.0) return p == 0.0 ? 1.0 : 0.0;
    const double mag = std::exp(p * std::log(std::abs(x)));
    if (x > 0.0) return mag;
    const double ip = std::round(p);
    if (ip != p) throw std::domain_error("negative base with non-integer exponent");
    return std::fmod(std::abs(ip), 2.0) == 1.0 ? -mag : mag;
}

CollectiveState::CollectiveState(int n_atoms, ComplexMatrix rho) : n_atoms_(n_atoms), rho_(std::move(rho)) {
    require_atoms(n_atoms);
    if (rho_.rows() != n_atoms + 1 || rho_.cols() != n_atoms + 1)
        throw std::invalid_argument("density matrix must be (N+1) x (N+1)");
}

CollectiveOps collective_ops(int n_atoms) {
    require_atoms(n_atoms);
    const int d = n_atoms + 1;
    const double j = 0.5 * n_atoms;
    ComplexMatrix jp = ComplexMatrix::Zero(d, d);
    ComplexMatrix jz = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        const double m = dicke_m(n_atoms, k);
        jz(k, k) = m;
        if (k + 1 < d) jp(k + 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    const ComplexMatrix jm = jp.adjoint();
    CollectiveOps ops;
    ops.jx = 0.5 * (jp + jm);
    ops.jy = cplx(0.0, -0.5) * (jp - jm);
    ops.jz = std::move(jz);
    return ops;
}

Eigen::VectorXd css_amplitudes(int n_atoms) {
    require_atoms(n_atoms);
    Eigen::VectorXd c(n_atoms + 1);
    const double log_norm = -0.5 * n_atoms * std::log(2.0);
    const double lg_n = std::lgamma(n_atoms + 1.0);
    for (int k = 0; k <= n_atoms; ++k) {
        // k = j + m
        const double log_binom = lg_n - std::lgamma(k + 1.0) - std::lgamma(n_atoms - k + 1.0);
        c[k] = std::exp(log_norm + 0.5 * log_binom);
    }
    return c / c.norm(); // shed lgamma rounding
}

CollectiveState css_state(int n_atoms) {
    const Eigen::VectorXd c = css_amplitudes(n_atoms);
    const Eigen::VectorXcd psi = c.cast<cplx>();
    return CollectiveState(n_atoms, psi * psi.adjoint());
}

CollectiveState maximally_mixed(int n_atoms) {
    require_atoms(n_atoms);
    const int d = n_atoms + 1;
    return CollectiveState(n_atoms, ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

CollectiveState evolve(const CollectiveState& state, const DephasingRecord& rec, double lambda, double chi) {
    if (!(rec.r >= 0.0)) throw std::invalid_argument("decoherence function must be non-negative");
    const int n_atoms = state.n_atoms();
    const int d = state.dim();
    const double theta = effective_twist(rec, chi);
    const double phase = lambda * rec.phi_integral;
    ComplexMatrix out = state.rho();
    for (int col = 0; col < d; ++col) {
        const double n = dicke_m(n_atoms, col);
        for (int row = 0; row < d; ++row) {
            if (row == col) continue;
            const double m = dicke_m(n_atoms, row);
            const double diff = m - n;
            const double angle = (m * m - n * n) * theta - diff * phase;
            out(row, col) *= std::polar(std::exp(-diff * diff * rec.r), angle);
        }
    }
    return CollectiveState(n_atoms, std::move(out));
}

cplx expectation(const CollectiveState& state, const ComplexMatrix& op) {
    if (op.rows() != state.dim() || op.cols() != state.dim())
        throw std::invalid_argument("operator dimension does not match the state");
    // Tr(rho op) = sum_ij rho_ij op_ji
    return (state.rho().transpose().array() * op.array()).sum();
}

double expectation_hermitian(const CollectiveState& state, const ComplexMatrix& op) {
    const cplx v = expectation(state, op);
    const double scale = std::max(1.0, op.cwiseAbs().maxCoeff());
    if (std::abs(v.imag()) > 1e-10 * scale)
        throw std::logic_error("expectation of a Hermitian operator has a non-negligible imaginary part");
    return v.real();
}

double purity(const CollectiveState& state) {
    return state.rho().cwiseAbs2().sum();
}

PureMoments pure_expectations_closed(int n_atoms, double theta) {
    if (n_atoms < 2) throw std::invalid_argument("closed-form moments need N >= 2");
    const double j = 0.5 * n_atoms;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double c2pow = signed_power(std::cos(2.0 * theta), 2.0 * j - 2.0);
    const double cpow = signed_power(c, 2.0 * j - 2.0);

    PureMoments out{};
    out.jx = j * signed_power(c, 2.0 * j - 1.0);
    out.jx2 = 0.25 * j * (2.0 * j + 1.0) + 0.25 * j * (2.0 * j - 1.0) * c2pow;
    out.jy2 = 0.25 * j * (2.0 * j + 1.0) - 0.25 * j * (2.0 * j - 1.0) * c2pow;
    out.jz2 = 0.5 * j;
    out.jp2 = j * (j - 0.5) * c2pow;
    out.jp_2jz1 = cplx(0.0, -2.0 * j * (j - 0.5) * cpow * s);
    return out;
}

} // namespace ddm
