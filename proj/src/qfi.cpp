#include "ddm/qfi.hpp"

#include "ddm/error.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ddm {

Eigen::Matrix3d c_matrix_mixed(const CollectiveState& state, const CollectiveOps& ops) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(state.rho());
    if (es.info() != Eigen::Success) throw NumericFailure("Hermitian eigensolver failed on the density matrix");
    const Eigen::VectorXd p = es.eigenvalues();
    const ComplexMatrix& v = es.eigenvectors();
    const int d = state.dim();

    // Weight matrix w_ij = (p_i - p_j)^2 / (p_i + p_j) on the support.
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            const double sum = p[i] + p[j];
            const double diff = p[i] - p[j];
            if (sum < 1e-14 || std::abs(diff) < 1e-14) continue;
            w(i, j) = diff * diff / sum;
        }

    const ComplexMatrix* jk[3] = {&ops.jx, &ops.jy, &ops.jz};
    ComplexMatrix rotated[3];
    for (int k = 0; k < 3; ++k) rotated[k] = v.adjoint() * (*jk[k]) * v;

    Eigen::Matrix3d c;
    for (int k = 0; k < 3; ++k)
        for (int l = k; l < 3; ++l) {
            // <i|J_k|j><j|J_l|i> = A_ij * B_ji
            const double val =
                2.0 * (w.array() * (rotated[k].array() * rotated[l].transpose().array()).real()).sum();
            c(k, l) = c(l, k) = val;
        }
    return c;
}

Eigen::Matrix3d c_matrix_pure(const CollectiveState& state, const CollectiveOps& ops) {
    if (purity(state) <= 1.0 - 1e-10) throw std::domain_error("c_matrix_pure requires a pure state");
    const ComplexMatrix* jk[3] = {&ops.jx, &ops.jy, &ops.jz};
    double mean[3];
    for (int k = 0; k < 3; ++k) mean[k] = expectation_hermitian(state, *jk[k]);
    Eigen::Matrix3d c;
    for (int k = 0; k < 3; ++k)
        for (int l = k; l < 3; ++l) {
            const ComplexMatrix anti = (*jk[k]) * (*jk[l]) + (*jk[l]) * (*jk[k]);
            c(k, l) = c(l, k) = 2.0 * expectation_hermitian(state, anti) - 4.0 * mean[k] * mean[l];
        }
    return c;
}

QfiResult qfi_max(const Eigen::Matrix3d& c, int n_atoms) {
    if (n_atoms < 1) throw std::invalid_argument("atom count must be >= 1");
    if ((c - c.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, c.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("C matrix must be symmetric");
    // The iterative solver; the closed-form 3x3 path loses digits on degenerate spectra.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(c);
    QfiResult out;
    out.c_matrix = c;
    out.f_max = es.eigenvalues()(2);
    out.optimal_axis = es.eigenvectors().col(2);
    out.eta = out.f_max / n_atoms;
    return out;
}

double eta_pure_closed(int n_atoms, double theta) {
    if (n_atoms < 2) throw std::invalid_argument("closed-form QFI needs N >= 2");
    const double n = n_atoms;
    const double c2pow = signed_power(std::cos(2.0 * theta), n - 2.0);
    const double a_minus = 1.0 - c2pow;
    const double a_plus = 1.0 + c2pow;
    const double b = -4.0 * std::sin(theta) * signed_power(std::cos(theta), n - 2.0);
    const double yz_branch = 1.0 + 0.25 * (n - 1.0) * (a_minus + std::hypot(a_minus, b));
    const double x_branch = 1.0 + 0.5 * (n - 1.0) * a_plus - n * signed_power(std::cos(theta), 2.0 * n - 2.0);
    return std::max(yz_branch, x_branch);
}

QfiResult qfi_pure_closed(int n_atoms, double theta) {
    const PureMoments mom = pure_expectations_closed(n_atoms, theta);
    Eigen::Matrix3d c = Eigen::Matrix3d::Zero();
    c(0, 0) = 4.0 * (mom.jx2 - mom.jx * mom.jx);
    c(1, 1) = 4.0 * mom.jy2;
    c(2, 2) = 4.0 * mom.jz2;
    // 4 Cov(Jy, Jz) = 2 <JyJz + JzJy> = 2 Im <J+(2Jz+1)>
    c(1, 2) = c(2, 1) = 2.0 * mom.jp_2jz1.imag();
    QfiResult out = qfi_max(c, n_atoms);
    out.f_max = n_atoms * eta_pure_closed(n_atoms, theta);
    out.eta = out.f_max / n_atoms;
    return out;
}

double qcr_bound(double fisher, int n_measurements) {
    if (!(fisher > 0.0)) throw std::invalid_argument("Fisher information must be positive");
    if (n_measurements < 1) throw std::invalid_argument("measurement count must be >= 1");
    return 1.0 / std::sqrt(n_measurements * fisher);
}

} // namespace ddm
