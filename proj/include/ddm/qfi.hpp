#pragma once

#include "ddm/spin_system.hpp"

#include <Eigen/Dense>

namespace ddm {

/// Quantum Fisher information for an SU(2) rotation exp(-i theta J.n).
/// F(n) = n^T C n, maximised by the top eigenvector of C.
struct QfiResult {
    double f_max = 0.0;
    double eta = 0.0; // f_max / N
    Eigen::Matrix3d c_matrix = Eigen::Matrix3d::Zero();
    Eigen::Vector3d optimal_axis = Eigen::Vector3d::UnitX();
};

/// C_kl = sum_{i != j} (p_i - p_j)^2 / (p_i + p_j) * 2 Re(<i|J_k|j><j|J_l|i>)
/// over the eigendecomposition of rho. Pairs with p_i + p_j < 1e-14 or
/// |p_i - p_j| < 1e-14 contribute nothing.
Eigen::Matrix3d c_matrix_mixed(const CollectiveState& state, const CollectiveOps& ops);

/// C_kl = 2 <J_k J_l + J_l J_k> - 4 <J_k><J_l>. Requires purity > 1 - 1e-10
/// (std::domain_error otherwise).
Eigen::Matrix3d c_matrix_pure(const CollectiveState& state, const CollectiveOps& ops);

QfiResult qfi_max(const Eigen::Matrix3d& c, int n_atoms);

/// Closed-form maximal QFI of the twisted coherent spin state (R = 0).
/// The C matrix is block diagonal: 4 Var(Jx) alone, plus a y-z block.
QfiResult qfi_pure_closed(int n_atoms, double theta);

/// Amplification rate eta of the closed form, i.e. qfi_pure_closed(..).eta.
double eta_pure_closed(int n_atoms, double theta);

/// Quantum Cramer-Rao bound 1 / sqrt(n_m F).
double qcr_bound(double fisher, int n_measurements = 1);

} // namespace ddm
