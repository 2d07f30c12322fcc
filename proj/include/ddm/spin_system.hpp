#pragma once

#include "ddm/noise_model.hpp"

#include <Eigen/Dense>
#include <complex>

namespace ddm {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Dicke-basis index helpers: basis index k = 0..N holds m = k - N/2.
inline double dicke_m(int n_atoms, int k) { return k - 0.5 * n_atoms; }

/// Density matrix of N two-level atoms restricted to the symmetric subspace
/// j = N/2. Immutable once built.
class CollectiveState {
public:
    CollectiveState(int n_atoms, ComplexMatrix rho);

    int n_atoms() const noexcept { return n_atoms_; }
    double spin() const noexcept { return 0.5 * n_atoms_; }
    int dim() const noexcept { return n_atoms_ + 1; }
    const ComplexMatrix& rho() const noexcept { return rho_; }

private:
    int n_atoms_;
    ComplexMatrix rho_;
};

struct CollectiveOps {
    ComplexMatrix jx, jy, jz;
};

CollectiveOps collective_ops(int n_atoms);

/// Coherent spin state along +x: c_m = 2^{-j} sqrt(binom(2j, j+m)).
CollectiveState css_state(int n_atoms);
Eigen::VectorXd css_amplitudes(int n_atoms);

/// Maximally mixed state I / (N + 1).
CollectiveState maximally_mixed(int n_atoms);

/// Element-wise dephasing map:
///   rho_mn -> exp(-i(m-n) lambda Phi) exp(i(m^2-n^2) Theta) exp(-(m-n)^2 R) rho_mn
/// with the effective twist Theta = Omega - chi t.
CollectiveState evolve(const CollectiveState& state, const DephasingRecord& rec, double lambda = 1.0,
                       double chi = 0.0);

/// Effective twisting angle Omega(t) - chi t.
inline double effective_twist(const DephasingRecord& rec, double chi = 0.0) { return rec.omega_twist - chi * rec.t; }

cplx expectation(const CollectiveState& state, const ComplexMatrix& op);

/// Tr(rho op) for Hermitian op; throws std::logic_error if the imaginary
/// residue exceeds 1e-10 relative to the operator scale.
double expectation_hermitian(const CollectiveState& state, const ComplexMatrix& op);

double purity(const CollectiveState& state);

/// Closed-form moments of the twisted coherent spin state (R = 0, Phi = 0).
struct PureMoments {
    double jx;        // <Jx>
    double jx2;       // <Jx^2>
    double jy2;       // <Jy^2>
    double jz2;       // <Jz^2>
    cplx jp_2jz1;     // <J+ (2Jz + 1)>
    double jp2;       // <J+^2> (real)
};

PureMoments pure_expectations_closed(int n_atoms, double theta);

/// x^p as exp(p ln|x|) with the sign restored. A negative base needs an integer p (std::domain_error otherwise).
double signed_power(double x, double p);

} // namespace ddm
