#include "ddm/self_check.hpp"

#include "ddm/noise_model.hpp"
#include "ddm/oracles.hpp"
#include "ddm/pulse_sequences.hpp"
#include "ddm/qfi.hpp"
#include "ddm/spin_system.hpp"
#include "ddm/squeezing.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

namespace ddm {

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

CheckResult worst_case(std::string name, double worst, double tol) {
    return {std::move(name), worst <= tol, "max error " + sci(worst) + " (tolerance " + sci(tol) + ")"};
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return g;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

} // namespace

std::vector<CheckResult> run_self_checks() {
    std::vector<CheckResult> out;
    const NoiseSpec zero_t{0.1, 1.0, 0.0};

    {
        double worst = 0.0;
        for (double t : log_grid(0.01, 50.0, 20))
            worst = std::max(worst, rel_err(twisting_Omega(zero_t, free_evolution(t)), free_Omega_closed(zero_t, t)));
        out.push_back(worst_case("free Omega: quadrature vs closed form", worst, 1e-8));
    }
    {
        double worst = 0.0;
        for (double t : log_grid(0.01, 50.0, 20))
            worst = std::max(worst, rel_err(decoherence_R(zero_t, free_evolution(t)), free_R_closed(zero_t, t)));
        out.push_back(worst_case("free R at T=0: quadrature vs closed form", worst, 1e-8));
    }
    {
        double worst = 0.0;
        for (int n : {0, 1, 2, 5})
            for (double omega : {0.3, 2.0, 6.0}) {
                const PulseSequence seq = udd_times(n, 2.5);
                worst = std::max(worst, std::abs(f_kernel(seq, omega) - oracle::f_kernel_double_integral(seq, omega)));
            }
        out.push_back(worst_case("twisting kernel vs double integral", worst, 1e-6));
    }
    {
        double worst = 0.0;
        for (int n = 0; n < 10; ++n)
            for (double omega : log_grid(0.05, 40.0, 15)) {
                const double t = 3.7;
                const double arg = omega * t / (2.0 * n + 2.0);
                if (std::abs(std::cos(arg)) < 1e-3) continue;
                worst = std::max(worst, rel_err(pdd_filter_closed(n, omega, t), filter_function(pdd_times(n, t), omega)));
            }
        out.push_back(worst_case("periodic filter closed form vs generic sum", worst, 1e-10));
    }
    {
        double worst = 0.0;
        const NoiseSpec bath{0.01, 1.0, 1.0};
        for (int n_atoms : {10, 40})
            for (double t : {2.0, 8.0, 15.0}) {
                const DephasingRecord rec = dephasing_record(bath, udd_times(20, t));
                const double numeric = squeezing_numeric(evolve(css_state(n_atoms), rec)).xi2;
                worst = std::max(worst, std::abs(numeric - squeezing_analytic(n_atoms, rec).xi2));
            }
        out.push_back(worst_case("squeezing: state covariance vs analytic formula", worst, 1e-8));
    }
    {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> dist(0.0, 10.0);
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) worst = std::max(worst, std::abs(squeezing_analytic(200, 0.0, dist(rng)).xi2 - 1.0));
        out.push_back(worst_case("no twist, no squeezing", worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (int n_atoms : {4, 12, 30})
            for (double theta : {0.0, 0.03, 0.2, 0.7}) {
                DephasingRecord rec;
                rec.omega_twist = theta;
                const CollectiveState s = evolve(css_state(n_atoms), rec);
                const CollectiveOps ops = collective_ops(n_atoms);
                const Eigen::Matrix3d pure = c_matrix_pure(s, ops);
                worst = std::max(worst, (c_matrix_mixed(s, ops) - pure).cwiseAbs().maxCoeff());
                worst = std::max(worst, std::abs(qfi_max(pure, n_atoms).f_max - qfi_pure_closed(n_atoms, theta).f_max));
            }
        out.push_back(worst_case("QFI: mixed vs pure vs closed form", worst, 1e-8));
    }
    {
        double worst = 0.0;
        for (int n_atoms : {2, 10, 100}) {
            const QfiResult r = qfi_max(c_matrix_mixed(css_state(n_atoms), collective_ops(n_atoms)), n_atoms);
            worst = std::max(worst, std::abs(r.f_max - n_atoms) / n_atoms);
        }
        out.push_back(worst_case("QFI of coherent spin state equals N", worst, 1e-10));
    }
    {
        double worst = 0.0;
        for (double n : {10.0, 200.0}) {
            worst = std::max(worst, std::abs(qcr_bound(n, 1) - 1.0 / std::sqrt(n)));
            worst = std::max(worst, std::abs(qcr_bound(n * n / 2.0, 1) - std::sqrt(2.0) / n));
        }
        out.push_back(worst_case("Cramer-Rao endpoints", worst, 1e-12));
    }
    return out;
}

} // namespace ddm
