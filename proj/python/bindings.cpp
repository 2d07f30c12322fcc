#include "ddm/dataset_io.hpp"
#include "ddm/error.hpp"
#include "ddm/experiments.hpp"
#include "ddm/noise_model.hpp"
#include "ddm/pulse_sequences.hpp"
#include "ddm/qfi.hpp"
#include "ddm/self_check.hpp"
#include "ddm/spin_system.hpp"
#include "ddm/squeezing.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace ddm;

namespace {

KeyValues to_key_values(const py::dict& d) {
    KeyValues out;
    for (const auto& item : d) out.emplace_back(py::str(item.first), py::str(item.second));
    return out;
}

SweepConfig config_from(const py::dict& settings) {
    SweepConfig c;
    for (const auto& [k, v] : to_key_values(settings)) apply_setting(c, k, v);
    c.validate();
    return c;
}

// Evaluates fn(seq, w) element-wise over a float or array of frequencies.
py::object map_omega(double (*fn)(const PulseSequence&, double), const PulseSequence& seq, const py::object& omega) {
    if (py::isinstance<py::float_>(omega) || py::isinstance<py::int_>(omega)) return py::float_(fn(seq, omega.cast<double>()));
    auto in = py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(omega);
    if (!in) throw py::type_error("omega must be a number or an array of numbers");
    py::array_t<double> out(std::vector<py::ssize_t>(in.shape(), in.shape() + in.ndim()));
    const double* src = in.data();
    double* dst = out.mutable_data();
    for (py::ssize_t i = 0; i < in.size(); ++i) dst[i] = fn(seq, src[i]);
    return out;
}

// {"columns": {name: ndarray}, "order": [names], "metadata": {k: v}}
py::dict to_python(const Dataset& ds) {
    py::dict columns;
    for (std::size_t i = 0; i < ds.names.size(); ++i)
        columns[py::str(ds.names[i])] = py::array_t<double>(ds.columns[i].size(), ds.columns[i].data());
    py::dict meta;
    for (const auto& [k, v] : ds.metadata) meta[py::str(k)] = v;
    py::dict out;
    out["columns"] = columns;
    out["order"] = ds.names;
    out["metadata"] = meta;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Collective-spin metrology under dephasing noise and dynamical decoupling";
    m.attr("__version__") = std::string(kToolVersion);

    py::register_exception<NumericFailure>(m, "NumericFailure", PyExc_ArithmeticError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::enum_<SequenceFamily>(m, "SequenceFamily")
        .value("FREE", SequenceFamily::Free)
        .value("PDD", SequenceFamily::PDD)
        .value("UDD", SequenceFamily::UDD)
        .value("CUSTOM", SequenceFamily::Custom);

    py::class_<PulseSequence>(m, "PulseSequence")
        .def(py::init<std::vector<double>, double, SequenceFamily>(), py::arg("times"), py::arg("duration"),
             py::arg("family") = SequenceFamily::Custom)
        .def_property_readonly("times",
                               [](const PulseSequence& s) { return std::vector<double>(s.times().begin(), s.times().end()); })
        .def_property_readonly("duration", &PulseSequence::duration)
        .def_property_readonly("family", &PulseSequence::family)
        .def_property_readonly("pulse_count", &PulseSequence::pulse_count)
        .def("boundaries", &PulseSequence::boundaries)
        .def("__repr__", [](const PulseSequence& s) {
            return "PulseSequence(" + std::string(to_string(s.family())) + ", n=" + std::to_string(s.pulse_count()) +
                   ", t=" + std::to_string(s.duration()) + ")";
        });

    m.def("free_evolution", &free_evolution, py::arg("t"));
    m.def("pdd_times", &pdd_times, py::arg("n"), py::arg("t"));
    m.def("udd_times", &udd_times, py::arg("n"), py::arg("t"));
    m.def("modulation", &modulation, py::arg("seq"), py::arg("s"));
    m.def("epsilon_integral", &epsilon_integral, py::arg("seq"));
    m.def("filter_function", [](const PulseSequence& s, const py::object& w) { return map_omega(&filter_function, s, w); },
          py::arg("seq"), py::arg("omega"));
    m.def("pdd_filter_closed", &pdd_filter_closed, py::arg("n"), py::arg("omega"), py::arg("t"));
    m.def("udd_filter_approx", &udd_filter_approx, py::arg("n"), py::arg("omega"), py::arg("t"));
    m.def("f_kernel", [](const PulseSequence& s, const py::object& w) { return map_omega(&f_kernel, s, w); },
          py::arg("seq"), py::arg("omega"));

    py::class_<QuadratureSpec>(m, "QuadratureSpec")
        .def(py::init<>())
        .def_readwrite("rel_tol", &QuadratureSpec::rel_tol)
        .def_readwrite("abs_floor", &QuadratureSpec::abs_floor)
        .def_readwrite("max_panels", &QuadratureSpec::max_panels);

    py::class_<NoiseSpec>(m, "NoiseSpec")
        .def(py::init([](double alpha, double omega_c, double temperature) {
                 NoiseSpec s{alpha, omega_c, temperature};
                 s.validate();
                 return s;
             }),
             py::arg("alpha") = 0.1, py::arg("omega_c") = 1.0, py::arg("temperature") = 0.0)
        .def_readwrite("alpha", &NoiseSpec::alpha)
        .def_readwrite("omega_c", &NoiseSpec::omega_c)
        .def_readwrite("temperature", &NoiseSpec::temperature);

    py::class_<DephasingRecord>(m, "DephasingRecord")
        .def(py::init([](double r, double omega_twist, double phi_integral, double t) {
                 return DephasingRecord{r, omega_twist, phi_integral, t};
             }),
             py::arg("r") = 0.0, py::arg("omega_twist") = 0.0, py::arg("phi_integral") = 0.0, py::arg("t") = 0.0)
        .def_readwrite("r", &DephasingRecord::r)
        .def_readwrite("omega_twist", &DephasingRecord::omega_twist)
        .def_readwrite("phi_integral", &DephasingRecord::phi_integral)
        .def_readwrite("t", &DephasingRecord::t);

    m.def("spectral_density", &spectral_density, py::arg("spec"), py::arg("omega"));
    m.def("interacting_spectrum", &interacting_spectrum, py::arg("spec"), py::arg("omega"));
    m.def("decoherence_R", &decoherence_R, py::arg("spec"), py::arg("seq"), py::arg("quad") = QuadratureSpec{});
    m.def("twisting_Omega", &twisting_Omega, py::arg("spec"), py::arg("seq"), py::arg("quad") = QuadratureSpec{});
    m.def("free_Omega_closed", &free_Omega_closed, py::arg("spec"), py::arg("t"));
    m.def("free_R_closed", &free_R_closed, py::arg("spec"), py::arg("t"));
    m.def("dephasing_record",
          py::overload_cast<const NoiseSpec&, const PulseSequence&, const QuadratureSpec&>(&dephasing_record),
          py::arg("spec"), py::arg("seq"), py::arg("quad") = QuadratureSpec{});

    py::class_<CollectiveState>(m, "CollectiveState")
        .def(py::init<int, ComplexMatrix>(), py::arg("n_atoms"), py::arg("rho"))
        .def_property_readonly("n_atoms", &CollectiveState::n_atoms)
        .def_property_readonly("spin", &CollectiveState::spin)
        .def_property_readonly("rho", &CollectiveState::rho);

    m.def("collective_ops", [](int n) {
        CollectiveOps ops = collective_ops(n);
        return py::make_tuple(ops.jx, ops.jy, ops.jz);
    }, py::arg("n_atoms"));
    m.def("css_state", &css_state, py::arg("n_atoms"));
    m.def("maximally_mixed", &maximally_mixed, py::arg("n_atoms"));
    m.def("evolve", &evolve, py::arg("state"), py::arg("record"), py::arg("lam") = 1.0, py::arg("chi") = 0.0);
    m.def("purity", &purity, py::arg("state"));
    m.def("expectation", &expectation, py::arg("state"), py::arg("op"));

    py::class_<SqueezingResult>(m, "SqueezingResult")
        .def_readonly("xi2", &SqueezingResult::xi2)
        .def_readonly("psi_opt", &SqueezingResult::psi_opt);
    m.def("squeezing_analytic", py::overload_cast<int, double, double>(&squeezing_analytic), py::arg("n_atoms"),
          py::arg("theta"), py::arg("r"));
    m.def("squeezing_numeric", py::overload_cast<const CollectiveState&>(&squeezing_numeric), py::arg("state"));
    m.def("squeezing_limit", &squeezing_limit, py::arg("n_atoms"));

    py::class_<QfiResult>(m, "QfiResult")
        .def_readonly("f_max", &QfiResult::f_max)
        .def_readonly("eta", &QfiResult::eta)
        .def_readonly("c_matrix", &QfiResult::c_matrix)
        .def_readonly("optimal_axis", &QfiResult::optimal_axis);
    m.def("c_matrix_mixed", [](const CollectiveState& s) { return c_matrix_mixed(s, collective_ops(s.n_atoms())); },
          py::arg("state"));
    m.def("c_matrix_pure", [](const CollectiveState& s) { return c_matrix_pure(s, collective_ops(s.n_atoms())); },
          py::arg("state"));
    m.def("qfi_max", &qfi_max, py::arg("c"), py::arg("n_atoms"));
    m.def("qfi_pure_closed", &qfi_pure_closed, py::arg("n_atoms"), py::arg("theta"));
    m.def("eta_pure_closed", &eta_pure_closed, py::arg("n_atoms"), py::arg("theta"));
    m.def("qcr_bound", &qcr_bound, py::arg("fisher"), py::arg("n_measurements") = 1);

    m.def("sweep_config_keys", &sweep_config_keys);
    m.def("run_sweep", [](const py::dict& settings) {
        const SweepConfig c = config_from(settings);
        Dataset ds;
        {
            py::gil_scoped_release release;
            ds = run_sweep(c);
        }
        return to_python(ds);
    }, py::arg("settings") = py::dict(), "Run a sweep; settings use the config-file keys.");
    m.def("run_figure", [](const std::string& id, const py::dict& overrides) {
        const KeyValues kv = to_key_values(overrides);
        Dataset ds;
        {
            py::gil_scoped_release release;
            ds = run_figure(id, kv);
        }
        return to_python(ds);
    }, py::arg("figure_id"), py::arg("overrides") = py::dict());
    m.def("self_checks", [] {
        std::vector<std::tuple<std::string, bool, std::string>> out;
        for (const auto& r : run_self_checks()) out.emplace_back(r.name, r.passed, r.detail);
        return out;
    });
}
