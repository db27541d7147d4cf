// Python bindings. Records that have a JSON form in io.hpp cross the
// boundary as JSON text; the package __init__ turns them into dicts.

#include "dicke/dynamics.hpp"
#include "dicke/eigensolver.hpp"
#include "dicke/errors.hpp"
#include "dicke/experiments.hpp"
#include "dicke/hpx.hpp"
#include "dicke/io.hpp"
#include "dicke/operators.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace dicke;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dicke model / Holstein-Primakoff expansion core";

    auto base = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<CutoffError>(m, "CutoffError", PyExc_RuntimeError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    (void)base;

    py::class_<ModelParams>(m, "ModelParams")
        .def_static("from_g", &ModelParams::from_g, py::arg("n_atoms"), py::arg("delta"), py::arg("omega"), py::arg("g"))
        .def_static("from_lambda", &ModelParams::from_lambda, py::arg("n_atoms"), py::arg("delta"), py::arg("omega"),
                    py::arg("lam"))
        .def_readonly("n_atoms", &ModelParams::n_atoms)
        .def_readonly("delta", &ModelParams::delta)
        .def_readonly("omega", &ModelParams::omega)
        .def_readonly("g", &ModelParams::g)
        .def_property_readonly("lam", &ModelParams::lambda)
        .def_property_readonly("big_omega", &ModelParams::big_omega)
        .def_property_readonly("critical_lambda", &ModelParams::critical_lambda)
        .def_property_readonly("drive_amplitude", &ModelParams::drive_amplitude)
        .def("__repr__", [](const ModelParams& p) { return "ModelParams(" + to_json(p).dump() + ")"; });

    m.def("required_cutoff", &required_cutoff, py::arg("amplitude"));
    m.def("well_cutoff", &well_cutoff, py::arg("n_atoms"));

    m.def(
        "dicke_hamiltonian",
        [](const ModelParams& p, int n_max) { return CMatrix(dicke_hamiltonian(p, build_spec(p.n_atoms, n_max)).entries()); },
        py::arg("params"), py::arg("n_max"));
    m.def(
        "hp_sx_hamiltonian",
        [](const ModelParams& p, int n_max, int c_cutoff, double field_shift) {
            const HilbertSpec spec = with_field_shift(with_spin_cutoff(build_spec(p.n_atoms, n_max), c_cutoff), field_shift);
            return CMatrix(hp_sx_hamiltonian(p, spec).entries());
        },
        py::arg("params"), py::arg("n_max"), py::arg("c_cutoff"), py::arg("field_shift") = 0.0);
    m.def(
        "spectrum",
        [](const ModelParams& p, int n_max, std::optional<int> k) {
            const HilbertSpec spec = build_spec(p.n_atoms, n_max);
            return to_json(diagonalize(dicke_hamiltonian(p, spec), k), p, spec).dump();
        },
        py::arg("params"), py::arg("n_max"), py::arg("k") = std::nullopt);

    m.def("displacement_element", &displacement_element, py::arg("n"), py::arg("n1"), py::arg("x"));
    m.def("leading_energy", &leading_energy, py::arg("params"), py::arg("m"), py::arg("n"));
    m.def(
        "rs_corrections",
        [](const ModelParams& p, int m_level, int n, int order, int n_max, int c_cutoff) {
            const HilbertSpec spec =
                with_field_shift(with_spin_cutoff(build_spec(p.n_atoms, n_max), c_cutoff), p.drive_amplitude());
            return to_json(rs_corrections(p, spec, m_level, n, order)).dump();
        },
        py::arg("params"), py::arg("m"), py::arg("n"), py::arg("order"), py::arg("n_max"), py::arg("c_cutoff"));

    m.def(
        "qamp_record",
        [](const ModelParams& p, double t) {
            const QampRecord r = qamp_record(p, t);
            return py::dict(py::arg("t") = r.t, py::arg("beta") = r.beta, py::arg("xi") = r.xi,
                            py::arg("photon_number") = r.photon_number);
        },
        py::arg("params"), py::arg("t"));
    m.def(
        "cat_record",
        [](const ModelParams& p, double gamma, double phi, double t) {
            const CatEvolutionRecord r = cat_record(p, CatParams{gamma, phi}, t);
            return py::dict(py::arg("t") = r.t, py::arg("branch1_center") = r.branch1_center,
                            py::arg("branch2_center") = r.branch2_center, py::arg("xi") = r.xi, py::arg("phi1") = r.phi1,
                            py::arg("phi2") = r.phi2, py::arg("branch_distance") = r.branch_distance,
                            py::arg("macro_amplitude") = r.macro_amplitude);
        },
        py::arg("params"), py::arg("gamma"), py::arg("phi"), py::arg("t"));
    m.def(
        "macro_ratio",
        [](const ModelParams& p, double gamma, double phi, int samples) {
            const double period = 2.0 * 3.14159265358979323846 / p.omega;
            return macro_ratio(cat_evolution(p, CatParams{gamma, phi}, TimeGrid{0.0, period, samples}));
        },
        py::arg("params"), py::arg("gamma"), py::arg("phi"), py::arg("samples") = 256);

    m.def(
        "qamp_exact_photon_numbers",
        [](const ModelParams& p, int n_max, const std::vector<double>& times) {
            const HilbertSpec spec = with_spin_cutoff(build_spec(p.n_atoms, n_max), 0);
            const SpectralPropagator prop(hp_sx_hamiltonian(p, spec));
            const StateVector psi0 = fock_state(spec, 0, 0);
            std::vector<double> out;
            for (double t : times) out.push_back(photon_number(prop.evolve(psi0, t)));
            return out;
        },
        py::arg("params"), py::arg("n_max"), py::arg("times"));

    m.def(
        "convergence_in_N",
        [](const ModelParams& base, const std::vector<int>& n_list) { return to_json(convergence_in_N(base, n_list)).dump(); },
        py::arg("base"), py::arg("n_list"));
    m.def(
        "convergence_in_g",
        [](const ModelParams& base, const std::vector<double>& g_list) {
            return to_json(convergence_in_g(base, g_list)).dump();
        },
        py::arg("base"), py::arg("g_list"));
    m.def(
        "audit_coherent_state", [](cplx beta, int n_max) { return to_json(audit_coherent_state(beta, n_max)).dump(); },
        py::arg("beta"), py::arg("n_max"));
    m.def(
        "fit_power_law",
        [](const std::vector<double>& x, const std::vector<double>& y) { return to_json(fit_power_law(x, y)).dump(); },
        py::arg("x"), py::arg("y"));
}
