#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsearch/analysis.hpp"
#include "qsearch/dynamics.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/model.hpp"

namespace py = pybind11;
using namespace qsearch;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexArray to_array(const Matrix2& m) {
    ComplexArray out({2, 2});
    auto v = out.mutable_unchecked<2>();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) v(i, j) = m(i, j);
    return out;
}

Hamiltonian2 to_hamiltonian(const ComplexArray& a) {
    if (a.ndim() != 2 || a.shape(0) != 2 || a.shape(1) != 2) throw py::value_error("expected a 2x2 matrix");
    auto v = a.unchecked<2>();
    return {v(0, 0), v(0, 1), v(1, 0), v(1, 1)};
}

StateVector2 to_state(const std::pair<Complex, Complex>& s) { return {s.first, s.second}; }
std::pair<Complex, Complex> from_state(const StateVector2& s) { return {s.a_w, s.a_r}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two-level continuous-time quantum search: model, dynamics and analysis";

    // Translators run newest first, so the subclass is matched before the base.
    auto& base_error = py::register_exception<Error>(m, "QSearchError", PyExc_ValueError);
    py::register_exception<DegenerateDynamics>(m, "DegenerateDynamics", base_error.ptr());

    py::class_<Couplings>(m, "Couplings")
        .def(py::init([](double e, double eps, double phi) { return Couplings{e, eps, phi}; }), py::arg("E"),
             py::arg("epsilon"), py::arg("phi") = 0.0)
        .def_readonly("E", &Couplings::energy)
        .def_readonly("epsilon", &Couplings::coupling)
        .def_readonly("phi", &Couplings::phase);

    py::class_<SearchParams>(m, "SearchParams")
        .def(py::init(&SearchParams::from_overlap), py::arg("E"), py::arg("epsilon"), py::arg("phi"),
             py::arg("x"))
        .def_static("from_count", &SearchParams::from_count, py::arg("E"), py::arg("epsilon"), py::arg("phi"),
                    py::arg("N"))
        .def_property_readonly("E", &SearchParams::energy)
        .def_property_readonly("epsilon", &SearchParams::coupling)
        .def_property_readonly("phi", &SearchParams::phase)
        .def_property_readonly("x", &SearchParams::overlap)
        .def_property_readonly("N", &SearchParams::count)
        .def("__repr__", [](const SearchParams& p) {
            return "SearchParams(E=" + std::to_string(p.energy()) + ", epsilon=" + std::to_string(p.coupling()) +
                   ", phi=" + std::to_string(p.phase()) + ", x=" + std::to_string(p.overlap()) + ")";
        });

    m.def("build_generalized", [](const SearchParams& p) { return to_array(build_generalized(p).matrix()); });
    m.def(
        "build_farhi_gutmann", [](double e, double x) { return to_array(build_farhi_gutmann(e, x).matrix()); },
        py::arg("E"), py::arg("x"));
    m.def("pauli_decompose", [](const ComplexArray& h) {
        const PauliCoefficients c = pauli_decompose(to_hamiltonian(h));
        return py::dict(py::arg("c0") = c.c0, py::arg("cx") = c.cx, py::arg("cy") = c.cy, py::arg("cz") = c.cz,
                        py::arg("rabi_norm") = c.rabi_norm());
    });
    m.def("decompose_interaction", [](const SearchParams& p) {
        const InteractionDecomposition d = decompose_interaction(p);
        return py::dict(py::arg("E1") = d.e1, py::arg("E2") = d.e2, py::arg("E3") = d.e3,
                        py::arg("varphi") = d.varphi);
    });
    m.def(
        "recompose_from_interaction",
        [](double e1, double e2, double e3, double varphi, double x) {
            return to_array(recompose_from_interaction({e1, e2, e3, varphi}, x).matrix());
        },
        py::arg("E1"), py::arg("E2"), py::arg("E3"), py::arg("varphi"), py::arg("x"));

    m.def(
        "evolve",
        [](const ComplexArray& h, std::pair<Complex, Complex> psi0, double t) {
            return from_state(evolve(to_hamiltonian(h), to_state(psi0), t));
        },
        py::arg("h"), py::arg("psi0"), py::arg("t"));
    m.def(
        "integrate_reference",
        [](const ComplexArray& h, std::pair<Complex, Complex> psi0, double t, std::size_t steps) {
            return from_state(integrate_reference(to_hamiltonian(h), to_state(psi0), t, steps));
        },
        py::arg("h"), py::arg("psi0"), py::arg("t"), py::arg("steps"));
    m.def("success_probability", &success_probability, py::arg("params"), py::arg("t"));
    m.def(
        "find_first_maximum",
        [](const SearchParams& p, std::size_t grid_points) {
            const MaximumReport r = find_first_maximum(p, grid_points);
            return py::dict(py::arg("t_star") = r.t_star, py::arg("p_star") = r.p_star,
                            py::arg("formula_time") = r.formula_time, py::arg("p_formula") = r.p_formula,
                            py::arg("relative_gap") = r.relative_gap);
        },
        py::arg("params"), py::arg("grid_points") = kDefaultGridPoints);

    m.def("running_time", &running_time);
    m.def("running_time_equal_coupling", &running_time_equal_coupling);
    m.def("running_time_type31", &running_time_type31);
    m.def("running_time_type4", &running_time_type4);
    m.def(
        "classify",
        [](const SearchParams& p, double tol) { return std::string(to_string(classify(p, tol).type)); },
        py::arg("params"), py::arg("tol") = kClassifyTolerance);
    m.def(
        "mean_energy",
        [](const ComplexArray& h, std::pair<Complex, Complex> s) { return mean_energy(to_hamiltonian(h), to_state(s)); },
        py::arg("h"), py::arg("state"));
    m.def(
        "energy_spread",
        [](const ComplexArray& h, std::pair<Complex, Complex> s) {
            return energy_spread(to_hamiltonian(h), to_state(s));
        },
        py::arg("h"), py::arg("state"));
    m.def("speed_limit_bound", [](const SearchParams& p) {
        const SpeedLimitReport r = speed_limit_bound(p);
        return py::dict(py::arg("mean_energy") = r.mean_energy, py::arg("energy_spread") = r.energy_spread,
                        py::arg("ml_component") = r.ml_component, py::arg("mt_component") = r.mt_component,
                        py::arg("bound") = r.bound, py::arg("formula_time") = r.formula_time,
                        py::arg("relative_gap") = r.relative_gap);
    });
    m.def("success_probability_at_T", &success_probability_at_T);
    m.def(
        "sweep_scaling",
        [](const Couplings& c, std::uint64_t n_min, std::uint64_t n_max, std::size_t points) {
            const ScalingReport r = sweep_scaling(c, n_min, n_max, points);
            std::vector<std::pair<std::uint64_t, double>> samples;
            for (const auto& s : r.samples) samples.emplace_back(s.count, s.time);
            return py::dict(py::arg("slope") = r.slope, py::arg("slope_stderr") = r.slope_stderr,
                            py::arg("intercept") = r.intercept, py::arg("samples") = samples);
        },
        py::arg("couplings"), py::arg("n_min"), py::arg("n_max"), py::arg("points"));
}
