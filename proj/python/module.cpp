// pytoda: python bindings for the Toda lattice benchmark core.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "toda/bench.hpp"
#include "toda/integrators.hpp"
#include "toda/metrics.hpp"
#include "toda/spectral.hpp"

namespace py = pybind11;
using namespace toda;

PYBIND11_MODULE(pytoda, m) {
    m.doc() = "Toda lattice time-stepper benchmark";

    py::class_<IndexWindow>(m, "IndexWindow")
        .def(py::init<int, int>(), py::arg("k_min"), py::arg("k_max"))
        .def_static("symmetric", &IndexWindow::symmetric)
        .def_readonly("k_min", &IndexWindow::k_min)
        .def_readonly("k_max", &IndexWindow::k_max)
        .def("__len__", &IndexWindow::length);

    py::class_<LatticeStateAB>(m, "LatticeStateAB")
        .def_readonly("window", &LatticeStateAB::window)
        .def_readonly("a", &LatticeStateAB::a)
        .def_readonly("b", &LatticeStateAB::b)
        .def_readonly("time", &LatticeStateAB::time);

    py::class_<LatticeStatePQ>(m, "LatticeStatePQ")
        .def_readonly("window", &LatticeStatePQ::window)
        .def_readonly("p", &LatticeStatePQ::p)
        .def_readonly("q", &LatticeStatePQ::q)
        .def_readonly("time", &LatticeStatePQ::time);

    py::class_<SpectralSummary>(m, "SpectralSummary")
        .def_readonly("bound_states", &SpectralSummary::bound_states)
        .def_readonly("kappas", &SpectralSummary::kappas)
        .def_readonly("speeds", &SpectralSummary::speeds)
        .def_readonly("s_max", &SpectralSummary::s_max);

    py::class_<RegionSpec>(m, "RegionSpec")
        .def_readonly("n_min", &RegionSpec::n_min)
        .def_readonly("n_max", &RegionSpec::n_max)
        .def_property_readonly("kind",
                               [](const RegionSpec& r) { return region_name(r.kind); });

    m.def("toda_potential", &toda_potential, py::arg("r"));
    m.def("hamiltonian", &hamiltonian, py::arg("state"));
    m.def("flaschka", &flaschka, py::arg("state"));
    m.def("inverse_flaschka", &inverse_flaschka, py::arg("state"), py::arg("q_anchor") = 0.0);
    m.def("conserved_traces", [](const LatticeStateAB& s) {
        const ConservedTraces c = conserved_traces(s);
        return py::make_tuple(c.c1, c.c2);
    });

    m.def(
        "make_id",
        [](const std::string& name, int half_width, double kappa) {
            InitialData id = InitialData::parse(name);
            id.kappa = kappa;
            return make_id(id, IndexWindow::symmetric(half_width));
        },
        py::arg("id"), py::arg("half_width"), py::arg("kappa") = 0.4);

    m.def(
        "exact_soliton",
        [](double kappa, double n, double t) {
            const SolitonPoint p = exact_soliton(kappa, n, t);
            return py::make_tuple(p.a, p.b);
        },
        py::arg("kappa"), py::arg("n"), py::arg("t"));

    m.def(
        "integrate",
        [](const std::string& id, const std::string& method, double dt, double t_final,
           int half_width, double kappa) {
            InitialData data = InitialData::parse(id);
            data.kappa = kappa;
            const IndexWindow w = half_width > 0
                                      ? IndexWindow::symmetric(half_width)
                                      : default_window(t_final, spectral_summary(data, 60).s_max);
            return integrate(data, StepperConfig{parse_method(method), dt, t_final}, w);
        },
        py::arg("id"), py::arg("method"), py::arg("dt"), py::arg("t_final"),
        py::arg("half_width") = 0, py::arg("kappa") = 0.4);

    m.def(
        "spectrum",
        [](const std::string& id, int m_half) {
            return spectral_summary(InitialData::parse(id), m_half);
        },
        py::arg("id"), py::arg("m") = 60);
    m.def("lax_residual", &lax_residual, py::arg("state"), py::arg("m"));

    m.def("sorted_norm", &sorted_norm, py::arg("x"), py::arg("d") = 0.1);
    m.def("relative_error", &relative_error, py::arg("x"), py::arg("y"), py::arg("background"),
          py::arg("d") = 0.1);
    m.def("absolute_error", &absolute_error, py::arg("x"), py::arg("y"), py::arg("d") = 0.1);
    m.def("soliton_region", &soliton_region, py::arg("t_final"), py::arg("s_max"),
          py::arg("margin") = 100);
    m.def("dispersive_region", &dispersive_region, py::arg("t_final"));

    m.def(
        "observed_order",
        [](const std::string& method, const std::string& id, double t_final,
           std::vector<double> dts, double dt_ref) {
            return observed_order(parse_method(method), InitialData::parse(id), t_final,
                                  std::move(dts), dt_ref);
        },
        py::arg("method"), py::arg("id"), py::arg("t_final"), py::arg("dts"),
        py::arg("dt_ref") = 0.0);

    m.def(
        "run_benchmark",
        [](const std::vector<std::string>& methods, const std::vector<double>& dts,
           const std::vector<double>& t_finals, const std::vector<std::string>& ids,
           const std::vector<std::string>& regions, int jobs, const std::string& format) {
            BenchmarkMatrix matrix;
            for (const auto& s : methods) matrix.methods.push_back(parse_method(s));
            matrix.dts = dts;
            matrix.t_finals = t_finals;
            for (const auto& s : ids) matrix.ids.push_back(InitialData::parse(s));
            for (const auto& s : regions) matrix.regions.push_back(parse_region(s));
            matrix.jobs = jobs;
            return emit_table(run_benchmark(matrix), parse_table_format(format));
        },
        py::arg("methods"), py::arg("dts"), py::arg("t_finals"), py::arg("ids"),
        py::arg("regions"), py::arg("jobs") = 1, py::arg("format") = "csv");
}
