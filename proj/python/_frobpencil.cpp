#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "frobpencil/cli/config.hpp"
#include "frobpencil/cli/report.hpp"
#include "frobpencil/cli/run.hpp"
#include "frobpencil/elliptic/weierstrass.hpp"
#include "frobpencil/engine/frobenius.hpp"
#include "frobpencil/error.hpp"
#include "frobpencil/flat/flat_structure.hpp"
#include "frobpencil/model/abelian_integral.hpp"
#include "frobpencil/verify/axioms.hpp"

namespace py = pybind11;
using namespace frob;
using model::AbelianIntegral;

namespace {

py::dict check_dict(const verify::CheckRecord& c) {
    py::dict d;
    d["name"] = c.name;
    d["residual"] = c.residual;
    d["threshold"] = c.threshold;
    d["bound"] = c.lower_bound ? "lower" : "upper";
    d["pass"] = c.pass;
    d["detail"] = c.detail;
    return d;
}

}  // namespace

PYBIND11_MODULE(_frobpencil, mod) {
    mod.doc() = "Frobenius structures on spaces of abelian integrals";
    py::register_exception<Error>(mod, "FrobError");

    py::class_<AbelianIntegral>(mod, "AbelianIntegral")
        .def_static("genus0", py::overload_cast<int, const std::vector<cplx>&>(&AbelianIntegral::genus0), py::arg("n"),
                    py::arg("lower"), "f = t^n + a_{n-2} t^{n-2} + ... + a_0 from [a_0, ..., a_{n-2}]")
        .def_static("genus1", &AbelianIntegral::genus1, py::arg("tau"), py::arg("gamma"), py::arg("c0"),
                    py::arg("period_a"), py::arg("period_b"))
        .def_property_readonly("genus", &AbelianIntegral::genus)
        .def_property_readonly("n", &AbelianIntegral::n)
        .def_property_readonly("chart", &AbelianIntegral::chart)
        .def_property_readonly("chart_dimension", &AbelianIntegral::chart_dimension)
        .def_property_readonly("period_a", &AbelianIntegral::period_a)
        .def_property_readonly("period_b", &AbelianIntegral::period_b)
        .def_property_readonly("alpha", [](const AbelianIntegral& m) { return m.genus1_data().alpha; })
        .def_property_readonly("beta", [](const AbelianIntegral& m) { return m.genus1_data().beta; })
        .def("with_chart", &AbelianIntegral::with_chart, py::arg("chart"));

    mod.def(
        "critical_points",
        [](const AbelianIntegral& m) {
            const auto cd = model::critical_data(m);
            return py::make_tuple(cd.points, cd.values);
        },
        py::arg("model"), "(critical points, critical values)");

    mod.def(
        "multiply",
        [](const AbelianIntegral& m, const ComplexVector& x, const ComplexVector& y, int k) {
            const auto fa = engine::fiber_algebra(m, k);
            return engine::multiply(fa, engine::tangent_to_fiber(fa, x), engine::tangent_to_fiber(fa, y)).chart;
        },
        py::arg("model"), py::arg("x"), py::arg("y"), py::arg("k") = 2);
    mod.def(
        "unit_field", [](const AbelianIntegral& m, int k) { return engine::unit_field(engine::fiber_algebra(m, k)).chart; },
        py::arg("model"), py::arg("k") = 2);
    mod.def(
        "metric_matrix", [](const AbelianIntegral& m, int k) { return engine::metric_matrix(engine::fiber_algebra(m, k)); },
        py::arg("model"), py::arg("k") = 2);

    mod.def(
        "flat_chart",
        [](const AbelianIntegral& m, int k) {
            const flat::FlatChart c = flat::flat_chart(m, k);
            py::dict d;
            d["coordinates"] = c.coordinates;
            d["jacobian"] = c.jacobian;
            d["eta"] = c.eta;
            d["eta_predicted"] = c.eta_predicted;
            d["flatness_defect"] = c.flatness_defect;
            return d;
        },
        py::arg("model"), py::arg("k") = 2);
    mod.def(
        "structure_constants",
        [](const AbelianIntegral& m, int k) {
            const flat::Tensor3 c = flat::structure_constants_at(m, k);
            std::vector<ComplexMatrix> out;
            for (int a = 0; a < c.d; ++a) {
                ComplexMatrix s(c.d, c.d);
                for (int b = 0; b < c.d; ++b)
                    for (int e = 0; e < c.d; ++e) s(b, e) = c(a, b, e);
                out.push_back(s);
            }
            return out;
        },
        py::arg("model"), py::arg("k") = 2, "c_ABC in flat coordinates, as a list over A of matrices");
    mod.def(
        "potentiality_defect",
        [](const AbelianIntegral& m, int k, double step) { return flat::potentiality_defect(m, k, step); },
        py::arg("model"), py::arg("k") = 2, py::arg("step") = 1e-3);

    mod.def(
        "axiom_suite",
        [](const AbelianIntegral& m, int k, double region_radius) {
            verify::AxiomOptions o;
            o.region_radius = region_radius;
            py::list out;
            for (const auto& c : verify::axiom_suite(m, k, o).checks) out.append(check_dict(c));
            return out;
        },
        py::arg("model"), py::arg("k") = 2, py::arg("region_radius") = 0.0);

    mod.def(
        "wp", [](cplx tau, cplx u, int j) { return elliptic::wp(elliptic::lattice_init(tau), u, j); }, py::arg("tau"),
        py::arg("u"), py::arg("derivative") = 0);
    mod.def(
        "zeta", [](cplx tau, cplx u) { return elliptic::zeta_w(elliptic::lattice_init(tau), u); }, py::arg("tau"),
        py::arg("u"));
    mod.def(
        "lattice_invariants",
        [](cplx tau) {
            const auto L = elliptic::lattice_init(tau);
            py::dict d;
            d["g2"] = L.g2;
            d["g3"] = L.g3;
            d["eta1"] = L.eta1;
            d["eta2"] = L.eta2;
            return d;
        },
        py::arg("tau"));

    mod.def(
        "run",
        [](const std::map<std::string, std::string>& settings) {
            cli::RunConfig cfg;
            cli::apply_settings(cfg, settings);
            cli::RunResult r;
            {
                py::gil_scoped_release release;
                r = cli::run(cfg);
            }
            return py::make_tuple(cli::canonical_json(r.report), r.exit_code);
        },
        py::arg("settings"), "Runs a CLI mode from string settings; returns (canonical JSON report, exit code).");
}
