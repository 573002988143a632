#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relzeta/coulomb.hpp"
#include "relzeta/specfun.hpp"
#include "relzeta/spectral.hpp"
#include "relzeta/zeta.hpp"

namespace py = pybind11;
using namespace relzeta;
using cxd = std::complex<double>;

namespace {

quadrature::AccuracyBudget budget(double tol) { return {tol, 0.0}; }

zeta::RelativeModel make_model(double gamma, double alpha) {
    return zeta::coulomb_delta_model({gamma, alpha});
}

py::dict partition_dict(const zeta::PartitionResult& r) {
    py::dict d;
    d["beta"] = r.beta;
    d["ell"] = r.ell;
    d["res1_zeta_L"] = r.res1_zeta_L;
    d["res0_zeta_L"] = r.res0_zeta_L;
    d["res0_zeta_prime_L"] = r.res0_zeta_prime_L;
    d["log_eta"] = r.log_eta;
    d["log_ZR"] = r.log_ZR;
    d["quadrature_error"] = r.diagnostics.quadrature_error;
    if (r.diagnostics.bound_state_energy) {
        d["bound_state_energy"] = *r.diagnostics.bound_state_energy;
    } else {
        d["bound_state_energy"] = py::none();
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_relzeta, m) {
    m.doc() = "relative zeta regularization of the Coulomb plus point interaction pair";

    m.def("log_gamma", [](cxd z) { return specfun::log_gamma(z); }, py::arg("z"));
    m.def("digamma", [](cxd z) { return specfun::digamma(z); }, py::arg("z"));
    m.def("trigamma", [](cxd z) { return specfun::trigamma(z); }, py::arg("z"));
    m.def("bernoulli", &specfun::bernoulli, py::arg("n"));
    m.attr("euler_gamma") = specfun::euler_gamma;

    m.def("coupling_function", [](cxd z) { return coulomb::coupling_function(z); }, py::arg("z"));
    m.def("trace_integral_closed",
          [](cxd z) { return coulomb::trace_integral_closed(z); }, py::arg("z"));
    m.def(
        "trace_integral_contour",
        [](cxd z, double tol) { return coulomb::trace_integral_contour(z, budget(tol)); },
        py::arg("z"), py::arg("tol") = 1e-9);
    m.def(
        "resolvent_trace",
        [](double gamma, double alpha, cxd kappa) {
            return coulomb::resolvent_trace({gamma, alpha}, kappa);
        },
        py::arg("gamma"), py::arg("alpha"), py::arg("kappa"));
    m.def("bound_state_threshold", &coulomb::bound_state_threshold, py::arg("gamma"));
    m.def(
        "find_bound_state",
        [](double gamma, double alpha) -> py::object {
            const auto e = coulomb::find_bound_state({gamma, alpha});
            if (!e) return py::none();
            return py::float_(*e);
        },
        py::arg("gamma"), py::arg("alpha"));

    m.def(
        "spectral_measure",
        [](double gamma, double alpha, double v) {
            coulomb::ModelParams p{gamma, alpha};
            p.validate();
            return spectral::spectral_measure(
                [p](cxd kappa) { return coulomb::resolvent_trace(p, kappa); }, v);
        },
        py::arg("gamma"), py::arg("alpha"), py::arg("v"));

    m.def(
        "zeta_continued",
        [](double gamma, double alpha, double s, double tol) {
            return zeta::zeta_continued(make_model(gamma, alpha), s, budget(tol));
        },
        py::arg("gamma"), py::arg("alpha"), py::arg("s"), py::arg("tol") = 1e-8);
    m.def(
        "laurent_at_minus_half",
        [](double gamma, double alpha, double tol) {
            const auto l = zeta::laurent_at_minus_half(make_model(gamma, alpha), budget(tol));
            py::dict d;
            d["res2"] = l.res2;
            d["res1"] = l.res1;
            d["res0"] = l.res0;
            return d;
        },
        py::arg("gamma"), py::arg("alpha"), py::arg("tol") = 1e-8);
    m.def(
        "log_eta",
        [](double gamma, double alpha, double tau, double tol) {
            return zeta::log_eta(make_model(gamma, alpha), tau, budget(tol));
        },
        py::arg("gamma"), py::arg("alpha"), py::arg("tau"), py::arg("tol") = 1e-8);
    m.def(
        "heat_trace",
        [](double gamma, double alpha, double t, double tol) {
            return zeta::heat_trace(make_model(gamma, alpha), t, budget(tol));
        },
        py::arg("gamma"), py::arg("alpha"), py::arg("t"), py::arg("tol") = 1e-8);
    m.def(
        "hankel_heat_trace",
        [](double gamma, double alpha, double t, double tol) {
            return zeta::hankel_heat_trace(make_model(gamma, alpha), t, budget(tol)).value;
        },
        py::arg("gamma"), py::arg("alpha"), py::arg("t"), py::arg("tol") = 1e-8);
    m.def(
        "log_partition",
        [](double gamma, double alpha, double beta, double ell, double tol) {
            return partition_dict(
                zeta::log_partition(make_model(gamma, alpha), beta, ell, budget(tol)));
        },
        py::arg("gamma"), py::arg("alpha"), py::arg("beta"), py::arg("ell") = 1.0,
        py::arg("tol") = 1e-8);

    py::register_exception<pole_error>(m, "PoleError");
    py::register_exception<branch_error>(m, "BranchError");
}
