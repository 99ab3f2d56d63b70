#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "thetabidiff/bidiff.hpp"
#include "thetabidiff/fay.hpp"
#include "thetabidiff/locus.hpp"
#include "thetabidiff/verify.hpp"

namespace py = pybind11;
using namespace tb;

namespace {

void register_errors(py::module_& m) {
    static py::exception<NumericsError> base(m, "NumericsError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const NumericsError& e) {
            base(((std::string(e.name()) + ": ") + e.what()).c_str());
        }
    });
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Theta functions, bidifferential correction matrices, and the "
              "genus-1 coincidence locus";
    register_errors(m);

    py::class_<PeriodMatrix>(m, "PeriodMatrix")
        .def(py::init<const CMatrix&>(), py::arg("entries"))
        .def_property_readonly("g", &PeriodMatrix::g)
        .def_property_readonly("entries", &PeriodMatrix::entries)
        .def_property_readonly("lambda_min", &PeriodMatrix::lambda_min);

    py::class_<Characteristic>(m, "Characteristic")
        .def(py::init<RVector, RVector>(), py::arg("a"), py::arg("b"))
        .def_static("from_rational", &Characteristic::from_rational,
                    py::arg("a_num"), py::arg("a_den"), py::arg("b_num"),
                    py::arg("b_den"))
        .def_property_readonly("a", &Characteristic::a)
        .def_property_readonly("b", &Characteristic::b)
        .def_property_readonly("half_integer", &Characteristic::half_integer)
        .def_property_readonly("odd", &Characteristic::odd)
        .def("zeta", &Characteristic::zeta);

    py::class_<ThetaJet>(m, "ThetaJet")
        .def_readonly("value", &ThetaJet::value)
        .def_readonly("gradient", &ThetaJet::gradient)
        .def_readonly("hessian", &ThetaJet::hessian);

    m.def("theta_jet", &theta_jet, py::arg("z"), py::arg("tau"),
          py::arg("eps") = kDefaultEpsJet);
    m.def("theta_char_jet", &theta_char_jet, py::arg("char"), py::arg("z"),
          py::arg("tau"), py::arg("eps") = kDefaultEpsJet);
    m.def("s_zeta_jet", &s_zeta_jet, py::arg("char"), py::arg("z"), py::arg("tau"),
          py::arg("eps") = kDefaultEpsJet);
    m.def("c_zeta", &c_zeta);
    m.def("c_odd", &c_odd);
    m.def("odd_characteristics", &odd_characteristics, py::arg("g"));

    m.def(
        "sot_value",
        [](const RVector& u, const CVector& z, const PeriodMatrix& tau, double eps) {
            return sot_value(SecondOrderIndex{u}, z, tau, eps);
        },
        py::arg("u"), py::arg("z"), py::arg("tau"),
        py::arg("eps") = kDefaultEpsValue);

    m.def("sigma_correction",
          [](const PeriodMatrix& tau, double eps) {
              return sigma_correction(tau, eps).entries;
          },
          py::arg("tau"), py::arg("eps") = kDefaultEpsJet);
    m.def("eta_correction",
          [](const PeriodMatrix& tau) { return eta_correction(tau).entries; },
          py::arg("tau"));
    m.def("coincidence_residual", &coincidence_residual, py::arg("tau"),
          py::arg("eps") = kDefaultEpsJet);
    m.def("v00_kernel_dimension", &v00_kernel_dimension, py::arg("tau"),
          py::arg("eps") = kDefaultEpsJet, py::arg("rank_tol") = 1e-8);

    py::class_<LocusSample>(m, "LocusSample")
        .def_readonly("x", &LocusSample::x)
        .def_readonly("y", &LocusSample::y)
        .def_readonly("w", &LocusSample::w)
        .def_readonly("r1", &LocusSample::r1)
        .def_readonly("r2", &LocusSample::r2)
        .def_readonly("res", &LocusSample::res)
        .def_readonly("failed", &LocusSample::failed);

    m.def("residuals", &residuals, py::arg("x"), py::arg("y"),
          py::arg("eps") = kDefaultEpsValue);
    m.def("scan", &scan, py::arg("x_min"), py::arg("x_max"), py::arg("y_min"),
          py::arg("y_max"), py::arg("nx"), py::arg("ny"),
          py::arg("eps") = kDefaultEpsValue);
    m.def(
        "refine",
        [](double x0, double y0, double eps, int max_iter) {
            const RefineResult r = refine(x0, y0, eps, max_iter);
            return py::make_tuple(r.sample, r.iterations);
        },
        py::arg("x0"), py::arg("y0"), py::arg("eps") = kDefaultEpsValue,
        py::arg("max_iter") = 50);

    m.def(
        "trisecant_residual",
        [](Complex w, Complex z1, Complex z2, Complex a1, Complex a2,
           const PeriodMatrix& tau, double eps) {
            return trisecant_sides(TrisecantConfig{w, z1, z2, a1, a2}, tau, eps)
                .residual();
        },
        py::arg("w"), py::arg("z1"), py::arg("z2"), py::arg("a1"), py::arg("a2"),
        py::arg("tau"), py::arg("eps") = kDefaultEpsValue);
    m.def("omega_g1", &omega_g1, py::arg("z1"), py::arg("z2"), py::arg("tau"),
          py::arg("eps") = kDefaultEpsJet);

    m.def(
        "verify",
        [](std::uint64_t seed) {
            RunConfig cfg;
            cfg.seed = seed;
            const VerifyReport report = verify_all(cfg);
            py::list checks;
            for (const auto& c : report.checks)
                checks.append(py::dict(
                    py::arg("name") = c.name, py::arg("identity") = c.identity,
                    py::arg("measured") = c.measured,
                    py::arg("tolerance") = c.tolerance, py::arg("pass") = c.pass));
            return py::make_tuple(report.all_pass(), checks);
        },
        py::arg("seed") = RunConfig{}.seed);
}
