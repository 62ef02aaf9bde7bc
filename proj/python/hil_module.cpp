#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hil/forms.hpp"
#include "hil/lfunc.hpp"
#include "hil/verify.hpp"
#include "hil/zeros.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_hil, m) {
    m.doc() = "L-functions of half-integral-weight cusp forms";

    py::register_exception<hil::Error>(m, "HilError");

    py::class_<hil::HalfIntegralForm>(m, "Form")
        .def_property_readonly("name",
                               [](const hil::HalfIntegralForm& f) { return f.name; })
        .def_property_readonly("k",
                               [](const hil::HalfIntegralForm& f) { return f.k; })
        .def_property_readonly("level",
                               [](const hil::HalfIntegralForm& f) { return f.level; })
        .def("kappa", &hil::HalfIntegralForm::kappa)
        .def("sigma0", &hil::HalfIntegralForm::sigma0)
        .def("coeff", [](const hil::HalfIntegralForm& f, long n) {
            f.coeffs->ensure(n);
            return f.coeffs->coeff(n);
        });

    m.def("yoshida_g", &hil::yoshida_g, py::arg("initial_coeffs") = 2048);
    m.def("load_form", &hil::load_form, py::arg("registry_path"),
          py::arg("name"));
    m.def("builtin_registry_json", &hil::builtin_registry_json);

    py::class_<hil::LValue>(m, "LValue")
        .def_readonly("value", &hil::LValue::value)
        .def_readonly("abs_err", &hil::LValue::abs_err)
        .def_readonly("terms_used", &hil::LValue::terms_used)
        .def_readonly("exact_zero", &hil::LValue::exact_zero);

    m.def("lambda_completed", &hil::lambda_completed, py::arg("form"),
          py::arg("s"), py::arg("eps_abs") = 1e-10);
    m.def("l_value", &hil::l_value, py::arg("form"), py::arg("s"),
          py::arg("eps_abs") = 1e-10);
    m.def("r_f", &hil::r_f, py::arg("form"), py::arg("t"),
          py::arg("eps_abs") = 1e-10);
    m.def("i_f", &hil::i_f, py::arg("form"), py::arg("t"),
          py::arg("eps_abs") = 1e-10);

    py::class_<hil::TwistSpec>(m, "TwistSpec")
        .def_readonly("p", &hil::TwistSpec::p)
        .def_readonly("q", &hil::TwistSpec::q)
        .def_readonly("involutive", &hil::TwistSpec::involutive)
        .def_readonly("cusp_ok", &hil::TwistSpec::cusp_ok)
        .def_readonly("omega", &hil::TwistSpec::omega);
    m.def("make_twist", &hil::make_twist);
    py::class_<hil::ZValue>(m, "ZValue")
        .def_readonly("value", &hil::ZValue::value)
        .def_readonly("imag_residual", &hil::ZValue::imag_residual)
        .def_readonly("abs_err", &hil::ZValue::abs_err);
    m.def("z_twisted", &hil::z_twisted, py::arg("form"), py::arg("twist"),
          py::arg("t"), py::arg("eps_abs") = 1e-10);

    py::class_<hil::ZeroScanReport>(m, "ZeroScanReport")
        .def_readonly("zeros", &hil::ZeroScanReport::zeros)
        .def_readonly("evals", &hil::ZeroScanReport::evals);
    m.def("scan_sign_changes", &hil::scan_sign_changes, py::arg("fn"),
          py::arg("t_lo"), py::arg("t_hi"), py::arg("base_step") = 0.05,
          py::arg("loc_tol") = 1e-9);
    py::class_<hil::RectCount>(m, "RectCount")
        .def_readonly("count", &hil::RectCount::count)
        .def_readonly("min_boundary_abs", &hil::RectCount::min_boundary_abs)
        .def_readonly("nudges", &hil::RectCount::nudges);
    m.def("count_zeros_rectangle", &hil::count_zeros_rectangle,
          py::arg("form"), py::arg("s1"), py::arg("s2"), py::arg("t1"),
          py::arg("t2"), py::arg("eps_abs") = 1e-10);
    py::class_<hil::OfflineZero>(m, "OfflineZero")
        .def_readonly("s", &hil::OfflineZero::s)
        .def_readonly("lambda_abs", &hil::OfflineZero::lambda_abs);
    m.def("find_offline_zeros", &hil::find_offline_zeros, py::arg("form"),
          py::arg("s1"), py::arg("s2"), py::arg("t1"), py::arg("t2"),
          py::arg("line_tol") = 1e-3);

    py::class_<hil::CheckSample>(m, "CheckSample")
        .def_readonly("param", &hil::CheckSample::param)
        .def_readonly("lhs", &hil::CheckSample::lhs)
        .def_readonly("rhs", &hil::CheckSample::rhs)
        .def_readonly("residual", &hil::CheckSample::residual);
    py::class_<hil::CheckResult>(m, "CheckResult")
        .def_readonly("name", &hil::CheckResult::name)
        .def_readonly("residual_or_sup", &hil::CheckResult::residual_or_sup)
        .def_readonly("tolerance", &hil::CheckResult::tolerance)
        .def_readonly("passed", &hil::CheckResult::passed)
        .def_readonly("detail", &hil::CheckResult::detail);
    m.def("check_cosh_sinh_identities", &hil::check_cosh_sinh_identities,
          py::arg("form"), py::arg("u_grid"), py::arg("tol") = 1e-6);
    m.def("check_l_f1_integral", &hil::check_l_f1_integral, py::arg("form"),
          py::arg("s_grid"), py::arg("c") = 1, py::arg("tol") = 1e-6);
}
