#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wignerlab/bh_kernel.hpp"
#include "wignerlab/ensemble.hpp"
#include "wignerlab/fredholm.hpp"
#include "wignerlab/ou_flow.hpp"
#include "wignerlab/spectra.hpp"
#include "wignerlab/statistics.hpp"

namespace py = pybind11;
using namespace wigner;

PYBIND11_MODULE(_wignerlab, m) {
    m.doc() = "bulk eigenvalue statistics laboratory";

    py::enum_<Convention>(m, "Convention")
        .value("support2", Convention::support2)
        .value("support1", Convention::support1);

    py::class_<EntryLaw>(m, "EntryLaw")
        .def_static("gaussian", &EntryLaw::gaussian)
        .def_static("quartic", &EntryLaw::quartic)
        .def_static("two_sided_exponential", &EntryLaw::two_sided_exponential)
        .def_static("bump", &EntryLaw::bump)
        .def_static("from_name", &EntryLaw::from_name)
        .def("density", &EntryLaw::density)
        .def("cdf", &EntryLaw::cdf)
        .def("quantile", &EntryLaw::quantile)
        .def("declared_variance", &EntryLaw::declared_variance)
        .def("scaled_to_variance", &EntryLaw::scaled_to_variance);

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("normalized", &ValidationReport::normalized)
        .def_readonly("mean_zero", &ValidationReport::mean_zero)
        .def_readonly("variance_ok", &ValidationReport::variance_ok)
        .def_readonly("derivative_growth_ok",
                      &ValidationReport::derivative_growth_ok)
        .def_readonly("tail_ok", &ValidationReport::tail_ok)
        .def_readonly("measured_mass", &ValidationReport::measured_mass)
        .def_readonly("measured_mean", &ValidationReport::measured_mean)
        .def_readonly("measured_variance", &ValidationReport::measured_variance)
        .def("passed", &ValidationReport::pass);
    m.def("validate_law",
          [](const EntryLaw& law) { return validate_law(law); });

    py::class_<WignerMatrix>(m, "WignerMatrix")
        .def("size", &WignerMatrix::size)
        .def("convention", &WignerMatrix::convention)
        .def("entry", [](const WignerMatrix& w, int i, int j) {
            return w.at(i, j);
        });
    m.def("sample_gue", &sample_gue, py::arg("n"), py::arg("convention"),
          py::arg("seed"));
    m.def("sample_deformed", &sample_deformed);
    m.def("matrix_ou_step", &matrix_ou_step);

    py::class_<SpectralSample>(m, "SpectralSample")
        .def_readonly("eigenvalues", &SpectralSample::eigenvalues)
        .def_readonly("residual_bound", &SpectralSample::residual_bound)
        .def("size", &SpectralSample::size);
    m.def("hermitian_eigenvalues", &hermitian_eigenvalues);

    py::class_<SemicircleRef>(m, "SemicircleRef")
        .def(py::init([](Convention c, double a) {
                 return SemicircleRef{c, a};
             }),
             py::arg("convention"), py::arg("a") = 0.0)
        .def("radius", &SemicircleRef::radius)
        .def("density", &SemicircleRef::density)
        .def("cdf", &SemicircleRef::cdf)
        .def("stieltjes", &SemicircleRef::stieltjes);
    m.def("semicircle_quantiles", &semicircle_quantiles);
    m.def("stieltjes_empirical", &stieltjes_empirical);

    py::class_<GapEstimate>(m, "GapEstimate")
        .def_readonly("value", &GapEstimate::value)
        .def_readonly("std_error", &GapEstimate::std_error)
        .def_readonly("count", &GapEstimate::count)
        .def_readonly("low_count", &GapEstimate::low_count);
    m.def("gap_statistic", &gap_statistic);

    py::class_<HermiteDensity>(m, "HermiteDensity")
        .def(py::init<std::vector<double>>())
        .def("coeffs", &HermiteDensity::coeffs)
        .def("mass", &HermiteDensity::mass)
        .def("__call__", &HermiteDensity::operator());
    m.def("semigroup", &semigroup);
    m.def("reversal_approximant", [](const HermiteDensity& d, double t, int m_) {
        return reversal_approximant(d, t, m_).density;
    });
    m.def("reversal_error_chi2", &reversal_error_chi2);

    m.def("sine_kernel", &sine_kernel);
    m.def("fredholm_det", &fredholm_det, py::arg("alpha"), py::arg("n") = 40);
    m.def("gap_density", &gap_density, py::arg("alpha"), py::arg("n") = 40,
          py::arg("h") = 1e-3);
    m.def("determinantal_correlation", &determinantal_correlation);

    py::class_<KernelConfig>(m, "KernelConfig")
        .def(py::init<>())
        .def_readwrite("u", &KernelConfig::u)
        .def_readwrite("tau", &KernelConfig::tau)
        .def_readwrite("t", &KernelConfig::t)
        .def_readwrite("y", &KernelConfig::y)
        .def_readwrite("truncation", &KernelConfig::truncation)
        .def_readwrite("quad_density", &KernelConfig::quad_density)
        .def("rho", &KernelConfig::rho);
    py::class_<KernelValue>(m, "KernelValue")
        .def_readonly("value", &KernelValue::value)
        .def_readonly("imag_rel", &KernelValue::imag_rel)
        .def_readonly("converged", &KernelValue::converged);
    m.def("eval_kernel", &eval_kernel);
    m.def("saddle_approx_kernel", &saddle_approx_kernel);
}
