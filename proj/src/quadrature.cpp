#include "wignerlab/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <memory>
#include <mutex>
#include <stdexcept>

namespace wigner::quad {

namespace {

// GSL aborts on error by default; switch to return codes once.
const int g_handler_off = [] {
    gsl_set_error_handler_off();
    return 0;
}();

double call_std_function(double x, void* params) {
    const auto* f = static_cast<const std::function<double(double)>*>(params);
    return (*f)(x);
}

}  // namespace

Nodes gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    gsl_integration_glfixed_table* tbl =
        gsl_integration_glfixed_table_alloc(static_cast<size_t>(n));
    if (!tbl) throw std::runtime_error("gauss_legendre: table allocation failed");
    Nodes out;
    out.x.resize(n);
    out.w.resize(n);
    for (int i = 0; i < n; ++i) {
        gsl_integration_glfixed_point(a, b, static_cast<size_t>(i), &out.x[i],
                                      &out.w[i], tbl);
    }
    gsl_integration_glfixed_table_free(tbl);
    return out;
}

Nodes gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
    gsl_integration_fixed_workspace* ws = gsl_integration_fixed_alloc(
        gsl_integration_fixed_hermite, static_cast<size_t>(n), 0.0, 1.0, 0.0,
        0.0);
    if (!ws) throw std::runtime_error("gauss_hermite: workspace allocation failed");
    const double* x = gsl_integration_fixed_nodes(ws);
    const double* w = gsl_integration_fixed_weights(ws);
    Nodes out;
    out.x.assign(x, x + n);
    out.w.assign(w, w + n);
    gsl_integration_fixed_free(ws);
    return out;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol) {
    gsl_function gf;
    gf.function = &call_std_function;
    gf.params = const_cast<std::function<double(double)>*>(&f);

    gsl_integration_cquad_workspace* ws =
        gsl_integration_cquad_workspace_alloc(200);
    if (!ws) throw std::runtime_error("integrate: workspace allocation failed");
    double result = 0.0, abserr = 0.0;
    size_t nevals = 0;
    const int status = gsl_integration_cquad(&gf, a, b, abs_tol, rel_tol, ws,
                                             &result, &abserr, &nevals);
    gsl_integration_cquad_workspace_free(ws);
    if (status != GSL_SUCCESS) {
        throw std::runtime_error("integrate: adaptive quadrature failed");
    }
    return result;
}

double integrate_real_line(const std::function<double(double)>& f,
                           double abs_tol, double rel_tol) {
    gsl_function gf;
    gf.function = &call_std_function;
    gf.params = const_cast<std::function<double(double)>*>(&f);

    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(4000);
    if (!ws) throw std::runtime_error("integrate_real_line: allocation failed");
    double result = 0.0, abserr = 0.0;
    const int status =
        gsl_integration_qagi(&gf, abs_tol, rel_tol, 4000, ws, &result, &abserr);
    gsl_integration_workspace_free(ws);
    if (status != GSL_SUCCESS) {
        throw std::runtime_error("integrate_real_line: quadrature failed");
    }
    return result;
}

}  // namespace wigner::quad
