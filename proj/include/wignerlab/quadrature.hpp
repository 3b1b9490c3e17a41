#pragma once

#include <functional>
#include <vector>

namespace wigner::quad {

struct Nodes {
    std::vector<double> x;
    std::vector<double> w;
};

/// Gauss-Legendre nodes/weights on [a, b].
Nodes gauss_legendre(int n, double a, double b);

/// Gauss-Hermite nodes/weights for the weight e^{-x^2} on the real line.
Nodes gauss_hermite(int n);

/// Adaptive quadrature of f on [a, b] (GSL CQUAD).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-12);

/// Adaptive quadrature of f over the whole real line (GSL QAGI).
double integrate_real_line(const std::function<double(double)>& f,
                           double abs_tol = 1e-12, double rel_tol = 1e-12);

}  // namespace wigner::quad
