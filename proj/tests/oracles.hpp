#pragma once

// Independent numerical oracles for the test suite. These deliberately avoid
// the library's own quadrature/eigensolver code paths.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a,
                      double b) {
    const double c = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
}

inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double tol, int depth) {
    const double c = 0.5 * (a + b);
    const double whole = simpson(f, a, b);
    const double left = simpson(f, a, c);
    const double right = simpson(f, c, b);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, c, tol / 2, depth - 1) +
           adaptive_simpson(f, c, b, tol / 2, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12) {
    return adaptive_simpson(f, a, b, tol, 40);
}

/// Whole-line integral via x = tan(u).
inline double integrate_line(const std::function<double(double)>& f,
                             double tol = 1e-12) {
    const auto g = [&](double u) {
        const double c = std::cos(u);
        const double x = std::tan(u);
        return f(x) / (c * c);
    };
    const double h = M_PI / 2 - 1e-9;
    return adaptive_simpson(g, -h, h, tol, 44);
}

/// Central finite difference of given order (1..3) with step h.
inline double diff(const std::function<double(double)>& f, double x, int order,
                   double h) {
    switch (order) {
        case 1:
            return (f(x + h) - f(x - h)) / (2 * h);
        case 2:
            return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
        case 3:
            return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) -
                    f(x - 2 * h)) /
                   (2 * h * h * h);
        default:
            throw std::invalid_argument("diff: unsupported order");
    }
}

/// Eigenvalues of a Hermitian matrix by bisection on the inertia count of
/// A - x I (Sylvester): the number of negative pivots in the unpivoted
/// symmetric elimination equals #{eigenvalues < x}.
inline int count_below(std::vector<std::complex<double>> m, int n, double x) {
    for (int k = 0; k < n; ++k) m[k * n + k] -= x;
    int neg = 0;
    for (int k = 0; k < n; ++k) {
        double piv = m[k * n + k].real();
        if (std::abs(piv) < 1e-300) piv = 1e-300;
        if (piv < 0.0) ++neg;
        for (int i = k + 1; i < n; ++i) {
            const std::complex<double> f = m[i * n + k] / piv;
            for (int j = k + 1; j < n; ++j) {
                m[i * n + j] -= f * std::conj(m[j * n + k]);
            }
        }
    }
    return neg;
}

inline std::vector<double> hermitian_eigs_bisect(
    const std::vector<std::complex<double>>& a, int n, double tol = 1e-10) {
    double bound = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += std::abs(a[i * n + j]);
        bound = std::max(bound, row);
    }
    bound += 1.0;
    std::vector<double> eig(n);
    for (int k = 0; k < n; ++k) {
        double lo = -bound, hi = bound;
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (count_below(a, n, mid) <= k) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        eig[k] = 0.5 * (lo + hi);
    }
    return eig;
}

}  // namespace oracle
