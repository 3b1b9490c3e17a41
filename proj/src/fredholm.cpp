#include "wignerlab/fredholm.hpp"

#include <cmath>
#include <stdexcept>

#include "wignerlab/quadrature.hpp"

namespace wigner {

namespace {

/// Determinant by LU with partial pivoting; a is row-major n x n, destroyed.
double lu_det(std::vector<double>& a, int n) {
    double det = 1.0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r) {
            if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
        }
        if (a[piv * n + c] == 0.0) return 0.0;
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(a[piv * n + j], a[c * n + j]);
            det = -det;
        }
        det *= a[c * n + c];
        for (int r = c + 1; r < n; ++r) {
            const double f = a[r * n + c] / a[c * n + c];
            for (int j = c + 1; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
        }
    }
    return det;
}

}  // namespace

double sine_kernel(double tau) {
    const double p = M_PI * tau;
    if (std::abs(tau) < 1e-4) {
        const double p2 = p * p;
        return 1.0 - p2 / 6.0 * (1.0 - p2 / 20.0);
    }
    return std::sin(p) / p;
}

double fredholm_det(double alpha, int n) {
    if (alpha < 0.0) throw std::invalid_argument("fredholm_det: alpha < 0");
    if (n < 10) throw std::invalid_argument("fredholm_det: need n >= 10");
    if (alpha == 0.0) return 1.0;

    const auto gl = quad::gauss_legendre(n, 0.0, alpha);
    std::vector<double> sq(n);
    for (int i = 0; i < n; ++i) sq[i] = std::sqrt(gl.w[i]);
    std::vector<double> a(n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a[i * n + j] = (i == j ? 1.0 : 0.0) -
                           sq[i] * sq[j] * sine_kernel(gl.x[i] - gl.x[j]);
        }
    }
    return lu_det(a, n);
}

double gap_density(double alpha, int n, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("gap_density: step underflow");
    if (!(alpha > 2.0 * h)) {
        throw std::invalid_argument("gap_density: alpha must exceed 2h");
    }
    const auto d2 = [&](double step) {
        return (fredholm_det(alpha + step, n) - 2.0 * fredholm_det(alpha, n) +
                fredholm_det(alpha - step, n)) /
               (step * step);
    };
    const double coarse = d2(h);
    const double fine = d2(0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

double series_gap_integral(double s, int trunc_m, double* remainder) {
    if (!(s > 0.0)) throw std::invalid_argument("series_gap_integral: s <= 0");
    if (trunc_m < 2 || trunc_m > 6) {
        throw std::invalid_argument("series_gap_integral: M must be in [2, 6]");
    }

    // Tensor-product node counts per dimension, tapering with m to keep the
    // total point count bounded.
    const int nodes_for_m[7] = {0, 0, 48, 24, 16, 12, 10};

    double total = 0.0, last = 0.0;
    std::vector<double> pts, mat;
    for (int m = 2; m <= trunc_m; ++m) {
        const int dim = m - 1;
        const int nn = nodes_for_m[m];
        const auto gl = quad::gauss_legendre(nn, 0.0, s);

        double integral = 0.0;
        std::vector<int> idx(dim, 0);
        pts.assign(m, 0.0);
        while (true) {
            double wprod = 1.0;
            for (int d = 0; d < dim; ++d) {
                pts[d + 1] = gl.x[idx[d]];
                wprod *= gl.w[idx[d]];
            }
            mat.assign(m * m, 0.0);
            for (int i = 0; i < m; ++i) {
                for (int j = 0; j < m; ++j) {
                    mat[i * m + j] = sine_kernel(pts[i] - pts[j]);
                }
            }
            integral += wprod * lu_det(mat, m);

            int d = 0;
            while (d < dim && ++idx[d] == nn) idx[d++] = 0;
            if (d == dim) break;
        }

        double factorial = 1.0;
        for (int j = 2; j < m; ++j) factorial *= j;
        last = ((m % 2 == 0) ? 1.0 : -1.0) * integral / factorial;
        total += last;
    }
    if (remainder) *remainder = std::abs(last);
    return total;
}

double determinantal_correlation(const std::vector<double>& points) {
    const int k = static_cast<int>(points.size());
    if (k < 1) {
        throw std::invalid_argument("determinantal_correlation: empty input");
    }
    std::vector<double> a(k * k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            a[i * k + j] = sine_kernel(points[i] - points[j]);
        }
    }
    return lu_det(a, k);
}

}  // namespace wigner
