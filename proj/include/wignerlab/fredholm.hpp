#pragma once

#include <vector>

namespace wigner {

/// sin(pi tau) / (pi tau), extended by 1 at tau = 0 (series for small tau).
double sine_kernel(double tau);

/// Fredholm determinant det(I - K_alpha) of the sine kernel on (0, alpha),
/// computed by the symmetrized Nystrom discretization on n Gauss-Legendre
/// nodes. Value lies in (0, 1] and decreases in alpha.
double fredholm_det(double alpha, int n = 40);

/// Gap density p(alpha) = d^2/dalpha^2 det(I - K_alpha), via central
/// differences with one Richardson level. Requires alpha > 2h.
double gap_density(double alpha, int n = 40, double h = 1e-3);

/// Inclusion-exclusion series for the cumulative gap density:
/// sum_{m=2}^M ((-1)^m/(m-1)!) int_{[0,s]^{m-1}} det(sinc(a_i-a_j))_{m x m}
/// with a_1 = 0, each inner integral by tensor Gauss-Legendre. The
/// alternating-series remainder (magnitude of the last term) is written to
/// *remainder when given. M must be in [2, 6].
double series_gap_integral(double s, int trunc_m, double* remainder = nullptr);

/// det(sinc(x_i - x_j)) for a k-point configuration; lies in [0, 1].
double determinantal_correlation(const std::vector<double>& points);

}  // namespace wigner
