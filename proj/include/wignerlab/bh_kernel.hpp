#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "wignerlab/spectra.hpp"

namespace wigner {

using cplx = std::complex<double>;

/// Configuration of one contour-kernel evaluation against a fixed spectrum y.
/// The deformed ensemble has entry variance 1/8 + t/2 (support1 with a^2 = t),
/// so the reference density has radius sqrt(1 + 4t); S = t/N.
struct KernelConfig {
    double u = 0.0;    // bulk energy, |u| < 1
    double tau = 0.0;  // rescaled separation of the two kernel arguments
    double t = 0.0;    // a^2, the added-GUE variance; S = t/N
    SpectralSample y;  // spectrum of the undeformed matrix

    std::optional<double> r;      // gauge point; default Re q_N
    std::optional<double> omega;  // horizontal contour offset; default Im q_N
    double truncation = 40.0;     // contour half-length in units of sqrt(t/N)
    double quad_density = 3.0;    // quadrature panels per sqrt(t/N)
    double eta0 = 0.1;            // sets eta = eta0 t sqrt(1-u^2)

    int n() const { return y.size(); }
    /// Deformed semicircle density at u: 2 sqrt(1+4t-u^2) / (pi (1+4t)).
    double rho() const;
};

/// Phase function f_N(z) = (z^2 - 2uz)/2t + (1/N) sum_j log(z - y_j),
/// principal branch per term. Pole error if z comes within 1e-13 of a y_j.
cplx f_n(cplx z, const KernelConfig& cfg);
cplx f_n_prime(cplx z, const KernelConfig& cfg);
cplx f_n_second(cplx z, const KernelConfig& cfg);

/// The two equivalent forms of the pair factor g_N. The explicit form needs
/// w != r; the identity form needs z != w (f_N'' limit on the diagonal).
cplx g_n_explicit(cplx z, cplx w, double r, const KernelConfig& cfg);
cplx g_n_identity(cplx z, cplx w, double r, const KernelConfig& cfg);

/// h_N(w) = (e^{-tau (w-r)/(t rho)} - 1)/tau, with the tau -> 0 analytic
/// limit -(w-r)/(t rho) taken through a series (no cancellation).
cplx h_n(cplx w, double r, const KernelConfig& cfg);

struct SaddleResult {
    cplx q;              // upper saddle q_N^+; the lower one is conj(q)
    cplx f_second;       // f_N''(q)
    double residual;     // |f_N'(q)|
    cplx closed_form_q;  // continuum seed q^+
};

/// Upper critical point of f_N: Newton from the continuum closed form,
/// falling back to the fixed-point map F_N(z) = u - (t/N) sum 1/(z - y_j).
SaddleResult solve_saddle(const KernelConfig& cfg);

struct KernelValue {
    double value = 0.0;     // real part of the normalized kernel
    double imag_rel = 0.0;  // |imag| / max(|value|, |complex value|)
    bool converged = false;
    SaddleResult saddle;
};

/// Normalized kernel (1/N rho) K_N(u, u + tau/(N rho); y) by double contour
/// quadrature: gamma = two horizontal lines through +-Im q_N, Gamma vertical
/// through Re q_N with a micro-detour around eigenvalue collisions. Panels
/// are truncated where the Gaussian factor drops below 1e-16.
KernelValue eval_kernel(const KernelConfig& cfg);

/// Two-saddle Laplace approximation of the same quantity; reduces to
/// sin(pi tau)/(pi tau) (1 + O(t)) at u = 0.
double saddle_approx_kernel(const KernelConfig& cfg);

/// det of the kernel matrix over rescaled energies alpha_1..alpha_m (m <= 4):
/// entry (i,j) evaluates the kernel at separation alpha_j - alpha_i with a
/// common gauge point r; diagonal via the tau -> 0 limit.
double correlation_determinant(const std::vector<double>& points,
                               const KernelConfig& cfg);

/// Eigenvalue transition density q_S(x, y) for H = Hhat + aV, S = a^2/N:
/// (2 pi S)^{-N/2} (Delta(x)/Delta(y)) det(e^{-(x_j - y_k)^2 / 2S}). N <= 4.
double qs_density_small_n(const std::vector<double>& x,
                          const std::vector<double>& y, double s);

}  // namespace wigner
