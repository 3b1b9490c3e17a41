#include "wignerlab/bh_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "wignerlab/quadrature.hpp"

namespace wigner {

namespace {

constexpr double kPoleGuard = 1e-13;
constexpr double kLogTrunc = -36.84;  // ln 1e-16

/// (e^x - 1)/x, series near 0.
cplx em1_over_x(cplx x) {
    if (std::abs(x) < 1e-5) {
        return 1.0 + x * (0.5 + x * (1.0 / 6.0 + x / 24.0));
    }
    return (std::exp(x) - 1.0) / x;
}

/// h_N(w)/(w - r), regular across w = r.
cplx h_tilde(cplx w, double r, const KernelConfig& cfg) {
    const cplx x = -cfg.tau * (w - r) / (cfg.t * cfg.rho());
    return -em1_over_x(x) / (cfg.t * cfg.rho());
}

double lu_det(std::vector<double>& a, int n) {
    double det = 1.0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int rr = c + 1; rr < n; ++rr) {
            if (std::abs(a[rr * n + c]) > std::abs(a[piv * n + c])) piv = rr;
        }
        if (a[piv * n + c] == 0.0) return 0.0;
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(a[piv * n + j], a[c * n + j]);
            det = -det;
        }
        det *= a[c * n + c];
        for (int rr = c + 1; rr < n; ++rr) {
            const double f = a[rr * n + c] / a[c * n + c];
            for (int j = c + 1; j < n; ++j) a[rr * n + j] -= f * a[c * n + j];
        }
    }
    return det;
}

void check_config(const KernelConfig& cfg) {
    if (!(cfg.t > 0.0)) throw std::invalid_argument("kernel: t must be > 0");
    if (cfg.n() < 1) throw std::invalid_argument("kernel: empty spectrum");
    if (!(std::abs(cfg.u) < 1.0)) {
        throw std::invalid_argument("kernel: need |u| < 1 (bulk energy)");
    }
}

void check_pole(cplx z, const KernelConfig& cfg) {
    for (double yj : cfg.y.eigenvalues) {
        if (std::abs(z - yj) < kPoleGuard) {
            throw std::invalid_argument("f_n: z collides with an eigenvalue");
        }
    }
}

struct ContourNode {
    cplx z;       // position
    cplx weight;  // quadrature weight x orientation x exponential factor
    cplx fprime;
};

}  // namespace

double KernelConfig::rho() const {
    const double s = 1.0 + 4.0 * t - u * u;
    if (s <= 0.0) return 0.0;
    return 2.0 * std::sqrt(s) / (M_PI * (1.0 + 4.0 * t));
}

cplx f_n(cplx z, const KernelConfig& cfg) {
    check_pole(z, cfg);
    cplx logs = 0.0;
    for (double yj : cfg.y.eigenvalues) logs += std::log(z - yj);
    return (z * z - 2.0 * cfg.u * z) / (2.0 * cfg.t) +
           logs / static_cast<double>(cfg.n());
}

cplx f_n_prime(cplx z, const KernelConfig& cfg) {
    check_pole(z, cfg);
    cplx sum = 0.0;
    for (double yj : cfg.y.eigenvalues) sum += 1.0 / (z - yj);
    return (z - cfg.u) / cfg.t + sum / static_cast<double>(cfg.n());
}

cplx f_n_second(cplx z, const KernelConfig& cfg) {
    check_pole(z, cfg);
    cplx sum = 0.0;
    for (double yj : cfg.y.eigenvalues) {
        const cplx d = z - yj;
        sum += 1.0 / (d * d);
    }
    return 1.0 / cfg.t - sum / static_cast<double>(cfg.n());
}

cplx g_n_explicit(cplx z, cplx w, double r, const KernelConfig& cfg) {
    cplx sum = 0.0;
    for (double yj : cfg.y.eigenvalues) {
        sum += (yj - r) / ((w - yj) * (z - yj));
    }
    return (w - r + z - cfg.u) / (cfg.t * (w - r)) -
           sum / (static_cast<double>(cfg.n()) * (w - r));
}

cplx g_n_identity(cplx z, cplx w, double r, const KernelConfig& cfg) {
    const cplx fpz = f_n_prime(z, cfg);
    if (z == w) return fpz / (w - r) + f_n_second(z, cfg);
    return fpz / (w - r) + (fpz - f_n_prime(w, cfg)) / (z - w);
}

cplx h_n(cplx w, double r, const KernelConfig& cfg) {
    return (w - r) * h_tilde(w, r, cfg);
}

SaddleResult solve_saddle(const KernelConfig& cfg) {
    check_config(cfg);
    const double t = cfg.t, u = cfg.u;
    const cplx seed((2.0 * t + 1.0) * u / (1.0 + 4.0 * t),
                    2.0 * t * std::sqrt(1.0 + 4.0 * t - u * u) / (1.0 + 4.0 * t));

    const auto residual_at = [&](cplx z) { return std::abs(f_n_prime(z, cfg)); };

    cplx q = seed;
    bool newton_ok = true;
    for (int it = 0; it < 100; ++it) {
        const cplx fp = f_n_prime(q, cfg);
        if (std::abs(fp) < 1e-13) break;
        const cplx step = fp / f_n_second(q, cfg);
        const cplx next = q - step;
        if (!(next.imag() > 0.0) || !std::isfinite(next.real())) {
            newton_ok = false;
            break;
        }
        if (next == q) break;
        q = next;
    }

    if (!newton_ok || residual_at(q) >= 1e-12) {
        // Fixed-point map F_N(z) = u - (t/N) sum 1/(z - y_j), a contraction
        // near the saddle for admissible t.
        q = seed;
        for (int it = 0; it < 500; ++it) {
            cplx sum = 0.0;
            for (double yj : cfg.y.eigenvalues) sum += 1.0 / (q - yj);
            const cplx next = u - t * sum / static_cast<double>(cfg.n());
            if (!(next.imag() > 0.0)) {
                throw std::runtime_error(
                    "solve_saddle: iterate left the upper half plane");
            }
            if (std::abs(next - q) < 1e-16 * std::abs(q)) {
                q = next;
                break;
            }
            q = next;
        }
        for (int it = 0; it < 100 && residual_at(q) >= 1e-13; ++it) {
            const cplx next = q - f_n_prime(q, cfg) / f_n_second(q, cfg);
            if (!(next.imag() > 0.0)) break;
            q = next;
        }
    }

    SaddleResult res;
    res.q = q;
    res.f_second = f_n_second(q, cfg);
    res.residual = residual_at(q);
    res.closed_form_q = seed;
    if (!(q.imag() > 0.0) || res.residual >= 1e-12) {
        throw std::runtime_error("solve_saddle: no convergence, residual " +
                                 std::to_string(res.residual) + " at q = (" +
                                 std::to_string(q.real()) + ", " +
                                 std::to_string(q.imag()) + ")");
    }
    return res;
}

KernelValue eval_kernel(const KernelConfig& cfg) {
    check_config(cfg);
    const int n = cfg.n();
    const double nn = static_cast<double>(n);
    const SaddleResult sad = solve_saddle(cfg);
    const double r = cfg.r.value_or(sad.q.real());
    const double omega = cfg.omega.value_or(sad.q.imag());
    const double a = sad.q.real();
    const cplx fq = f_n(sad.q, cfg);

    const double sigma = std::sqrt(cfg.t / nn);
    const double half = cfg.truncation * sigma;
    const double panel = sigma / cfg.quad_density;
    const int panels = std::max(2, static_cast<int>(std::ceil(2.0 * half / panel)));
    const auto ref = quad::gauss_legendre(12, 0.0, 1.0);

    double max_y = 0.0;
    for (double yj : cfg.y.eigenvalues) max_y = std::max(max_y, std::abs(yj));
    const double detour = std::max(
        1e-2 / (nn * nn), 10.0 * std::numeric_limits<double>::epsilon() *
                              std::max({1.0, std::abs(a), max_y}));

    // z nodes on the two horizontal lines through +-omega. The upper line
    // runs right-to-left (orientation -1), the lower left-to-right.
    std::vector<ContourNode> znodes;
    znodes.reserve(2 * panels * 12);
    for (int side = 0; side < 2; ++side) {
        const double oy = side == 0 ? omega : -omega;
        const double orient = side == 0 ? -1.0 : 1.0;
        for (int p = 0; p < panels; ++p) {
            const double lo = a - half + 2.0 * half * p / panels;
            const double wid = 2.0 * half / panels;
            for (size_t i = 0; i < ref.x.size(); ++i) {
                const cplx z(lo + wid * ref.x[i], oy);
                const cplx e = -nn * (f_n(z, cfg) - fq);
                if (e.real() < kLogTrunc) continue;
                ContourNode node;
                node.z = z;
                node.weight = orient * wid * ref.w[i] * std::exp(e);
                node.fprime = f_n_prime(z, cfg);
                znodes.push_back(node);
            }
        }
    }

    // w nodes on the vertical line through Re q_N, nudged sideways when the
    // real-axis crossing lands on an eigenvalue.
    std::vector<ContourNode> wnodes;
    std::vector<cplx> wh, wht;
    wnodes.reserve(panels * 12);
    for (int p = 0; p < panels; ++p) {
        const double lo = -half + 2.0 * half * p / panels;
        const double wid = 2.0 * half / panels;
        for (size_t i = 0; i < ref.x.size(); ++i) {
            const double s = lo + wid * ref.x[i];
            cplx w(a, s);
            if (std::abs(s) < detour) {
                double nearest = cfg.y.eigenvalues[0];
                for (double yj : cfg.y.eigenvalues) {
                    if (std::abs(a - yj) < std::abs(a - nearest)) nearest = yj;
                }
                if (std::abs(w - nearest) < detour) {
                    const double dir = a >= nearest ? 1.0 : -1.0;
                    w = cplx(nearest + dir * detour, s);
                }
            }
            const cplx e = nn * (f_n(w, cfg) - fq);
            if (e.real() < kLogTrunc) continue;
            ContourNode node;
            node.z = w;
            node.weight = cplx(0.0, 1.0) * wid * ref.w[i] * std::exp(e);
            node.fprime = f_n_prime(w, cfg);
            wnodes.push_back(node);
            wh.push_back(h_n(w, r, cfg));
            wht.push_back(h_tilde(w, r, cfg));
        }
    }

    // Pair sum via the identity g_N = h~ f'(z) + h (f'(z)-f'(w))/(z-w);
    // the first piece is separable across the two contours.
    cplx zsum = 0.0;
    for (const auto& zn : znodes) zsum += zn.weight * zn.fprime;
    cplx wsum = 0.0;
    for (size_t k = 0; k < wnodes.size(); ++k) {
        wsum += wnodes[k].weight * wht[k];
    }
    cplx total = zsum * wsum;

    const double collide = 1e-6 * sigma;
    for (const auto& zn : znodes) {
        cplx acc = 0.0;
        for (size_t k = 0; k < wnodes.size(); ++k) {
            const cplx d = zn.z - wnodes[k].z;
            const cplx quot =
                std::abs(d) < collide
                    ? f_n_second(0.5 * (zn.z + wnodes[k].z), cfg)
                    : (zn.fprime - wnodes[k].fprime) / d;
            acc += wnodes[k].weight * wh[k] * quot;
        }
        total += zn.weight * acc;
    }

    const cplx value = -nn / (4.0 * M_PI * M_PI) * total;
    KernelValue out;
    out.value = value.real();
    out.imag_rel = std::abs(value.imag()) / std::max(std::abs(value), 1e-2);
    out.converged = out.imag_rel < 1e-6;
    out.saddle = sad;
    return out;
}

double saddle_approx_kernel(const KernelConfig& cfg) {
    check_config(cfg);
    const SaddleResult sad = solve_saddle(cfg);
    const double r = cfg.r.value_or(sad.q.real());
    // Two-saddle Laplace value: the conjugate saddle contributes the
    // conjugate of h_N with opposite orientation, leaving -Im h_N(q)/pi.
    return -h_n(sad.q, r, cfg).imag() / M_PI;
}

double correlation_determinant(const std::vector<double>& points,
                               const KernelConfig& cfg) {
    const int m = static_cast<int>(points.size());
    if (m < 1 || m > 4) {
        throw std::invalid_argument(
            "correlation_determinant: need 1 to 4 points");
    }
    KernelConfig c = cfg;
    c.tau = 0.0;
    const SaddleResult sad = solve_saddle(c);
    c.r = cfg.r.value_or(sad.q.real());

    std::vector<double> mat(m * m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            c.tau = points[j] - points[i];
            mat[i * m + j] = eval_kernel(c).value;
        }
    }
    return lu_det(mat, m);
}

double qs_density_small_n(const std::vector<double>& x,
                          const std::vector<double>& y, double s) {
    const int n = static_cast<int>(x.size());
    if (n < 1 || n > 4 || static_cast<int>(y.size()) != n) {
        throw std::invalid_argument("qs_density_small_n: need 1 <= N <= 4");
    }
    if (!(s > 0.0)) throw std::invalid_argument("qs_density_small_n: S <= 0");
    double vand = 1.0;
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            if (y[k] == y[j]) {
                throw std::invalid_argument("qs_density_small_n: coincident y");
            }
            vand *= (x[k] - x[j]) / (y[k] - y[j]);
        }
    }
    std::vector<double> g(n * n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            const double d = x[j] - y[k];
            g[j * n + k] = std::exp(-d * d / (2.0 * s));
        }
    }
    return std::pow(2.0 * M_PI * s, -0.5 * n) * vand * lu_det(g, n);
}

}  // namespace wigner
