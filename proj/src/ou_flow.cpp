#include "wignerlab/ou_flow.hpp"

#include <cmath>
#include <stdexcept>

#include "wignerlab/quadrature.hpp"

namespace wigner {

namespace {

constexpr int kGridPoints = 2001;
constexpr double kGridLo = -8.0;
constexpr double kGridHi = 8.0;

const double kPiQuarter = std::pow(M_PI, 0.25);

/// h_0..h_k at x in one sweep.
void hermite_values(int k, double x, std::vector<double>& out) {
    out.resize(k + 1);
    out[0] = 1.0 / kPiQuarter;
    if (k == 0) return;
    out[1] = std::sqrt(2.0) * x / kPiQuarter;
    for (int j = 1; j < k; ++j) {
        out[j + 1] = x * std::sqrt(2.0 / (j + 1)) * out[j] -
                     std::sqrt(static_cast<double>(j) / (j + 1)) * out[j - 1];
    }
}

/// e^{-s} sum_{j<m} s^j/j! - 1, the round-trip factor of one mode minus
/// identity. Evaluated through the complementary series for small s to
/// avoid cancellation (the value is -s^m/m! + O(s^{m+1})).
double round_trip_defect(double s, int m) {
    if (s == 0.0) return 0.0;
    if (s < 1.0) {
        double term = 1.0;
        for (int j = 1; j <= m; ++j) term *= s / j;  // s^m / m!
        double tail = 0.0;
        for (int j = 0; j < 60; ++j) {
            tail += term;
            term *= s / (m + 1 + j);
            if (term < tail * 1e-18) break;
        }
        return -std::exp(-s) * tail;
    }
    double partial = 1.0, term = 1.0;
    for (int j = 1; j < m; ++j) {
        term *= s / j;
        partial += term;
    }
    return std::exp(-s) * partial - 1.0;
}

}  // namespace

double hermite_value(int k, double x) {
    if (k < 0) throw std::invalid_argument("hermite_value: k must be >= 0");
    std::vector<double> h;
    hermite_values(k, x, h);
    return h[k];
}

HermiteDensity::HermiteDensity(std::vector<double> coeffs)
    : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        throw std::invalid_argument("HermiteDensity: empty coefficient list");
    }
}

HermiteDensity HermiteDensity::constant(double value, int order) {
    std::vector<double> c(order + 1, 0.0);
    c[0] = value * kPiQuarter;
    return HermiteDensity(std::move(c));
}

double HermiteDensity::operator()(double x) const {
    std::vector<double> h;
    hermite_values(order(), x, h);
    double acc = 0.0;
    for (int k = 0; k <= order(); ++k) acc += coeffs_[k] * h[k];
    return acc;
}

double HermiteDensity::mass() const { return coeffs_[0] * kPiQuarter; }

double HermiteDensity::grid_min() const {
    double lo = (*this)(kGridLo);
    for (int i = 1; i < kGridPoints; ++i) {
        const double x = kGridLo + (kGridHi - kGridLo) * i / (kGridPoints - 1);
        lo = std::min(lo, (*this)(x));
    }
    return lo;
}

ProjectionResult hermite_project(const std::function<double(double)>& density,
                                 int order) {
    if (order < 0) throw std::invalid_argument("hermite_project: order < 0");
    const auto gh = quad::gauss_hermite(std::max(2 * (order + 1), 40));
    std::vector<double> c(order + 1, 0.0);
    std::vector<double> h;
    for (size_t i = 0; i < gh.x.size(); ++i) {
        hermite_values(order, gh.x[i], h);
        const double dw = density(gh.x[i]) * gh.w[i];
        for (int k = 0; k <= order; ++k) c[k] += dw * h[k];
    }

    double max_coeff = 0.0, max_tail = 0.0;
    for (int k = 0; k <= order; ++k) {
        max_coeff = std::max(max_coeff, std::abs(c[k]));
        if (k >= order - std::max(order / 4, 1)) {
            max_tail = std::max(max_tail, std::abs(c[k]));
        }
    }
    if (order >= 8 && max_coeff > 0.0 && max_tail > 0.5 * max_coeff) {
        throw std::runtime_error(
            "hermite_project: coefficient tail is not decaying");
    }

    ProjectionResult res{HermiteDensity(std::move(c)), 0.0,
                         max_tail <= 1e-12 * std::max(max_coeff, 1.0)};
    const auto& d = res.density;
    res.l2_error = std::sqrt(std::max(
        0.0, quad::integrate_real_line(
                 [&](double x) {
                     // e^{-x^2} underflows past |x| ~ 27; skip the far tail so
                     // polynomial overflow in d(x) cannot poison the sum
                     if (std::abs(x) > 40.0) return 0.0;
                     const double e = density(x) - d(x);
                     return e * e * std::exp(-x * x);
                 },
                 1e-14, 1e-10)));
    return res;
}

HermiteDensity apply_generator(const HermiteDensity& d, int power) {
    if (power < 1) throw std::invalid_argument("apply_generator: power < 1");
    std::vector<double> c = d.coeffs();
    for (int k = 0; k < static_cast<int>(c.size()); ++k) {
        c[k] *= std::pow(-0.5 * k, power);
    }
    return HermiteDensity(std::move(c));
}

HermiteDensity semigroup(const HermiteDensity& d, double t) {
    if (t < 0.0) {
        throw std::invalid_argument(
            "semigroup: t must be >= 0 (use reversal_approximant)");
    }
    std::vector<double> c = d.coeffs();
    for (int k = 0; k < static_cast<int>(c.size()); ++k) {
        c[k] *= std::exp(-0.5 * k * t);
    }
    return HermiteDensity(std::move(c));
}

ReversalResult reversal_approximant(const HermiteDensity& d, double t,
                                    int order_m) {
    if (!(t > 0.0)) throw std::invalid_argument("reversal_approximant: t <= 0");
    if (order_m < 2) {
        throw std::invalid_argument("reversal_approximant: order must be >= 2");
    }
    std::vector<double> c = d.coeffs();
    for (int k = 0; k < static_cast<int>(c.size()); ++k) {
        const double s = 0.5 * t * k;
        double factor = 1.0, term = 1.0;
        for (int j = 1; j < order_m; ++j) {
            term *= s / j;
            factor += term;
        }
        c[k] *= factor;
    }
    ReversalResult res{HermiteDensity(std::move(c)), false};
    res.is_probability = res.density.nonnegative_on_grid();
    return res;
}

double reversal_error_chi2(const HermiteDensity& v, double t, int order_m) {
    if (t == 0.0) return 0.0;
    if (!(t > 0.0)) throw std::invalid_argument("reversal_error_chi2: t < 0");

    // Round trip acts mode by mode, so form the difference v_t - v directly
    // in coefficients; reconstructing the two densities first and subtracting
    // on the grid would lose everything below ~1e-16 of |v|.
    const int order = v.order();
    std::vector<double> vt = v.coeffs();
    std::vector<double> diff(order + 1, 0.0);
    for (int k = 0; k <= order; ++k) {
        const double r = round_trip_defect(0.5 * t * k, order_m);
        diff[k] = vt[k] * r;
        vt[k] += diff[k];
    }
    const HermiteDensity num{std::move(diff)};
    const HermiteDensity den{std::move(vt)};

    const auto gh = quad::gauss_hermite(std::max(4 * (order + 1), 64));
    double acc = 0.0;
    for (size_t i = 0; i < gh.x.size(); ++i) {
        const double d = den(gh.x[i]);
        if (d <= 0.0) {
            throw std::runtime_error(
                "reversal_error_chi2: round-trip density not positive");
        }
        const double e = num(gh.x[i]);
        acc += gh.w[i] * e * e / d;
    }
    return acc;
}

FlowBounds flow_bounds(const HermiteDensity& v) {
    const HermiteDensity l1 = apply_generator(v, 1);
    const HermiteDensity l2 = apply_generator(v, 2);
    const HermiteDensity l3 = apply_generator(v, 3);
    FlowBounds b;
    for (int i = 0; i < kGridPoints; ++i) {
        const double x = kGridLo + (kGridHi - kGridLo) * i / (kGridPoints - 1);
        const double vx = v(x);
        if (vx <= 0.0) {
            throw std::runtime_error("flow_bounds: density not positive on grid");
        }
        b.a1 = std::max(b.a1, l1(x) / vx);
        b.a2 = std::max(b.a2, -l2(x) / vx);
        b.a3 = std::max(b.a3, std::abs(l3(x)) / vx);
    }
    return b;
}

double smooth_cutoff(double x) {
    const double y = std::abs(x);
    if (y <= 1.0) return 1.0;
    if (y >= 2.0) return 0.0;
    const double u = 2.0 - y;  // rises 0 -> 1 across the transition band
    const double u4 = u * u * u * u;
    return u4 * (35.0 + u * (-84.0 + u * (70.0 - 20.0 * u)));
}

CutoffResult cutoff_potential(const std::function<double(double)>& v,
                              double n, double lambda, int k) {
    if (!(n > 1.0) || !(lambda > 0.0) || k < 1) {
        throw std::invalid_argument("cutoff_potential: bad parameters");
    }
    const double scale = std::pow(n, -lambda / (4.0 * k));

    // V_c = V(x) theta((x - c) scale) + d. The additive d drops out of the
    // normalized mean, so solve the mean equation in c alone, then read d
    // off the mass condition. Mass is matched to the input's own mass, so a
    // probability input stays a probability.
    const auto mass_of = [&](double c) {
        return quad::integrate_real_line(
            [&](double x) {
                return std::exp(-v(x) * smooth_cutoff((x - c) * scale) - x * x);
            },
            1e-13, 1e-11);
    };
    const auto mean_of = [&](double c) {
        return quad::integrate_real_line(
                   [&](double x) {
                       return x * std::exp(-v(x) *
                                               smooth_cutoff((x - c) * scale) -
                                           x * x);
                   },
                   1e-13, 1e-11) /
               mass_of(c);
    };

    double c_n = 0.0;
    double m0 = mean_of(0.0);
    if (std::abs(m0) > 1e-13) {
        // Bracket the root of the normalized mean, then bisect.
        double lo = 0.0, hi = 0.0, flo = m0, fhi = m0;
        bool found = false;
        for (double w = 0.25; w <= 16.0; w *= 2.0) {
            lo = -w;
            hi = w;
            flo = mean_of(lo);
            fhi = mean_of(hi);
            if (flo == 0.0 || fhi == 0.0 || (flo < 0.0) != (fhi < 0.0)) {
                found = true;
                break;
            }
        }
        if (!found) {
            throw std::runtime_error(
                "cutoff_potential: could not bracket zero-mean shift, mean "
                "residual " +
                std::to_string(m0));
        }
        for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = mean_of(mid);
            if (fm == 0.0) {
                lo = hi = mid;
            } else if ((fm < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        c_n = 0.5 * (lo + hi);
        const double res = mean_of(c_n);
        if (std::abs(res) > 1e-9) {
            throw std::runtime_error(
                "cutoff_potential: zero-mean solve stalled, residual " +
                std::to_string(res));
        }
    }

    const double target =
        quad::integrate_real_line(
            [&](double x) { return std::exp(-v(x) - x * x); }, 1e-13, 1e-11);
    const double d_n = std::log(mass_of(c_n) / target);

    CutoffResult out;
    out.c_n = c_n;
    out.d_n = d_n;
    out.v_c = [v, c_n, d_n, scale](double x) {
        return v(x) * smooth_cutoff((x - c_n) * scale) + d_n;
    };
    return out;
}

WignerMatrix matrix_ou_step(const WignerMatrix& h, double t,
                            std::uint64_t seed) {
    if (t < 0.0) throw std::invalid_argument("matrix_ou_step: t < 0");
    if (t == 0.0) return h;
    const int n = h.size();
    WignerMatrix out = sample_gue(n, h.convention(), seed);
    const double decay = std::exp(-0.5 * t);
    const double fresh = std::sqrt(-std::expm1(-t));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out.at(i, j) = decay * h.at(i, j) + fresh * out.at(i, j);
        }
    }
    return out;
}

}  // namespace wigner
