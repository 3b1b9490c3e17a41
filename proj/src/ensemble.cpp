#include "wignerlab/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wignerlab/quadrature.hpp"

namespace wigner {

namespace {

constexpr int kTableCells = 4096;

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// j-th central finite difference.
double finite_diff(const std::function<double(double)>& f, double x, int j,
                   double h) {
    double acc = 0.0;
    for (int i = 0; i <= j; ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        acc += sign * binom(j, i) * f(x + (0.5 * j - i) * h);
    }
    return acc / std::pow(h, j);
}

// Expand [lo, hi] until the density at the edges is negligible.
void find_support(const std::function<double(double)>& u, double& lo,
                  double& hi) {
    auto dens = [&](double x) { return std::exp(-u(x)); };
    lo = -1.0;
    hi = 1.0;
    while (dens(hi) > 1e-18 && hi < 1e6) hi *= 1.25;
    while (dens(lo) > 1e-18 && lo > -1e6) lo *= 1.25;
    hi *= 1.05;
    lo *= 1.05;
}

}  // namespace

std::string to_string(Convention c) {
    return c == Convention::support2 ? "support2" : "support1";
}

Convention convention_from_string(const std::string& s) {
    if (s == "support2") return Convention::support2;
    if (s == "support1") return Convention::support1;
    throw std::invalid_argument("unknown convention: " + s);
}

EntryLaw::EntryLaw(Potential u, TailClass tail, double declared_variance,
                   double support_lo, double support_hi)
    : u_(std::move(u)),
      tail_(tail),
      variance_(declared_variance),
      lo_(support_lo),
      hi_(support_hi) {
    if (!(variance_ > 0.0)) {
        throw std::invalid_argument("EntryLaw: variance must be positive");
    }
    if (!(lo_ < hi_)) {
        throw std::invalid_argument("EntryLaw: empty support");
    }
    build_table();
}

double EntryLaw::density(double x) const {
    if (x < lo_ || x > hi_) return 0.0;
    const double u = u_(x);
    if (std::isnan(u)) {
        throw std::invalid_argument("EntryLaw: potential is NaN");
    }
    return std::exp(-u);
}

void EntryLaw::build_table() {
    auto xs = std::make_shared<std::vector<double>>(kTableCells + 1);
    auto fs = std::make_shared<std::vector<double>>(kTableCells + 1);
    const double dx = (hi_ - lo_) / kTableCells;
    for (int i = 0; i <= kTableCells; ++i) (*xs)[i] = lo_ + i * dx;

    // Per-cell Gauss-Legendre integration of the density, accumulated.
    const auto gl = quad::gauss_legendre(16, 0.0, 1.0);
    (*fs)[0] = 0.0;
    for (int i = 0; i < kTableCells; ++i) {
        double cell = 0.0;
        for (size_t k = 0; k < gl.x.size(); ++k) {
            cell += gl.w[k] * density((*xs)[i] + gl.x[k] * dx);
        }
        (*fs)[i + 1] = (*fs)[i] + cell * dx;
    }
    const double total = fs->back();
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw std::invalid_argument("EntryLaw: density has no mass");
    }
    for (auto& f : *fs) f /= total;
    fs->back() = 1.0;
    raw_mass_ = total;
    grid_x_ = std::move(xs);
    grid_f_ = std::move(fs);
}

double EntryLaw::cdf(double x) const {
    const auto& xs = *grid_x_;
    const auto& fs = *grid_f_;
    if (x <= xs.front()) return 0.0;
    if (x >= xs.back()) return 1.0;
    const double dx = (xs.back() - xs.front()) / kTableCells;
    int i = std::min<int>(kTableCells - 1,
                          static_cast<int>((x - xs.front()) / dx));
    // partial cell by GL-16, normalized the same way as the table
    static const auto gl = quad::gauss_legendre(16, 0.0, 1.0);
    double part = 0.0;
    const double w = x - xs[i];
    for (size_t k = 0; k < gl.x.size(); ++k) {
        part += gl.w[k] * density(xs[i] + gl.x[k] * w);
    }
    return fs[i] + part * w / raw_mass_;
}

double EntryLaw::quantile(double p) const {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("quantile: p outside [0,1]");
    }
    const auto& xs = *grid_x_;
    const auto& fs = *grid_f_;
    const auto it = std::upper_bound(fs.begin(), fs.end(), p);
    int i = std::max<int>(0, static_cast<int>(it - fs.begin()) - 1);
    i = std::min(i, kTableCells - 1);
    const double cell = fs[i + 1] - fs[i];
    double x = cell > 0.0
                   ? xs[i] + (p - fs[i]) / cell * (xs[i + 1] - xs[i])
                   : xs[i];
    // Newton refinement against the exact CDF.
    for (int it2 = 0; it2 < 3; ++it2) {
        const double d = density(x) / raw_mass_;
        if (d <= 0.0) break;
        x -= (cdf(x) - p) / d;
        x = std::clamp(x, xs.front(), xs.back());
    }
    return x;
}

double EntryLaw::sample(StreamRng& rng) const {
    if (gaussian_) {
        return std::sqrt(variance_) * rng.next_gaussian();
    }
    const double p = rng.next_double();
    const auto& xs = *grid_x_;
    const auto& fs = *grid_f_;
    const auto it = std::upper_bound(fs.begin(), fs.end(), p);
    int i = std::max<int>(0, static_cast<int>(it - fs.begin()) - 1);
    i = std::min(i, kTableCells - 1);
    const double cell = fs[i + 1] - fs[i];
    if (cell <= 0.0) return xs[i];
    // Quadratic inversion: density taken linear across the cell.
    const double dx = xs[i + 1] - xs[i];
    const double d0 = density(xs[i]) * dx / cell;  // normalized slope at left
    const double d1 = density(xs[i + 1]) * dx / cell;
    const double s = (p - fs[i]) / cell;  // in [0,1]
    double tloc;
    const double a = 0.5 * (d1 - d0);
    if (std::abs(a) < 1e-12 * (d0 + 1.0)) {
        tloc = d0 > 0.0 ? s / d0 : s;
    } else {
        const double disc = d0 * d0 + 4.0 * a * s;
        tloc = (-d0 + std::sqrt(std::max(0.0, disc))) / (2.0 * a);
    }
    tloc = std::clamp(tloc, 0.0, 1.0);
    return xs[i] + tloc * dx;
}

double EntryLaw::sample_rejection(StreamRng& rng) const {
    // Gaussian envelope centered at 0, std chosen from the support width.
    const double s = std::max({std::abs(lo_), std::abs(hi_), 1.0}) / 3.0;
    // Envelope constant from a scan of the grid.
    double m = 0.0;
    const auto& xs = *grid_x_;
    for (size_t i = 0; i < xs.size(); i += 8) {
        const double env =
            std::exp(-xs[i] * xs[i] / (2 * s * s)) / (s * std::sqrt(2 * M_PI));
        const double d = density(xs[i]);
        if (env > 0.0 && d > 0.0) m = std::max(m, d / env);
    }
    m *= 1.2;
    for (int tries = 0; tries < 100000; ++tries) {
        const double x = s * rng.next_gaussian();
        const double env =
            m * std::exp(-x * x / (2 * s * s)) / (s * std::sqrt(2 * M_PI));
        if (env * rng.next_double() <= density(x)) return x;
    }
    throw std::runtime_error("sample_rejection: acceptance failure");
}

EntryLaw EntryLaw::scaled_to_variance(double target) const {
    if (!(target > 0.0)) {
        throw std::invalid_argument("scaled_to_variance: target must be > 0");
    }
    const double c = std::sqrt(target / variance_);
    if (gaussian_) return gaussian(target);
    auto u = u_;
    const double logc = std::log(c);
    return EntryLaw([u, c, logc](double x) { return u(x / c) + logc; }, tail_,
                    target, lo_ * c, hi_ * c);
}

EntryLaw EntryLaw::gaussian(double variance) {
    const double v = variance;
    if (!(v > 0.0)) throw std::invalid_argument("gaussian: variance must be > 0");
    const double logz = 0.5 * std::log(2.0 * M_PI * v);
    const double s = std::sqrt(v);
    EntryLaw law([v, logz](double x) { return x * x / (2.0 * v) + logz; },
                 TailClass::gaussian_dominated, v, -10.0 * s, 10.0 * s);
    law.gaussian_ = true;
    return law;
}

EntryLaw EntryLaw::quartic(double eps) {
    if (eps < 0.0) throw std::invalid_argument("quartic: eps must be >= 0");
    auto raw = [eps](double x) { return x * x + eps * x * x * x * x; };
    double lo, hi;
    find_support(raw, lo, hi);
    const double z = quad::integrate(
        [&](double x) { return std::exp(-raw(x)); }, lo, hi, 1e-14, 1e-13);
    const double logz = std::log(z);
    const double var =
        quad::integrate([&](double x) { return x * x * std::exp(-raw(x)); },
                        lo, hi, 1e-14, 1e-13) /
        z;
    return EntryLaw([raw, logz](double x) { return raw(x) + logz; },
                    TailClass::gaussian_dominated, var, lo, hi);
}

EntryLaw EntryLaw::two_sided_exponential(double rate) {
    if (!(rate > 0.0)) {
        throw std::invalid_argument("two_sided_exponential: rate must be > 0");
    }
    const double logz = -std::log(rate / 2.0);
    const double bound = 45.0 / rate;
    return EntryLaw(
        [rate, logz](double x) { return rate * std::abs(x) + logz; },
        TailClass::exponential, 2.0 / (rate * rate), -bound, bound);
}

EntryLaw EntryLaw::bump(int power) {
    if (power < 1) throw std::invalid_argument("bump: power must be >= 1");
    auto raw = [power](double x) {
        const double s = 1.0 - x * x;
        if (s <= 0.0) return 1e300;
        return x * x - power * std::log(s);
    };
    const double z = quad::integrate(
        [&](double x) { return std::exp(-raw(x)); }, -1.0, 1.0, 1e-14, 1e-13);
    const double logz = std::log(z);
    const double var =
        quad::integrate([&](double x) { return x * x * std::exp(-raw(x)); },
                        -1.0, 1.0, 1e-14, 1e-13) /
        z;
    return EntryLaw([raw, logz](double x) { return raw(x) + logz; },
                    TailClass::compact, var, -1.0, 1.0);
}

EntryLaw EntryLaw::from_name(const std::string& name, double param) {
    if (name == "gaussian") return gaussian(param > 0.0 ? param : 0.5);
    if (name == "quartic") return quartic(param);
    if (name == "two_sided_exponential") {
        return two_sided_exponential(param > 0.0 ? param : 2.0);
    }
    if (name == "bump") return bump(param > 0.0 ? static_cast<int>(param) : 9);
    throw std::invalid_argument("unknown law: " + name);
}

ValidationReport validate_law(const EntryLaw& law,
                              const ValidationOptions& opt) {
    ValidationReport rep;
    const double lo = law.support_lo();
    const double hi = law.support_hi();
    auto dens = [&](double x) { return law.density(x); };

    rep.measured_mass = quad::integrate(dens, lo, hi, 1e-14, 1e-13);
    rep.measured_mean = quad::integrate(
        [&](double x) { return x * dens(x); }, lo, hi, 1e-14, 1e-13);
    rep.measured_variance = quad::integrate(
        [&](double x) { return x * x * dens(x); }, lo, hi, 1e-14, 1e-13);

    rep.normalized = std::abs(rep.measured_mass - 1.0) < opt.mass_tol;
    rep.mean_zero = std::abs(rep.measured_mean) < opt.mean_tol;
    rep.variance_ok =
        std::abs(rep.measured_variance - law.declared_variance()) <
        opt.variance_tol;

    // Derivative growth of V = U - x^2, estimated by finite differences on a
    // grid chosen so every stencil point stays inside the support. The widest
    // stencil (order 6, step 0.25) reaches 0.75 to each side.
    const double reach = 0.5 * 6 * 0.25 + 0.25;
    const double glo = std::max(lo + reach, -6.0);
    const double ghi = std::min(hi - reach, 6.0);
    auto vpot = [&](double x) { return law.potential(x) - x * x; };
    double worst = 0.0;
    if (glo <= ghi) {
        for (double x = glo; x <= ghi; x += 0.25) {
            double sum = 0.0;
            for (int j = 1; j <= 6; ++j) {
                sum += std::abs(finite_diff(vpot, x, j, 0.25));
            }
            const double bound = std::pow(1.0 + x * x, opt.growth_k);
            worst = std::max(worst, sum / bound);
        }
    }
    rep.worst_derivative_ratio = worst;
    rep.derivative_growth_ok = worst <= opt.growth_c;

    // Tail bound on a test grid.
    double worst_tail = 0.0;
    for (double x = lo; x <= hi; x += (hi - lo) / 400.0) {
        double envelope;
        switch (law.tail_class()) {
            case TailClass::gaussian_dominated:
                envelope = opt.tail_c * std::exp(-opt.tail_delta * x * x);
                break;
            case TailClass::exponential:
                envelope = opt.tail_c * std::exp(-0.5 * std::abs(x));
                break;
            case TailClass::compact:
            default:
                envelope = opt.tail_c;
                break;
        }
        worst_tail = std::max(worst_tail, dens(x) / envelope);
    }
    rep.worst_tail_ratio = worst_tail;
    rep.tail_ok = worst_tail <= 1.0;
    return rep;
}

WignerMatrix::WignerMatrix(int n, Convention conv, std::uint64_t seed)
    : n_(n), conv_(conv), seed_(seed), data_(static_cast<size_t>(n) * n) {
    if (n < 1) throw std::invalid_argument("WignerMatrix: N must be positive");
}

bool WignerMatrix::is_hermitian(double tol) const {
    for (int i = 0; i < n_; ++i) {
        if (std::abs(at(i, i).imag()) > tol) return false;
        for (int j = i + 1; j < n_; ++j) {
            if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) return false;
        }
    }
    return true;
}

WignerMatrix sample_wigner(int n, const EntryLaw& off_diag,
                           const EntryLaw& diag, Convention conv,
                           std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_wigner: N must be positive");
    if (conv == Convention::support2) {
        if (std::abs(off_diag.declared_variance() - 0.5) > 1e-6 ||
            std::abs(diag.declared_variance() - 1.0) > 1e-6) {
            throw std::invalid_argument(
                "sample_wigner: law variance inconsistent with support2");
        }
    } else {
        if (off_diag.declared_variance() < 0.125 - 1e-9) {
            throw std::invalid_argument(
                "sample_wigner: law variance inconsistent with support1");
        }
    }
    WignerMatrix h(n, conv, seed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i) {
        {
            StreamRng rng(seed, entry_stream(i, i));
            h.at(i, i) = scale * diag.sample(rng);
        }
        for (int j = i + 1; j < n; ++j) {
            StreamRng rng(seed, entry_stream(i, j));
            const double re = off_diag.sample(rng);
            const double im = off_diag.sample(rng);
            h.at(i, j) = scale * std::complex<double>(re, im);
            h.at(j, i) = std::conj(h.at(i, j));
        }
    }
    return h;
}

WignerMatrix sample_gue(int n, Convention conv, std::uint64_t seed) {
    WignerMatrix h(n, conv, seed);
    const double entry_scale =
        (conv == Convention::support2 ? 1.0 : 0.5) / std::sqrt(double(n));
    for (int i = 0; i < n; ++i) {
        {
            StreamRng rng(seed, entry_stream(i, i));
            h.at(i, i) = entry_scale * rng.next_gaussian();
        }
        for (int j = i + 1; j < n; ++j) {
            StreamRng rng(seed, entry_stream(i, j));
            auto [re, im] = rng.next_gaussian_pair();
            h.at(i, j) = entry_scale * M_SQRT1_2 * std::complex<double>(re, im);
            h.at(j, i) = std::conj(h.at(i, j));
        }
    }
    return h;
}

WignerMatrix sample_deformed(const WignerMatrix& base, double a,
                             std::uint64_t seed) {
    if (a < 0.0) throw std::invalid_argument("sample_deformed: a must be >= 0");
    if (a == 0.0) return base;
    WignerMatrix v = sample_gue(base.size(), base.convention(), seed);
    WignerMatrix out = base;
    for (size_t k = 0; k < out.data().size(); ++k) {
        out.data()[k] += a * v.data()[k];
    }
    return out;
}

TruncationInfo truncation_constants(const EntryLaw& law, double ell) {
    if (!(ell > 0.0)) throw std::invalid_argument("truncate_law: l must be > 0");
    if (law.tail_class() == TailClass::compact) {
        throw std::invalid_argument(
            "truncate_law: law must have exponential or faster tails");
    }
    const double iqr = law.quantile(0.75) - law.quantile(0.25);
    if (ell < iqr) {
        throw std::invalid_argument("truncate_law: l below interquartile scale");
    }
    auto moment = [&](double a) {
        return quad::integrate(
            [&](double x) { return x * law.density(x + a); }, -ell, ell, 1e-14,
            1e-13);
    };
    double a = 0.0;
    const double m0 = moment(0.0);
    if (std::abs(m0) > 1e-14) {
        // bisection; the windowed mean is decreasing in the shift
        double alo = -ell / 2, ahi = ell / 2;
        double flo = moment(alo), fhi = moment(ahi);
        if (flo * fhi > 0.0) {
            throw std::invalid_argument("truncate_law: cannot recenter");
        }
        for (int it = 0; it < 200; ++it) {
            a = 0.5 * (alo + ahi);
            const double fm = moment(a);
            if (std::abs(fm) < 1e-15 || ahi - alo < 1e-15) break;
            if ((fm > 0) == (flo > 0)) {
                alo = a;
                flo = fm;
            } else {
                ahi = a;
            }
        }
    }
    const double z = quad::integrate(
        [&](double x) { return law.density(x + a); }, -ell, ell, 1e-14, 1e-13);
    return {a, z};
}

EntryLaw truncate_law(const EntryLaw& law, double ell) {
    const auto [a, z] = truncation_constants(law, ell);
    const double logz = std::log(z);
    const double var = quad::integrate(
                           [&, a2 = a](double x) {
                               return x * x * law.density(x + a2);
                           },
                           -ell, ell, 1e-14, 1e-13) /
                       z;
    auto base = law;
    return EntryLaw(
        [base, a2 = a, logz](double x) {
            return base.potential(x + a2) + logz;
        },
        TailClass::compact, var, -ell, ell);
}

double bump_mixture_density(const std::function<double(double)>& u, double tau,
                            int m, double x) {
    const double tm = std::pow(tau, m);
    return (tm + u(x)) / (1.0 + tm);
}

EntryLaw bump_mixture(const std::function<double(double)>& u_density_wrt_mu,
                      double tau, int m) {
    if (!(tau > 0.0 && tau < 1.0)) {
        throw std::invalid_argument("bump_mixture: tau must be in (0,1)");
    }
    if (m < 2) throw std::invalid_argument("bump_mixture: m must be >= 2");
    auto u = u_density_wrt_mu;
    const double umass = quad::integrate_real_line(
        [&](double x) { return u(x) * std::exp(-x * x); }, 1e-12, 1e-10);
    if (std::abs(umass - 1.0) > 1e-6) {
        throw std::invalid_argument("bump_mixture: u is not a density w.r.t. mu");
    }
    const double tm = std::pow(tau, m);
    auto pot = [u, tm](double x) {
        const double q = (tm + u(x)) / (1.0 + tm);
        return x * x - std::log(q);
    };
    double lo, hi;
    find_support(pot, lo, hi);
    const double var = quad::integrate(
        [&](double x) { return x * x * std::exp(-pot(x)); }, lo, hi, 1e-14,
        1e-13);
    return EntryLaw(pot, TailClass::gaussian_dominated, var, lo, hi);
}

}  // namespace wigner
