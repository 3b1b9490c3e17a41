#include "wignerlab/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wigner {

double SemicircleRef::radius() const {
    if (convention == Convention::support2) return 2.0;
    return std::sqrt(1.0 + 4.0 * a * a);
}

double SemicircleRef::density(double x) const {
    const double r = radius();
    const double s = r * r - x * x;
    if (s <= 0.0) return 0.0;
    return 2.0 * std::sqrt(s) / (M_PI * r * r);
}

double SemicircleRef::cdf(double x) const {
    const double r = radius();
    if (x <= -r) return 0.0;
    if (x >= r) return 1.0;
    return 0.5 + (x * std::sqrt(r * r - x * x) + r * r * std::asin(x / r)) /
                     (M_PI * r * r);
}

std::complex<double> SemicircleRef::stieltjes(std::complex<double> z) const {
    const double r = radius();
    // sqrt(z^2 - r^2) with the cut on [-r, r]; the rationalized form
    // 2/(z + root) avoids cancellation for large |z|
    const std::complex<double> root = std::sqrt(z - r) * std::sqrt(z + r);
    return 2.0 / (z + root);
}

double semicircle_density(double x, const SemicircleRef& ref) {
    return ref.density(x);
}

std::complex<double> stieltjes_empirical(const SpectralSample& sample,
                                         std::complex<double> z) {
    if (!(z.imag() > 0.0)) {
        throw std::invalid_argument("stieltjes_empirical: need Im z > 0");
    }
    if (sample.eigenvalues.empty()) {
        throw std::invalid_argument("stieltjes_empirical: empty sample");
    }
    std::complex<double> acc = 0.0;
    for (double y : sample.eigenvalues) acc += 1.0 / (z - y);
    return acc / static_cast<double>(sample.size());
}

std::complex<double> stieltjes_semicircle(std::complex<double> z,
                                          const SemicircleRef& ref) {
    if (!(z.imag() > 0.0)) {
        throw std::invalid_argument("stieltjes_semicircle: need Im z > 0");
    }
    return ref.stieltjes(z);
}

GoodSetReport in_good_set(const SpectralSample& sample,
                          const SemicircleRef& ref, double eta,
                          double tolerance, double k_bound, double window_lo,
                          double window_hi) {
    if (!(eta > 0.0)) throw std::invalid_argument("in_good_set: eta must be > 0");
    if (sample.eigenvalues.empty()) {
        throw std::invalid_argument("in_good_set: empty sample");
    }
    GoodSetReport rep;
    for (double y : sample.eigenvalues) {
        rep.max_abs_eigenvalue = std::max(rep.max_abs_eigenvalue, std::abs(y));
    }
    rep.eigenvalue_bound_ok = rep.max_abs_eigenvalue <= k_bound;

    const double step = eta / 2.0;
    double worst = 0.0;
    for (double e = window_lo; e <= window_hi + 1e-15; e += step) {
        for (double im = eta; im <= 1.0 + 1e-15; im += step) {
            const std::complex<double> z(e, im);
            const double dev =
                std::abs(stieltjes_empirical(sample, z) - ref.stieltjes(z));
            worst = std::max(worst, dev);
        }
    }
    rep.worst_deviation = worst;
    rep.pass = rep.eigenvalue_bound_ok && worst <= tolerance;
    return rep;
}

GapEstimate gap_statistic(const SpectralSample& sample,
                          const SemicircleRef& ref, double u, double s,
                          double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("gap_statistic: delta must be in (0,1)");
    }
    const double rho = ref.density(u);
    if (!(rho > 0.0)) {
        throw std::invalid_argument("gap_statistic: u outside the bulk");
    }
    const int n = sample.size();
    std::vector<double> x = sample.eigenvalues;
    std::sort(x.begin(), x.end());

    const double t_n = std::pow(static_cast<double>(n), delta - 1.0);
    const double gap_cut = s / (n * rho);

    long count = 0;
    bool any_in_window = false;
    for (int j = 0; j + 1 < n; ++j) {
        if (std::abs(x[j] - u) > t_n) continue;
        any_in_window = true;
        if (x[j + 1] - x[j] <= gap_cut) ++count;
    }

    GapEstimate est;
    est.u = u;
    est.s = s;
    est.delta = delta;
    est.count = count;
    est.low_count = !any_in_window;
    est.value = static_cast<double>(count) / (2.0 * n * t_n * rho);
    return est;
}

GapEstimate aggregate_gap_estimates(const std::vector<GapEstimate>& parts) {
    if (parts.empty()) {
        throw std::invalid_argument("aggregate_gap_estimates: no estimates");
    }
    GapEstimate out = parts.front();
    const int m = static_cast<int>(parts.size());
    double sum = 0.0, sumsq = 0.0;
    out.count = 0;
    out.low_count = true;
    for (const auto& p : parts) {
        sum += p.value;
        sumsq += p.value * p.value;
        out.count += p.count;
        out.low_count = out.low_count && p.low_count;
    }
    out.samples = m;
    out.value = sum / m;
    if (m > 1) {
        const double var =
            std::max(0.0, (sumsq - m * out.value * out.value) / (m - 1));
        out.std_error = std::sqrt(var / m);
    }
    return out;
}

CorrelationEstimate pair_correlation_estimate(
    const std::vector<SpectralSample>& samples, const SemicircleRef& ref,
    double u, double tau_max, int bins, double half_width) {
    if (samples.empty()) {
        throw std::invalid_argument("pair_correlation_estimate: no samples");
    }
    if (bins < 1 || !(tau_max > 0.0) || !(half_width > 0.0)) {
        throw std::invalid_argument("pair_correlation_estimate: bad parameters");
    }
    const double rho = ref.density(u);
    if (!(rho > 0.0)) {
        throw std::invalid_argument("pair_correlation_estimate: u outside bulk");
    }

    CorrelationEstimate est;
    est.u = u;
    est.half_width = half_width;
    est.edges.resize(bins + 1);
    const double dt = tau_max / bins;
    for (int b = 0; b <= bins; ++b) est.edges[b] = b * dt;
    est.counts.assign(bins, 0);
    est.density.assign(bins, 0.0);
    est.std_error.assign(bins, 0.0);

    // Per-sample densities, then mean / stderr across samples.
    const int m = static_cast<int>(samples.size());
    std::vector<std::vector<double>> per(bins, std::vector<double>());
    for (const auto& sample : samples) {
        const int n = sample.size();
        const double intensity = n * rho;
        std::vector<double> pts;
        for (double x : sample.eigenvalues) {
            if (std::abs(x - u) <= half_width) pts.push_back(x);
        }
        std::sort(pts.begin(), pts.end());
        std::vector<long> cnt(bins, 0);
        for (size_t i = 0; i < pts.size(); ++i) {
            for (size_t j = i + 1; j < pts.size(); ++j) {
                const double tau = intensity * (pts[j] - pts[i]);
                if (tau >= tau_max) {
                    est.out_of_range += static_cast<long>(pts.size() - j);
                    break;
                }
                const int b = std::min(bins - 1, static_cast<int>(tau / dt));
                ++cnt[b];
                ++est.counts[b];
                ++est.total_pairs;
            }
        }
        for (int b = 0; b < bins; ++b) {
            // Edge-corrected Poisson normalization: expected pair count in
            // the bin for intensity N*rho over a window of length 2W.
            const double sep = (est.edges[b] + est.edges[b + 1]) / 2 / intensity;
            const double norm =
                intensity * std::max(2.0 * half_width - sep, 1e-300) * dt;
            per[b].push_back(cnt[b] / norm);
        }
    }
    long total = est.total_pairs;
    est.empty = (total == 0);
    for (int b = 0; b < bins; ++b) {
        double sum = 0.0, sumsq = 0.0;
        for (double v : per[b]) {
            sum += v;
            sumsq += v * v;
        }
        const double mean = sum / m;
        est.density[b] = mean;
        if (m > 1) {
            const double var = std::max(0.0, (sumsq - m * mean * mean) / (m - 1));
            est.std_error[b] = std::sqrt(var / m);
        }
    }
    return est;
}

SpectralSample semicircle_quantiles(int n, const SemicircleRef& ref) {
    if (n < 2) throw std::invalid_argument("semicircle_quantiles: N must be >= 2");
    SpectralSample s;
    s.convention = ref.convention;
    s.eigenvalues.resize(n);
    const double r = ref.radius();
    for (int j = 1; j <= n; ++j) {
        const double p = (j - 0.5) / n;
        double lo = -r, hi = r;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (ref.cdf(mid) < p) {
                lo = mid;
            } else {
                hi = mid;
            }
            if (hi - lo < 1e-13) break;
        }
        s.eigenvalues[j - 1] = 0.5 * (lo + hi);
    }
    return s;
}

}  // namespace wigner
