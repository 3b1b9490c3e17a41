#pragma once

#include <complex>
#include <vector>

#include "wignerlab/spectra.hpp"

namespace wigner {

/// Semicircle reference density. support2 has radius 2; support1 has radius
/// sqrt(1 + 4 a^2) where a is the deformation strength.
struct SemicircleRef {
    Convention convention = Convention::support2;
    double a = 0.0;

    double radius() const;
    double density(double x) const;
    double cdf(double x) const;
    /// Stieltjes transform with the branch so that m(z) -> 1/z at infinity.
    std::complex<double> stieltjes(std::complex<double> z) const;
};

double semicircle_density(double x, const SemicircleRef& ref);

/// (1/N) sum_j 1/(z - y_j), Im z > 0 required.
std::complex<double> stieltjes_empirical(const SpectralSample& sample,
                                         std::complex<double> z);

std::complex<double> stieltjes_semicircle(std::complex<double> z,
                                          const SemicircleRef& ref);

struct GoodSetReport {
    bool pass = false;
    double worst_deviation = 0.0;
    double max_abs_eigenvalue = 0.0;
    bool eigenvalue_bound_ok = false;
};

/// Checks sup over a z-grid (spacing eta/2, Im z in [eta, 1]) of
/// |m_N - m_sc| <= tolerance, plus sup_j |y_j| <= k_bound.
GoodSetReport in_good_set(const SpectralSample& sample,
                          const SemicircleRef& ref, double eta,
                          double tolerance, double k_bound, double window_lo,
                          double window_hi);

struct GapEstimate {
    double u = 0.0;
    double s = 0.0;
    double delta = 0.0;
    double value = 0.0;
    double std_error = 0.0;  // sample std / sqrt(M) after aggregation
    int samples = 1;
    long count = 0;
    bool low_count = false;  // no eigenvalue fell in the energy window
};

/// Density of eigenvalue pairs with gap below s/(N rho(u)) in the window
/// |x_j - u| <= t_N, t_N = N^{delta - 1}.
GapEstimate gap_statistic(const SpectralSample& sample,
                          const SemicircleRef& ref, double u, double s,
                          double delta);

/// Mean / standard error across independent per-sample estimates.
GapEstimate aggregate_gap_estimates(const std::vector<GapEstimate>& parts);

struct CorrelationEstimate {
    double u = 0.0;
    double half_width = 0.0;
    std::vector<double> edges;    // bins + 1 entries in the rescaled variable
    std::vector<double> density;  // normalized so Poisson gives 1
    std::vector<double> std_error;
    std::vector<long> counts;
    long total_pairs = 0;
    long out_of_range = 0;
    bool empty = false;
};

/// Histogram of tau = N rho(u) (x_j - x_i) over ordered pairs with both
/// eigenvalues within half_width of u, normalized to a flat profile of 1
/// for a Poisson process of the local semicircle intensity.
CorrelationEstimate pair_correlation_estimate(
    const std::vector<SpectralSample>& samples, const SemicircleRef& ref,
    double u, double tau_max, int bins, double half_width);

/// Deterministic spectrum: y_j solves F_sc(y_j) = (j - 1/2)/N.
SpectralSample semicircle_quantiles(int n, const SemicircleRef& ref);

}  // namespace wigner
