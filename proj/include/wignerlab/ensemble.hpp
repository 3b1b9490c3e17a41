#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "wignerlab/rng.hpp"

namespace wigner {

enum class TailClass { gaussian_dominated, exponential, compact };

/// Variance convention for sampled matrices.
///   support2: off-diagonal re/im variance 1/2, spectrum concentrates on [-2,2]
///   support1: entry law variance 1/8 + a^2/2, spectrum on [-sqrt(1+4a^2), sqrt(1+4a^2)]
enum class Convention { support2, support1 };

std::string to_string(Convention c);
Convention convention_from_string(const std::string& s);

/// One-dimensional entry law nu(dx) = e^{-U(x)} dx with mean zero.
/// Sampling goes through a deterministic inverse-CDF table built by
/// adaptive quadrature of e^{-U}; Gaussian laws use exact Box-Muller.
class EntryLaw {
public:
    using Potential = std::function<double(double)>;

    EntryLaw(Potential u, TailClass tail, double declared_variance,
             double support_lo, double support_hi);

    double potential(double x) const { return u_(x); }
    double density(double x) const;
    double declared_variance() const { return variance_; }
    TailClass tail_class() const { return tail_; }
    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }
    bool is_gaussian() const { return gaussian_; }

    /// CDF evaluated from the table (interpolated).
    double cdf(double x) const;
    double quantile(double p) const;

    /// One draw from the law; bitwise deterministic given the rng state.
    double sample(StreamRng& rng) const;
    /// Rejection sampler against a Gaussian envelope, kept as a cross-check.
    double sample_rejection(StreamRng& rng) const;

    /// Same law for the rescaled variable c*X with c chosen so the variance
    /// becomes target.
    EntryLaw scaled_to_variance(double target) const;

    // Built-in potentials.
    static EntryLaw gaussian(double variance);
    /// U(x) = x^2 + eps x^4 + log Z, normalized; variance < 1/2 for eps > 0.
    static EntryLaw quartic(double eps);
    /// nu(x) proportional to e^{-rate |x|} on the line.
    static EntryLaw two_sided_exponential(double rate);
    /// Density w.r.t. mu = e^{-x^2}dx proportional to (1-x^2)^power on [-1,1].
    static EntryLaw bump(int power);
    static EntryLaw from_name(const std::string& name, double param);

private:
    void build_table();

    Potential u_;
    TailClass tail_;
    double variance_;
    double lo_, hi_;
    bool gaussian_ = false;
    double raw_mass_ = 1.0;
    // inverse-CDF table (x grid and cumulative probabilities)
    std::shared_ptr<const std::vector<double>> grid_x_;
    std::shared_ptr<const std::vector<double>> grid_f_;
};

struct ValidationReport {
    bool normalized = false;
    bool mean_zero = false;
    bool variance_ok = false;
    bool derivative_growth_ok = false;
    bool tail_ok = false;
    double measured_mass = 0.0;
    double measured_mean = 0.0;
    double measured_variance = 0.0;
    double worst_derivative_ratio = 0.0;
    double worst_tail_ratio = 0.0;
    bool pass() const {
        return normalized && mean_zero && variance_ok && derivative_growth_ok &&
               tail_ok;
    }
};

struct ValidationOptions {
    double mass_tol = 1e-10;
    double mean_tol = 1e-9;
    double variance_tol = 1e-8;
    // grown-derivative bound: sum_j |V^(j)(x)| <= growth_c (1+x^2)^growth_k
    double growth_c = 1e3;
    int growth_k = 6;
    // tail bound for gaussian_dominated laws: e^{-U} <= tail_c e^{-tail_delta x^2}
    double tail_c = 10.0;
    double tail_delta = 0.25;
};

ValidationReport validate_law(const EntryLaw& law,
                              const ValidationOptions& opt = {});

/// Hermitian N x N matrix with the N^{-1/2} entry scaling.
class WignerMatrix {
public:
    WignerMatrix(int n, Convention conv, std::uint64_t seed);

    int size() const { return n_; }
    Convention convention() const { return conv_; }
    std::uint64_t seed() const { return seed_; }

    std::complex<double>& at(int i, int j) { return data_[i * n_ + j]; }
    const std::complex<double>& at(int i, int j) const {
        return data_[i * n_ + j];
    }
    const std::vector<std::complex<double>>& data() const { return data_; }
    std::vector<std::complex<double>>& data() { return data_; }

    bool is_hermitian(double tol = 0.0) const;

private:
    int n_;
    Convention conv_;
    std::uint64_t seed_;
    std::vector<std::complex<double>> data_;
};

/// Wigner matrix with i.i.d. entries above the diagonal: off_diag is the law
/// of each real/imaginary part, diag the law of the (real) diagonal entries.
WignerMatrix sample_wigner(int n, const EntryLaw& off_diag,
                           const EntryLaw& diag, Convention conv,
                           std::uint64_t seed);

/// GUE matrix at the given convention's scaling.
WignerMatrix sample_gue(int n, Convention conv, std::uint64_t seed);

/// base + a V with V an independent GUE matrix at matching scaling.
WignerMatrix sample_deformed(const WignerMatrix& base, double a,
                             std::uint64_t seed);

/// Compactly supported recentered renormalization nu_l(x) = nu(x+a_l)1(|x|<=l)/Z_l.
EntryLaw truncate_law(const EntryLaw& law, double ell);
struct TruncationInfo { double a_ell; double z_ell; };
TruncationInfo truncation_constants(const EntryLaw& law, double ell);

/// Compact-support mixture q = (tau^m + u)/(1 + tau^m), u a density w.r.t.
/// mu(dx) = e^{-x^2}dx. Returns the corresponding entry law.
EntryLaw bump_mixture(const std::function<double(double)>& u_density_wrt_mu,
                      double tau, int m);
/// Density of the mixture w.r.t. mu, for direct checks.
double bump_mixture_density(const std::function<double(double)>& u, double tau,
                            int m, double x);

}  // namespace wigner
