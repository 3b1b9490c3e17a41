#pragma once

#include <functional>
#include <vector>

#include "wignerlab/ensemble.hpp"

namespace wigner {

/// Value of the orthonormal Hermite function h_k for L^2(mu),
/// mu(dx) = e^{-x^2} dx.
double hermite_value(int k, double x);

/// Density relative to mu stored spectrally: d(x) = sum_k c_k h_k(x).
/// The OU generator L = (1/4) d^2/dx^2 - (x/2) d/dx acts diagonally:
/// L h_k = -(k/2) h_k, so semigroup and reversal are exact per mode.
class HermiteDensity {
public:
    explicit HermiteDensity(std::vector<double> coeffs);
    static HermiteDensity constant(double value, int order);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double coeff(int k) const { return coeffs_[k]; }

    double operator()(double x) const;
    /// Total mass of d(x) mu(dx); encoded entirely in c_0.
    double mass() const;
    /// Minimum of the reconstruction on the standard 2001-point grid [-8,8].
    double grid_min() const;
    bool nonnegative_on_grid(double tol = -1e-12) const {
        return grid_min() >= tol;
    }

private:
    std::vector<double> coeffs_;
};

struct ProjectionResult {
    HermiteDensity density;
    double l2_error = 0.0;   // L^2(mu) reconstruction error
    bool tail_ok = true;     // coefficient tail decayed below threshold
};

/// Projects a density onto modes 0..K by Gauss-Hermite quadrature of order
/// >= 2K. Throws if the coefficient tail shows no decay at all.
ProjectionResult hermite_project(const std::function<double(double)>& density,
                                 int order);

/// Applies L^power mode by mode.
HermiteDensity apply_generator(const HermiteDensity& d, int power);

/// e^{tL} d for t >= 0; negative t is rejected (use reversal_approximant).
HermiteDensity semigroup(const HermiteDensity& d, double t);

struct ReversalResult {
    HermiteDensity density;
    bool is_probability = false;  // nonnegative on the check grid
};

/// Truncated backward flow sum_{j<m} (-tL)^j / j! applied to d.
ReversalResult reversal_approximant(const HermiteDensity& d, double t,
                                    int order_m);

/// chi^2 divergence of v_t = e^{tL} (reversal_approximant(v,t,m)) from v:
/// integral of (v_t - v)^2 / v_t dmu.
double reversal_error_chi2(const HermiteDensity& v, double t, int order_m);

struct FlowBounds {
    double a1 = 0.0;  // sup Lv / v
    double a2 = 0.0;  // sup (-L^2 v) / v
    double a3 = 0.0;  // sup |L^3 v| / v
};

/// Grid-sup estimates of the flow constants; requires v > 0 on the grid.
FlowBounds flow_bounds(const HermiteDensity& v);

struct CutoffResult {
    std::function<double(double)> v_c;  // the cutoff potential
    double c_n = 0.0;
    double d_n = 0.0;
};

/// V_c(x) = V(x) theta((x - c_N) N^{-lambda/4k}) + d_N with (c_N, d_N) solved
/// so that e^{-V_c} dmu is a probability density with zero mean. theta is a
/// degree-7 polynomial smoothstep, 1 on [-1,1] and 0 outside [-2,2].
CutoffResult cutoff_potential(const std::function<double(double)>& v,
                              double n, double lambda, int k);

/// Smooth cutoff used by cutoff_potential, exposed for tests.
double smooth_cutoff(double x);

/// Exact OU transition for the matrix: e^{-t/2} H + (1 - e^{-t})^{1/2} V
/// with V a fresh GUE matrix at H's convention.
WignerMatrix matrix_ou_step(const WignerMatrix& h, double t,
                            std::uint64_t seed);

}  // namespace wigner
