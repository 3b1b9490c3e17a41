#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "wignerlab/bh_kernel.hpp"
#include "wignerlab/fredholm.hpp"
#include "wignerlab/rng.hpp"
#include "wignerlab/statistics.hpp"

using namespace wigner;

namespace {

KernelConfig quantile_config(int n, double t, double u, double tau) {
    KernelConfig cfg;
    cfg.u = u;
    cfg.tau = tau;
    cfg.t = t;
    cfg.y = semicircle_quantiles(n, SemicircleRef{Convention::support1, 0.0});
    return cfg;
}

KernelConfig random_config(StreamRng& rng) {
    KernelConfig cfg;
    cfg.u = 1.2 * rng.next_double() - 0.6;
    cfg.tau = 3.0 * rng.next_double();
    cfg.t = 0.005 + 0.1 * rng.next_double();
    const int n = 20 + static_cast<int>(rng.next_double() * 60);
    cfg.y.eigenvalues.resize(n);
    for (double& y : cfg.y.eigenvalues) y = 2.0 * rng.next_double() - 1.0;
    return cfg;
}

}  // namespace

TEST_CASE("phase function: single eigenvalue closed form") {
    KernelConfig cfg;
    cfg.u = 0.0;
    cfg.t = 0.1;
    cfg.y.eigenvalues = {0.0};
    const cplx z(0.0, 2.0);
    const cplx expect = (z * z) / 0.2 + std::log(z);
    CHECK(std::abs(f_n(z, cfg) - expect) < 1e-13);
    CHECK(std::abs(f_n_prime(z, cfg) - (z / 0.1 + 1.0 / z)) < 1e-13);
    CHECK(std::abs(f_n_second(z, cfg) - (10.0 - 1.0 / (z * z))) < 1e-13);
    CHECK_THROWS_AS(f_n(cplx(0.0, 0.0), cfg), std::invalid_argument);
}

TEST_CASE("phase derivatives agree with finite differences") {
    StreamRng rng(5, 0);
    auto cfg = random_config(rng);
    cfg.tau = 0.0;
    const cplx z(0.3, 0.4);
    const double h = 1e-6;
    const cplx fd1 = (f_n(z + h, cfg) - f_n(z - h, cfg)) / (2.0 * h);
    CHECK(std::abs(f_n_prime(z, cfg) - fd1) < 1e-7 * std::abs(fd1));
    const cplx fd2 =
        (f_n_prime(z + h, cfg) - f_n_prime(z - h, cfg)) / (2.0 * h);
    CHECK(std::abs(f_n_second(z, cfg) - fd2) < 1e-6 * std::abs(fd2));
}

TEST_CASE("phase function obeys schwarz reflection") {
    StreamRng rng(6, 0);
    const auto cfg = random_config(rng);
    for (const cplx z : {cplx(0.2, 0.5), cplx(-0.7, 1.3), cplx(1.4, 0.01)}) {
        CHECK(std::abs(f_n(std::conj(z), cfg) - std::conj(f_n(z, cfg))) < 1e-12);
        CHECK(std::abs(f_n_prime(std::conj(z), cfg) -
                       std::conj(f_n_prime(z, cfg))) < 1e-12);
    }
}

TEST_CASE("pair factor: explicit and reformulated versions coincide") {
    StreamRng rng(7, 0);
    for (int it = 0; it < 100; ++it) {
        const auto cfg = random_config(rng);
        const double r = 0.4 * rng.next_double() - 0.2;
        const cplx z(rng.next_double() - 0.5, 0.2 + rng.next_double());
        const cplx w(rng.next_double() - 0.5, -0.2 - rng.next_double());
        const cplx a = g_n_explicit(z, w, r, cfg);
        const cplx b = g_n_identity(z, w, r, cfg);
        CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("pair factor at coincident saddle reduces to f''") {
    const auto cfg = quantile_config(200, 0.05, 0.2, 0.0);
    const auto sad = solve_saddle(cfg);
    const double r = sad.q.real();
    const cplx diag = g_n_identity(sad.q, sad.q, r, cfg);
    // f'(q) ~ 0 kills the first term, leaving f''(q)
    CHECK(std::abs(diag - sad.f_second) < 1e-9 * std::abs(sad.f_second));
    // mixed-saddle values vanish
    const cplx qbar = std::conj(sad.q);
    const double scale = std::abs(sad.f_second);
    CHECK(std::abs(g_n_identity(sad.q, qbar, r, cfg)) < 1e-10 * scale);
    CHECK(std::abs(g_n_identity(qbar, sad.q, r, cfg)) < 1e-10 * scale);
}

TEST_CASE("exponential factor h: zero at the gauge point, analytic tau limit") {
    auto cfg = quantile_config(50, 0.02, 0.0, 0.8);
    const double r = 0.1;
    CHECK(std::abs(h_n(cplx(r, 0.0), r, cfg)) == 0.0);
    // tau -> 0 limit is -(w - r)/(t rho)
    cfg.tau = 1e-9;
    const cplx w(0.3, 0.2);
    const cplx lim = -(w - r) / (cfg.t * cfg.rho());
    CHECK(std::abs(h_n(w, r, cfg) - lim) < 1e-7 * std::abs(lim));
    // and the exact formula holds away from tau = 0
    cfg.tau = 0.8;
    const cplx direct =
        (std::exp(-cfg.tau * (w - r) / (cfg.t * cfg.rho())) - 1.0) / cfg.tau;
    CHECK(std::abs(h_n(w, r, cfg) - direct) < 1e-13 * std::abs(direct));
}

TEST_CASE("saddle point: closed form seed and Newton refinement") {
    const auto cfg = quantile_config(2000, 0.01, 0.0, 0.0);
    const auto sad = solve_saddle(cfg);
    // continuum saddle at u=0: 2ti/sqrt(1+4t)
    const cplx seed(0.0, 0.02 / std::sqrt(1.04));
    CHECK(std::abs(sad.closed_form_q - seed) < 1e-14);
    CHECK(std::abs(seed.imag() - 0.019612) < 1e-6);
    CHECK(sad.residual < 1e-12);
    CHECK(std::abs(sad.q - seed) < 0.1 * cfg.t);
    for (double u : {-0.5, 0.5}) {
        auto c = quantile_config(2000, 0.01, u, 0.0);
        const auto s = solve_saddle(c);
        CHECK(s.residual < 1e-12);
        CHECK(s.q.imag() > 0.0);
        CHECK(std::abs(s.q - s.closed_form_q) < 0.1 * c.t);
    }
    KernelConfig bad;
    bad.t = 0.0;
    bad.y.eigenvalues = {0.0};
    CHECK_THROWS_AS(solve_saddle(bad), std::invalid_argument);
}

TEST_CASE("two-saddle approximation is wired to the solved saddle") {
    auto cfg = quantile_config(500, 0.02, 0.1, 1.3);
    const auto sad = solve_saddle(cfg);
    const double r = sad.q.real();
    const cplx h = (std::exp(-cfg.tau * (sad.q - r) / (cfg.t * cfg.rho())) -
                    1.0) / cfg.tau;
    CHECK(saddle_approx_kernel(cfg) == doctest::Approx(-h.imag() / M_PI).epsilon(1e-12));
}

TEST_CASE("two-saddle approximation approaches sinc in the bulk center") {
    auto cfg = quantile_config(2000, 0.01, 0.0, 0.5);
    CHECK(saddle_approx_kernel(cfg) ==
          doctest::Approx(sine_kernel(0.5)).epsilon(0.05));
    cfg.tau = 1e-12;
    CHECK(saddle_approx_kernel(cfg) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("contour kernel approaches the sine kernel") {
    for (double tau : {0.5, 1.0, 2.0}) {
        const auto cfg = quantile_config(250, std::pow(250.0, -0.5), 0.0, tau);
        const auto v = eval_kernel(cfg);
        CHECK(v.converged);
        CHECK(v.imag_rel < 1e-6);
        CHECK(std::abs(v.value - sine_kernel(tau)) < 0.1);
    }
}

TEST_CASE("contour kernel matches the saddle approximation at small t") {
    const auto cfg = quantile_config(500, std::pow(500.0, -0.5), 0.0, 1.0);
    const auto v = eval_kernel(cfg);
    CHECK(std::abs(v.value - saddle_approx_kernel(cfg)) < 0.05);
}

TEST_CASE("correlation determinant has determinantal structure") {
    auto cfg = quantile_config(250, std::pow(250.0, -0.5), 0.0, 0.0);
    // coincident points give a singular kernel matrix
    CHECK(std::abs(correlation_determinant({0.7, 0.7}, cfg)) < 1e-8);
    const double two = correlation_determinant({0.0, 0.6}, cfg);
    CHECK(two == doctest::Approx(1.0 - std::pow(sine_kernel(0.6), 2)).epsilon(0.15));
    CHECK_THROWS_AS(correlation_determinant({}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(correlation_determinant({1, 2, 3, 4, 5}, cfg),
                    std::invalid_argument);
}

TEST_CASE("transition density: gaussian base case and symmetry") {
    const double s = 0.04;
    const double x = 0.3, y = 0.1;
    const double expect = std::exp(-(x - y) * (x - y) / (2.0 * s)) /
                          std::sqrt(2.0 * M_PI * s);
    CHECK(qs_density_small_n({x}, {y}, s) == doctest::Approx(expect).epsilon(1e-13));
    // simultaneous permutation invariance in each argument
    const std::vector<double> xs{-0.4, 0.5}, ys{-0.6, 0.4};
    CHECK(qs_density_small_n(xs, ys, s) ==
          doctest::Approx(qs_density_small_n({0.5, -0.4}, ys, s)).epsilon(1e-12));
    CHECK(qs_density_small_n(xs, ys, s) ==
          doctest::Approx(qs_density_small_n(xs, {0.4, -0.6}, s)).epsilon(1e-12));
    CHECK_THROWS_AS(qs_density_small_n({0.0}, {0.0, 1.0}, s),
                    std::invalid_argument);
    CHECK_THROWS_AS(qs_density_small_n(xs, {0.2, 0.2}, s), std::invalid_argument);
    CHECK_THROWS_AS(qs_density_small_n(xs, ys, 0.0), std::invalid_argument);
}

TEST_CASE("transition density integrates to one over ordered pairs") {
    const double s = 0.01;
    const std::vector<double> y{-0.5, 0.5};
    const double mass = oracle::integrate(
        [&](double x1) {
            return oracle::integrate(
                [&](double x2) { return qs_density_small_n({x1, x2}, y, s); },
                0.0, 1.5, 1e-10);
        },
        -1.5, 0.0, 1e-9);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-5));
}
