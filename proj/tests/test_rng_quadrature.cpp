#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "wignerlab/quadrature.hpp"
#include "wignerlab/rng.hpp"

using namespace wigner;

TEST_CASE("stream rng is a pure function of (key, stream, counter)") {
    StreamRng a(42, 7), b(42, 7);
    for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct streams and keys decorrelate") {
    StreamRng a(42, 7), b(42, 8), c(43, 7);
    int same_ab = 0, same_ac = 0;
    for (int i = 0; i < 64; ++i) {
        const auto x = a.next_u64();
        same_ab += x == b.next_u64();
        same_ac += x == c.next_u64();
    }
    CHECK(same_ab == 0);
    CHECK(same_ac == 0);
}

TEST_CASE("uniform draws live in [0,1)") {
    StreamRng r(1, 0);
    for (int i = 0; i < 10000; ++i) {
        const double u = r.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("gaussian draws have the right first moments") {
    StreamRng r(2024, 3);
    const int n = 200000;
    double s = 0.0, sq = 0.0, s3 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = r.next_gaussian();
        s += g;
        sq += g * g;
        s3 += g * g * g;
    }
    CHECK(std::abs(s / n) < 0.01);
    CHECK(std::abs(sq / n - 1.0) < 0.02);
    CHECK(std::abs(s3 / n) < 0.03);
}

TEST_CASE("derived seeds are distinct and order independent") {
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) seen.insert(derive_seed(99, i));
    CHECK(seen.size() == 1000);
    CHECK(derive_seed(99, 5) == derive_seed(99, 5));
    CHECK(entry_stream(3, 4) != entry_stream(4, 3));
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    const auto gl = quad::gauss_legendre(8, 0.0, 1.0);
    double mass = 0.0, x9 = 0.0, x15 = 0.0;
    for (size_t i = 0; i < gl.x.size(); ++i) {
        mass += gl.w[i];
        x9 += gl.w[i] * std::pow(gl.x[i], 9);
        x15 += gl.w[i] * std::pow(gl.x[i], 15);
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(x9 == doctest::Approx(0.1).epsilon(1e-13));
    CHECK(x15 == doctest::Approx(1.0 / 16.0).epsilon(1e-13));
}

TEST_CASE("gauss-hermite matches known moments of e^{-x^2}") {
    const auto gh = quad::gauss_hermite(20);
    double m0 = 0.0, m2 = 0.0, m4 = 0.0;
    for (size_t i = 0; i < gh.x.size(); ++i) {
        m0 += gh.w[i];
        m2 += gh.w[i] * gh.x[i] * gh.x[i];
        m4 += gh.w[i] * std::pow(gh.x[i], 4);
    }
    const double sp = std::sqrt(M_PI);
    CHECK(m0 == doctest::Approx(sp).epsilon(1e-14));
    CHECK(m2 == doctest::Approx(sp / 2.0).epsilon(1e-13));
    CHECK(m4 == doctest::Approx(3.0 * sp / 4.0).epsilon(1e-13));
}

TEST_CASE("adaptive quadrature agrees with the independent oracle") {
    CHECK(quad::integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
          doctest::Approx(2.0).epsilon(1e-12));
    const auto f = [](double x) { return std::exp(-0.1 * x * x * x * x); };
    const double lib = quad::integrate(f, -5.0, 5.0);
    const double ora = oracle::integrate(f, -5.0, 5.0);
    CHECK(lib == doctest::Approx(ora).epsilon(1e-10));
}

TEST_CASE("whole-line quadrature reproduces the gaussian integral") {
    const double v = quad::integrate_real_line(
        [](double x) { return std::exp(-x * x); });
    CHECK(v == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
    const auto g = [](double x) { return std::exp(-x * x) * std::cos(x); };
    CHECK(quad::integrate_real_line(g) ==
          doctest::Approx(oracle::integrate_line(g)).epsilon(1e-10));
}
