#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "wignerlab/statistics.hpp"

using namespace wigner;
using cd = std::complex<double>;

TEST_CASE("semicircle reference density and cdf") {
    const SemicircleRef ref{Convention::support2, 0.0};
    CHECK(ref.radius() == doctest::Approx(2.0));
    CHECK(ref.density(0.0) == doctest::Approx(1.0 / M_PI).epsilon(1e-14));
    CHECK(ref.density(2.0) == 0.0);
    CHECK(ref.density(-2.5) == 0.0);
    CHECK(ref.cdf(-2.0) == 0.0);
    CHECK(ref.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ref.cdf(2.0) == 1.0);
    // cdf is the integral of the density
    const double num = oracle::integrate([&](double x) { return ref.density(x); },
                                         -2.0, 0.7);
    CHECK(ref.cdf(0.7) == doctest::Approx(num).epsilon(1e-10));
    // total mass
    CHECK(oracle::integrate([&](double x) { return ref.density(x); }, -2.0,
                            2.0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("support1 reference scales with the deformation strength") {
    const SemicircleRef flat{Convention::support1, 0.0};
    CHECK(flat.radius() == doctest::Approx(1.0));
    CHECK(flat.density(0.0) == doctest::Approx(2.0 / M_PI).epsilon(1e-14));
    const double a = 0.3;
    const SemicircleRef def{Convention::support1, a};
    CHECK(def.radius() == doctest::Approx(std::sqrt(1.0 + 4.0 * a * a)));
}

TEST_CASE("stieltjes transform: closed values and branch") {
    const SemicircleRef s2{Convention::support2, 0.0};
    const SemicircleRef s1{Convention::support1, 0.0};
    // radius 2 at z = 2i: m = i (1 - sqrt(2))
    const cd m2 = s2.stieltjes(cd(0.0, 2.0));
    CHECK(std::abs(m2 - cd(0.0, 1.0 - std::sqrt(2.0))) < 1e-13);
    // radius 1 at z = 2i: m = 2i (2 - sqrt(5))
    const cd m1 = s1.stieltjes(cd(0.0, 2.0));
    CHECK(std::abs(m1 - cd(0.0, 2.0 * (2.0 - std::sqrt(5.0)))) < 1e-13);
    // upper half plane maps to the lower half plane (m -> 1/z branch)
    CHECK(s2.stieltjes(cd(0.5, 0.3)).imag() < 0.0);
    // 1/z asymptotics far away
    const cd far(0.0, 1e6);
    CHECK(std::abs(s2.stieltjes(far) * far - 1.0) < 1e-9);
}

TEST_CASE("stieltjes transform matches direct quadrature of the density") {
    const SemicircleRef ref{Convention::support2, 0.0};
    const cd z(0.3, 0.7);
    const double re = oracle::integrate(
        [&](double x) { return (ref.density(x) * (z - x)).real() /
                               std::norm(z - x); },
        -2.0, 2.0, 1e-13);
    const double im = oracle::integrate(
        [&](double x) { return -(ref.density(x) * (z - x)).imag() /
                               std::norm(z - x); },
        -2.0, 2.0, 1e-13);
    const cd m = ref.stieltjes(z);
    CHECK(m.real() == doctest::Approx(re).epsilon(1e-8));
    CHECK(m.imag() == doctest::Approx(im).epsilon(1e-8));
}

TEST_CASE("empirical stieltjes transform on a three point spectrum") {
    SpectralSample s;
    s.eigenvalues = {-1.0, 0.0, 1.0};
    const cd z(0.0, 1.0);
    const cd expect = (1.0 / (z + 1.0) + 1.0 / z + 1.0 / (z - 1.0)) / 3.0;
    CHECK(std::abs(stieltjes_empirical(s, z) - expect) < 1e-14);
    CHECK_THROWS_AS(stieltjes_empirical(s, cd(0.0, -1.0)), std::invalid_argument);
    SpectralSample empty;
    CHECK_THROWS_AS(stieltjes_empirical(empty, z), std::invalid_argument);
}

TEST_CASE("semicircle quantiles interleave the cdf") {
    const SemicircleRef ref{Convention::support2, 0.0};
    const auto s = semicircle_quantiles(101, ref);
    CHECK(std::abs(s.eigenvalues[50]) < 1e-10);  // median of an odd count
    for (int j = 0; j < 101; ++j) {
        CHECK(ref.cdf(s.eigenvalues[j]) ==
              doctest::Approx((j + 0.5) / 101.0).epsilon(1e-9));
        CHECK(s.eigenvalues[j] ==
              doctest::Approx(-s.eigenvalues[100 - j]).epsilon(1e-9));
        CHECK(std::abs(s.eigenvalues[j]) < 2.0);
    }
    CHECK_THROWS_AS(semicircle_quantiles(1, ref), std::invalid_argument);
}

TEST_CASE("good set accepts quantile spectra and rejects shifted ones") {
    const SemicircleRef ref{Convention::support2, 0.0};
    auto s = semicircle_quantiles(2000, ref);
    const auto rep = in_good_set(s, ref, 0.05, 0.05, 2.1, -1.0, 1.0);
    CHECK(rep.pass);
    CHECK(rep.eigenvalue_bound_ok);
    CHECK(rep.worst_deviation < 0.05);
    for (double& e : s.eigenvalues) e += 0.5;
    const auto bad = in_good_set(s, ref, 0.05, 0.05, 2.1, -1.0, 1.0);
    CHECK_FALSE(bad.pass);
    CHECK_THROWS_AS(in_good_set(s, ref, 0.0, 0.05, 2.1, -1.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("gap statistic counts hand-checkable gaps") {
    const SemicircleRef ref{Convention::support2, 0.0};
    SpectralSample s;
    s.eigenvalues = {-0.01, 0.0, 0.001, 0.5};
    // N=4, delta=0.8: window half-width 4^{-0.2}; rho(0)=1/pi.
    // s=0.01 -> gap cut = 0.01 pi / 4 ~ 0.00785: only the middle gap counts.
    const auto est = gap_statistic(s, ref, 0.0, 0.01, 0.8);
    CHECK(est.count == 1);
    CHECK_FALSE(est.low_count);
    const double tn = std::pow(4.0, -0.2);
    CHECK(est.value ==
          doctest::Approx(1.0 / (2.0 * 4.0 * tn * (1.0 / M_PI))).epsilon(1e-12));
    // s=2 -> cut pi/2: all three eligible gaps count
    CHECK(gap_statistic(s, ref, 0.0, 2.0, 0.8).count == 3);
    // window far from the spectrum
    SpectralSample far;
    far.eigenvalues = {1.8, 1.9};
    const auto lc = gap_statistic(far, ref, 0.0, 1.0, 0.2);
    CHECK(lc.low_count);
    CHECK(lc.count == 0);
    CHECK_THROWS_AS(gap_statistic(s, ref, 0.0, 1.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(gap_statistic(s, ref, 2.5, 1.0, 0.8), std::invalid_argument);
}

TEST_CASE("gap aggregation reports mean and standard error") {
    GapEstimate a, b, c;
    a.value = 1.0;
    a.count = 1;
    b.value = 2.0;
    b.count = 2;
    c.value = 3.0;
    c.count = 0;
    c.low_count = true;
    const auto agg = aggregate_gap_estimates({a, b, c});
    CHECK(agg.value == doctest::Approx(2.0));
    CHECK(agg.std_error == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(agg.count == 3);
    CHECK(agg.samples == 3);
    CHECK_FALSE(agg.low_count);  // only one part was empty
    CHECK_THROWS_AS(aggregate_gap_estimates({}), std::invalid_argument);
}

TEST_CASE("pair correlation bins a constructed two point sample") {
    const SemicircleRef ref{Convention::support2, 0.0};
    // two eigenvalues near u=0 with rescaled separation 1.3
    SpectralSample s;
    const double intensity = 2.0 * ref.density(0.0);
    const double d = 1.3 / intensity;
    s.eigenvalues = {-d / 2.0, d / 2.0};
    const auto est = pair_correlation_estimate({s}, ref, 0.0, 3.0, 6, 0.05 + d);
    // bins of width 0.5: tau=1.3 lands in bin 2
    CHECK(est.total_pairs == 1);
    CHECK(est.counts[2] == 1);
    CHECK(est.counts[0] == 0);
    CHECK_FALSE(est.empty);
    // separation beyond tau_max is recorded as out of range
    SpectralSample wide;
    wide.eigenvalues = {-3.0 / intensity, 3.5 / intensity};
    const auto far = pair_correlation_estimate({wide}, ref, 0.0, 3.0, 6, 20.0);
    CHECK(far.total_pairs == 0);
    CHECK(far.out_of_range == 1);
    CHECK(far.empty);
    CHECK_THROWS_AS(pair_correlation_estimate({}, ref, 0.0, 3.0, 6, 0.05),
                    std::invalid_argument);
    CHECK_THROWS_AS(pair_correlation_estimate({s}, ref, 0.0, 3.0, 0, 0.05),
                    std::invalid_argument);
}
