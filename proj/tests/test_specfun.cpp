#include <doctest.h>

#include <bfringe/specfun.hpp>

#include <cmath>

using namespace bfringe;

TEST_CASE("log_gamma matches std::lgamma on the real axis") {
    for (double x : {0.3, 0.5, 1.0, 2.5, 7.0, 60.0, 120.5, 600.0}) {
        const Complex lg = log_gamma(Complex(x, 0.0));
        CHECK(lg.imag() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(lg.real() == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
    }
}

TEST_CASE("log_gamma at known complex points") {
    // |Gamma(1 + i)| = sqrt(pi / sinh(pi))
    const Complex lg = log_gamma(Complex(1.0, 1.0));
    const double expected = 0.5 * std::log(3.14159265358979324 / std::sinh(3.14159265358979324));
    CHECK(std::exp(lg.real()) == doctest::Approx(std::exp(expected)).epsilon(1e-12));
    // recurrence Gamma(z + 1) = z Gamma(z)
    const Complex z(2.3, -4.1);
    const Complex lhs = log_gamma(z + 1.0);
    const Complex rhs = std::log(z) + log_gamma(z);
    CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("gamma_p against closed forms") {
    // P(1, x) = 1 - exp(-x)
    for (double x : {0.1, 1.0, 3.5, 10.0}) {
        CHECK(gamma_p(1.0, x) == doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-12));
    }
    // P(2, x) = 1 - (1 + x) exp(-x)
    CHECK(gamma_p(2.0, 3.0) == doctest::Approx(1.0 - 4.0 * std::exp(-3.0)).epsilon(1e-12));
    CHECK(gamma_p(2.0, 0.0) == 0.0);
    // median-ish sanity: P(a, a) ~ 0.5 for large a
    CHECK(gamma_p(60.0, 60.0) == doctest::Approx(0.5).epsilon(0.05));
    CHECK_THROWS_AS(gamma_p(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("Kolmogorov critical values") {
    // classical asymptotic constants
    CHECK(ks_critical(0.01, 1) == doctest::Approx(1.6276).epsilon(1e-3));
    CHECK(ks_critical(0.05, 1) == doctest::Approx(1.3581).epsilon(1e-3));
    CHECK(ks_critical(0.01, 2000) == doctest::Approx(1.6276 / std::sqrt(2000.0)).epsilon(1e-3));
    CHECK(kolmogorov_q(0.5) > kolmogorov_q(1.0));
}

TEST_CASE("ks_distance of a perfect grid is small") {
    std::vector<double> samples;
    for (int i = 0; i < 1000; ++i) {
        samples.push_back((i + 0.5) / 1000.0);
    }
    auto cdf = [](double x, double) { return x; };
    CHECK(ks_distance(samples, cdf, 0.0) < 1e-3 + 1e-12);
}
