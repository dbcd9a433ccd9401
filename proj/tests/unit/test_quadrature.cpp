#include <doctest.h>

#include "oracle.hpp"
#include "wgm/quadrature.hpp"

#include <cmath>
#include <numbers>

using namespace wgm;

TEST_SUITE("quadrature")
{
    TEST_CASE("Gauss-Legendre nodes and weights match the extended-precision rule")
    {
        for (int n : {1, 2, 5, 20, 64, 257}) {
            const QuadratureRule r = gauss_legendre(n);
            const auto ref = oracle::gauss_legendre(n);
            double sum = 0.0;
            for (int i = 0; i < n; ++i) {
                CHECK(r.nodes[i] == doctest::Approx(ref.first[i]).epsilon(1e-14).scale(1.0));
                CHECK(r.weights[i] == doctest::Approx(ref.second[i]).epsilon(1e-13));
                sum += r.weights[i];
            }
            CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
        }
    }

    TEST_CASE("n-point rule is exact for degree 2n - 1")
    {
        const int n = 7;
        const QuadratureRule r = gauss_legendre(n, 0.0, 2.0);
        for (int deg = 0; deg <= 2 * n - 1; ++deg) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], deg);
            CHECK(s == doctest::Approx(std::pow(2.0, deg + 1) / (deg + 1)).epsilon(1e-13));
        }
    }

    TEST_CASE("adaptive integration")
    {
        const QuadratureResult a = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
        CHECK(a.converged);
        CHECK(a.value == doctest::Approx(2.0).epsilon(1e-12));

        const QuadratureResult b = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0);
        CHECK(b.value == doctest::Approx(2.0 / 3.0).epsilon(1e-10));

        const QuadratureResult c = integrate_adaptive([](double x) { return std::exp(-400.0 * (x - 0.3) * (x - 0.3)); },
                                                      0.0, 1.0);
        CHECK(c.value == doctest::Approx(std::sqrt(std::numbers::pi) / 20.0).epsilon(1e-10));
    }

    TEST_CASE("exhausted panel budget reports the achieved estimate")
    {
        AdaptiveOptions opt;
        opt.initial_panels = 1;
        opt.max_panels = 2;
        opt.rel_tol = 1e-15;
        try {
            integrate_adaptive([](double x) { return std::sin(50.0 * x) * std::sin(50.0 * x); }, 0.0, 3.0, opt);
            FAIL("expected QuadratureError");
        } catch (const QuadratureError& e) {
            CHECK_FALSE(e.result.converged);
            CHECK(e.result.panels <= 2);
        }
    }
}

TEST_SUITE("oracle")
{
    TEST_CASE("series evaluator against the half-order closed form")
    {
        for (double x : {0.2, 1.0, 3.0, 8.0}) {
            const double ref = std::sqrt(2.0 / (std::numbers::pi * x)) * std::sin(x);
            CHECK(static_cast<double>(oracle::series_bessel_j(0.5, x)) == doctest::Approx(ref).epsilon(1e-14));
        }
    }

    TEST_CASE("integral evaluator agrees with the series where both are reliable")
    {
        for (double nu : {0.0, 1.5, 4.0, 12.5})
            for (double x : {0.7, 3.3, 9.0}) {
                const double s = static_cast<double>(oracle::series_bessel_j(nu, x));
                CHECK(std::fabs(oracle::schlafli_bessel_j(nu, x) - s) <= 1e-14 + 1e-12 * std::fabs(s));
            }
        const double d = oracle::schlafli_bessel_j_prime(3.5, 4.2);
        const double fd = oracle::central_difference([](double x) { return oracle::schlafli_bessel_j(3.5, x); }, 4.2, 1e-5);
        CHECK(d == doctest::Approx(fd).epsilon(1e-8));
    }

    TEST_CASE("integrators")
    {
        auto f = [](double x) { return std::exp(x) * std::cos(3.0 * x); };
        const double exact = (std::exp(2.0) * (std::cos(6.0) + 3.0 * std::sin(6.0)) - 1.0) / 10.0;
        CHECK(oracle::adaptive_gauss(f, 0.0, 2.0, 1e-13) == doctest::Approx(exact).epsilon(1e-12));
        CHECK(oracle::adaptive_simpson(f, 0.0, 2.0, 1e-12) == doctest::Approx(exact).epsilon(1e-10));
    }

    TEST_CASE("recurrence log-gamma")
    {
        for (double x : {0.5, 3.0, 17.5, 90.0})
            CHECK(static_cast<double>(oracle::recurrence_log_gamma(x)) == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
    }
}
