#include <doctest.h>

#include "oracle.hpp"
#include "wgm/potential.hpp"
#include "wgm/run_config.hpp"

#include <cmath>

using namespace wgm;

namespace {

PotentialSpec mixed()
{
    return PotentialSpec({{1.0, 3.0}, {-0.5, 4.0}, {0.2, 5.0}}, 0.5);
}

}  // namespace

TEST_SUITE("potential")
{
    TEST_CASE("quartic values")
    {
        const PotentialSpec q = PotentialSpec::quartic();
        CHECK(F_eval(q, 0.0) == 0.0);
        CHECK(F_eval(q, 2.0) == doctest::Approx(4.0));
        CHECK(F_eval(q, -2.0) == doctest::Approx(4.0));
        CHECK(f_eval(q, 2.0) == doctest::Approx(8.0));
        CHECK(f_eval(q, -2.0) == doctest::Approx(-8.0));
        CHECK(f_eval(q, 0.0) == 0.0);
        CHECK(f_prime_eval(q, 2.0) == doctest::Approx(12.0));
    }

    TEST_CASE("mixed potential against a reordered summation")
    {
        const PotentialSpec m = mixed();
        const double s = 1.3;
        const double reordered = 0.2 * std::pow(s, 5) + (-0.5) * std::pow(s, 4) + std::pow(s, 3);
        CHECK(F_eval(m, s) == doctest::Approx(reordered).epsilon(1e-15));
        CHECK(F_eval(m, -s) == doctest::Approx(reordered).epsilon(1e-15));
    }

    TEST_CASE("derivatives against central differences")
    {
        for (const PotentialSpec& spec : {PotentialSpec::quartic(), mixed()}) {
            for (double s : {0.7, -0.7, 2.1}) {
                const double h = 1e-6;
                const double df = oracle::central_difference([&](double x) { return F_eval(spec, x); }, s, h);
                CHECK(f_eval(spec, s) == doctest::Approx(df).epsilon(1e-6));
                const double ddf = oracle::central_difference([&](double x) { return f_eval(spec, x); }, s, h);
                CHECK(f_prime_eval(spec, s) == doctest::Approx(ddf).epsilon(1e-6));
            }
        }
    }

    TEST_CASE("growth bounds")
    {
        const PotentialSpec q = PotentialSpec::quartic();
        CHECK(growth_check(q, 1.0));
        CHECK(growth_check(q, 1e3));
        CHECK(growth_check(q, 1e-3));
        CHECK(growth_check(mixed(), 0.4));
        CHECK(growth_constant(q) > 0.0);
    }

    TEST_CASE("validation")
    {
        CHECK_THROWS_AS(PotentialSpec({{1.0, 2.0}}, 1.0), ValidationError);
        CHECK_THROWS_AS(PotentialSpec({{1.0, 4.0}, {1.0, 3.0}}, 0.5), ValidationError);
        CHECK_THROWS_AS(PotentialSpec({{1.0, 3.0}, {-2.0, 4.0}}, 0.5), ValidationError);
        CHECK_THROWS_AS(PotentialSpec({{0.25, 4.0}}, 0.5), ValidationError);
        CHECK_THROWS_AS(PotentialSpec({}, 0.5), ValidationError);
        CHECK_NOTHROW(mixed());
    }

    TEST_CASE("Sobolev exponent")
    {
        const SobolevExponent a = sobolev_q(3, PotentialSpec({{1.0, 3.0}, {1.0, 8.0}}, 1.0));
        REQUIRE(a.q.has_value());
        CHECK(*a.q == 9.0);
        CHECK(*a.q > 6.0);
        CHECK(*a.q > 8.0);
        CHECK_FALSE(sobolev_q(2, PotentialSpec({{1.0, 3.0}, {1.0, 8.0}}, 1.0)).q.has_value());
        CHECK_FALSE(sobolev_q(3, PotentialSpec::quartic()).q.has_value());
    }
}

TEST_SUITE("config")
{
    TEST_CASE("defaults from an empty document")
    {
        const RunConfig c = parse_run_config("{}");
        CHECK(c.solve.n == 12);
        CHECK(c.sweep.n_list == std::vector<int>{8, 12, 16, 20});
        CHECK(c.linear.p_list.size() == 3);
        CHECK(c.potential.p1() == 4.0);
    }

    TEST_CASE("full document")
    {
        const RunConfig c = parse_run_config(R"({
            "potential": {"terms": [{"b": 1, "p": 3}, {"b": 0.5, "p": 6}], "b0": 1},
            "solve": {"n": 9, "delta": 2e-4, "m_max": 30, "k_max": 16, "tol": 1e-11, "max_iter": 80},
            "sweep": {"n_list": [4, 6], "tau_list": [0.25], "delta": 5e-4},
            "linear": {"d": 3, "nu_min": 10, "nu_max": 20, "p_list": [2, 8]}
        })");
        CHECK(c.potential.terms().size() == 2);
        CHECK(c.solve.n == 9);
        CHECK(c.solve.delta == 2e-4);
        CHECK(c.solve.m_max == 30);
        CHECK(c.sweep.tau_list == std::vector<double>{0.25});
        CHECK(c.linear.d == 3);
        CHECK(c.linear.p_list == std::vector<double>{2.0, 8.0});
    }

    TEST_CASE("rejections")
    {
        CHECK_THROWS_AS(parse_run_config(R"({"solve": {"n": 3, "colour": 1}})"), ValidationError);
        CHECK_THROWS_AS(parse_run_config(R"({"extra": {}})"), ValidationError);
        CHECK_THROWS_AS(parse_run_config(R"({"solve": {"n": "twelve"}})"), ValidationError);
        CHECK_THROWS_AS(parse_run_config(R"({"solve": {"delta": -1}})"), ValidationError);
        CHECK_THROWS_AS(parse_run_config(R"({"linear": {"d": 4}})"), ValidationError);
        CHECK_THROWS_AS(parse_run_config(R"({"sweep": {"tau_list": [1.5]}})"), ValidationError);
        CHECK_THROWS_AS(parse_run_config(R"({"potential": {"terms": [{"b": 1, "p": 2}], "b0": 1}})"), ValidationError);
        CHECK_THROWS_AS(parse_run_config("not json"), ValidationError);
        CHECK_THROWS_AS(load_run_config("/nonexistent/run.json"), ValidationError);
    }
}
