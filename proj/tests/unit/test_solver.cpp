#include <doctest.h>

#include "suites.hpp"
#include "wgm/ls_solver.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace wgm;

namespace {

LsConfig config(int n, double delta)
{
    LsConfig c;
    c.n = n;
    c.delta = delta;
    return c;
}

}  // namespace

TEST_SUITE("ls_solver")
{
    TEST_CASE("eta and scale")
    {
        CHECK(eta_constant(PotentialSpec::quartic()) == doctest::Approx(1.0 / (32.0 * std::numbers::pi)));
        CHECK(eta_constant(PotentialSpec({{1.0, 4.0}}, 1.0)) == doctest::Approx(1.0 / (8.0 * std::numbers::pi)));
        CHECK(eta_constant(PotentialSpec({{1.0, 3.0}}, 1.0)) < 1.0);
        const double eta = 0.01;
        CHECK(scale_for_delta(eta, 1e-3, 4.0) == doctest::Approx(std::sqrt(20.0)));
        CHECK(scale_for_delta(eta, 5e-4, 4.0) / scale_for_delta(eta, 1e-3, 4.0) == doctest::Approx(std::sqrt(2.0)));
    }

    TEST_CASE("configuration checks")
    {
        CHECK_THROWS_AS(LsProblem(config(0, 1e-3)), ValidationError);
        CHECK_THROWS_AS(LsProblem(config(8, -1e-3)), ValidationError);
        CHECK_THROWS_AS(LsProblem(config(8, 50.0)), ValidationError);
    }

    TEST_CASE("linear operator pieces")
    {
        const LsProblem p(config(8, 1e-3));
        const BasisTable& b = *p.basis();
        const std::size_t i = b.index(3, Parity::cosine, 2);
        Field e = Field::zero(p.basis());
        e.coeffs[i] = 1.0;
        const double lam_e = b.entry(i).lam;
        CHECK(p.apply_A_inv_on_perp(e).coeffs[i] == doctest::Approx(1.0 / (1.0 - p.lambda() / lam_e)));
        CHECK(norm_l2(p.apply_A_inv_on_perp(Field::zero(p.basis()))) == 0.0);

        Field v = Field::zero(p.basis());
        for (std::size_t k = 0; k < v.coeffs.size(); ++k)
            if (!p.eigenspace().contains(k)) v.coeffs[k] = std::sin(1.0 + k);
        const Field back = p.apply_A(p.apply_A_inv_on_perp(v));
        CHECK(norm_l2(back - v) <= 1e-12 * norm_l2(v));
        CHECK(p.coercivity() > 0.0);
    }

    TEST_CASE("fixed point")
    {
        const LsProblem p(config(8, 1e-3));
        const Field zero = Field::zero(p.basis());
        CHECK(norm_l2(p.contraction_step(zero, zero)) == 0.0);
        const PhiSolution s0 = p.solve_phi(zero);
        CHECK(s0.increments.size() <= 2);
        CHECK(norm_l2(s0.phi) == 0.0);

        const Field w = p.k_field(0.2, 0.05);
        const PhiSolution s = p.solve_phi(w);
        CHECK(norm_h1(p.contraction_step(w, s.phi) - s.phi) <= 1e-12);
        for (double r : s.tail_ratios()) CHECK(r <= 0.95);
        const SplitResiduals res = p.split_residuals(w, s.phi);
        CHECK(res.complement <= 1e-12);
    }

    TEST_CASE("complement size scales as M^(2 - p1)")
    {
        // M grows by 2 when delta shrinks by 4 for the quartic potential.
        const LsProblem a(config(8, 1e-3)), b(config(8, 2.5e-4));
        REQUIRE(b.M() / a.M() == doctest::Approx(2.0));
        const SobolevExponent q = sobolev_q(2, PotentialSpec::quartic());
        const double pa = norm_V(a.solve_phi(a.k_field(0.3, 0.0)).phi, q);
        const double pb = norm_V(b.solve_phi(b.k_field(0.3, 0.0)).phi, q);
        CHECK(pb / pa == doctest::Approx(0.25).epsilon(0.25));
    }

    TEST_CASE("reduced functionals")
    {
        const LsProblem p(config(12, 1e-3));
        const Field zero = Field::zero(p.basis());
        CHECK(p.g_tilde(zero) == 0.0);
        CHECK(p.g_tilde(p.k_field(1e-3, 0.0)) < 0.0);
        CHECK(p.g_tilde(p.k_field(0.5, 0.0)) > 0.0);
        CHECK(std::fabs(p.j_tilde(p.k_field(1e-6, 0.0))) < 1e-12);
        const auto g0 = p.reduced_gradient(zero);
        CHECK(g0[0] == 0.0);
        CHECK(g0[1] == 0.0);
        const auto g = p.reduced_gradient(p.k_field(0.1, 0.0));
        CHECK(std::fabs(g[1]) <= 1e-12 * std::fabs(g[0]));
    }

    TEST_CASE("reduced gradient against finite differences")
    {
        const oracle::SuiteReport rep = oracle::gradient_suite(8, 1e-3, 4, 3);
        CHECK(rep.all_passed());
    }

    TEST_CASE("minimiser and assembled solution")
    {
        const LsProblem p(config(12, 1e-3));
        const MinimizeResult m = p.minimize_reduced();
        CHECK(m.t_min > 1e-6);
        CHECK(m.t_min < 0.5);
        CHECK(m.j_min < 0.0);
        CHECK(m.gradient_norm <= 1e-9 * std::pow(p.M(), -2.0));

        const SolutionPair s = assemble_solution(config(12, 1e-3));
        CHECK(s.diagnostics.residual_l2 <= 1e-8);
        CHECK(s.diagnostics.ortho_l2 == 0.0);
        CHECK(s.diagnostics.ortho_h1 == 0.0);
        CHECK(s.lam == doctest::Approx(s.Lambda + s.delta));

        std::ostringstream a, b;
        write_solution(a, s);
        write_solution(b, assemble_solution(config(12, 1e-3)));
        CHECK(a.str() == b.str());
    }
}
