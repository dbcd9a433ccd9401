#include <doctest.h>

#include "wgm/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

using namespace wgm;

namespace {

int count_lines(const std::string& s)
{
    return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

int count_of(const std::string& s, const std::string& needle)
{
    int n = 0;
    for (std::size_t pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST_SUITE("report")
{
    TEST_CASE("energy of simple fields")
    {
        const PotentialSpec q = PotentialSpec::quartic();
        const BasisPtr b = build_basis(12, 6);
        CHECK(energy(Field::zero(b), q, 1.0) == 0.0);

        const std::size_t i = b->index(7, Parity::cosine, 1);
        Field psi = Field::zero(b);
        psi.coeffs[i] = 1.0;
        const double lam = b->entry(i).lam;
        CHECK(energy(psi, q, 1.0) >= 0.5 * lam);
        CHECK(dirichlet_energy(psi, 1.0) == doctest::Approx(0.5 * lam).epsilon(1e-9));

        const BallMode m = mode(2, 7);
        for (double tau : {0.3, 0.6, 0.9}) {
            const double expected = 0.5 * grad_energy(m, tau) / radial_mass(m, 1.0);
            CHECK(dirichlet_energy(psi, tau) == doctest::Approx(expected).epsilon(1e-6));
        }
        CHECK_THROWS_AS(energy(psi, q, 0.0), std::invalid_argument);
    }

    TEST_CASE("CSV emission")
    {
        std::ostringstream empty;
        emit_csv({}, empty);
        CHECK(empty.str() == "n,lambda_lin,lambda,tau,E_tau,E_1,ratio,lin_ratio,residual\n");

        EnergyRow r;
        r.n = 3;
        r.tau = 0.5;
        r.ratio = 0.25;
        std::ostringstream one;
        emit_csv({r}, one);
        CHECK(count_lines(one.str()) == 2);

        r.error = "failed";
        std::ostringstream failed;
        emit_csv({r}, failed);
        CHECK(failed.str().find("nan") != std::string::npos);
    }

    TEST_CASE("linear CSV")
    {
        const auto reports = verify_order_range(2, 30.0, 32.0, {2.0, 4.0}, 1);
        std::ostringstream out;
        emit_linear_csv(reports, out);
        CHECK(count_lines(out.str()) == 1 + 3 * 3);
        std::ostringstream header;
        emit_linear_csv({}, header);
        CHECK(count_lines(header.str()) == 1);
    }

    TEST_CASE("small sweep")
    {
        SweepOptions opt;
        opt.k_max = 12;
        const auto rows = ratio_sweep({6, 4}, PotentialSpec::quartic(), {0.5, 1.0}, opt);
        REQUIRE(rows.size() == 4);
        CHECK(rows[0].n == 4);
        CHECK(rows[2].n == 6);
        for (const EnergyRow& r : rows) {
            REQUIRE(r.ok());
            CHECK(r.e_one >= r.e_tau);
            const BallMode m = mode(2, r.n);
            CHECK(r.lin_ratio == doctest::Approx(grad_energy(m, r.tau) / grad_energy(m, 1.0)).epsilon(1e-14));
            if (r.tau == 1.0) CHECK(r.ratio == 1.0);
        }

        opt.threads = 2;
        std::ostringstream a, b;
        emit_csv(rows, a);
        emit_csv(ratio_sweep({6, 4}, PotentialSpec::quartic(), {0.5, 1.0}, opt), b);
        CHECK(a.str() == b.str());

        std::ostringstream svg;
        emit_svg(rows, svg);
        const std::string s = svg.str();
        CHECK(s.find("<svg") != std::string::npos);
        CHECK(s.rfind("</svg>") != std::string::npos);
        CHECK(count_of(s, "<polyline") >= 3);
        CHECK(count_of(s, "<svg") == 1);
    }
}
