#include <doctest.h>

#include "oracle.hpp"
#include "wgm/spectral_field.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace wgm;

namespace {

Field random_field(const BasisPtr& b, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Field f = Field::zero(b);
    for (double& c : f.coeffs) c = normal(rng);
    return f;
}

double max_abs_diff(const Field& a, const Field& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) m = std::max(m, std::fabs(a.coeffs[i] - b.coeffs[i]));
    return m;
}

}  // namespace

TEST_SUITE("spectral_field")
{
    TEST_CASE("basis layout")
    {
        CHECK(build_basis(1, 1)->size() == 3);
        CHECK(build_basis(2, 2)->size() == 10);
        const BasisPtr b = build_basis(4, 3);
        for (std::size_t i = 0; i < b->size(); ++i) {
            const BasisEntry& e = b->entry(i);
            CHECK(b->index(e.m, e.parity, e.k) == i);
            CHECK(e.lam == doctest::Approx(b->zero(e.m, e.k) * b->zero(e.m, e.k)));
        }
        CHECK_THROWS_AS(b->index(0, Parity::sine, 1), std::out_of_range);
        CHECK_THROWS_AS(b->index(5, Parity::cosine, 1), std::out_of_range);
    }

    TEST_CASE("Gram matrix is the identity")
    {
        const BasisPtr b = build_basis(6, 6);
        double worst = 0.0;
        for (std::size_t i = 0; i < b->size(); ++i) {
            Field e = Field::zero(b);
            e.coeffs[i] = 1.0;
            const GridValues gi = synth(e);
            for (std::size_t j = i; j < b->size(); ++j) {
                Field f = Field::zero(b);
                f.coeffs[j] = 1.0;
                const GridValues gj = synth(f);
                GridValues prod(gi.size());
                for (std::size_t k = 0; k < gi.size(); ++k) prod[k] = gi[k] * gj[k];
                worst = std::max(worst, std::fabs(grid_integral(*b, prod) - (i == j ? 1.0 : 0.0)));
            }
        }
        CHECK(worst <= 5e-7);
    }

    TEST_CASE("synthesis and analysis round trip")
    {
        const BasisPtr b = build_basis(12, 10);
        for (std::size_t j : {std::size_t{0}, std::size_t{7}, b->size() - 1}) {
            Field e = Field::zero(b);
            e.coeffs[j] = 1.0;
            CHECK(max_abs_diff(analyze(synth(e), b), e) <= 1e-10);
        }
        const Field z = Field::zero(b);
        CHECK(max_abs_diff(analyze(synth(z), b), z) == 0.0);
        const Field r = random_field(b, 42);
        CHECK(max_abs_diff(analyze(synth(r), b), r) <= 1e-10);
    }

    TEST_CASE("inverse Laplacian")
    {
        const BasisPtr b = build_basis(5, 4);
        const std::size_t i = b->index(3, Parity::sine, 2);
        Field e = Field::zero(b);
        e.coeffs[i] = 1.0;
        const Field g = apply_inv_laplacian(e);
        CHECK(g.coeffs[i] == doctest::Approx(1.0 / b->entry(i).lam));
        const Field r = random_field(b, 3);
        const Field back = apply_inv_laplacian(r);
        for (std::size_t k = 0; k < b->size(); ++k) CHECK(back.coeffs[k] * b->entry(k).lam == doctest::Approx(r.coeffs[k]));
        CHECK(max_abs_diff(apply_inv_laplacian(Field::zero(b)), Field::zero(b)) == 0.0);
    }

    TEST_CASE("eigenspace projections")
    {
        const BasisPtr b = build_basis(9, 5);
        const EigenspaceHandle h = eigenspace(*b, 4);
        CHECK(h.lam == doctest::Approx(b->zero(4, 1) * b->zero(4, 1)));
        Field k = Field::zero(b);
        k.coeffs[h.cos_index] = 0.3;
        k.coeffs[h.sin_index] = -0.2;
        CHECK(max_abs_diff(project_K(k, h), k) == 0.0);
        const Field v = random_field(b, 11), w = random_field(b, 12);
        CHECK(max_abs_diff(project_K(v, h) + project_Kperp(v, h), v) <= 1e-15);
        CHECK(inner_h1(project_K(v, h), project_Kperp(w, h)) == 0.0);
        CHECK(inner_l2(project_K(v, h), project_Kperp(w, h)) == 0.0);
    }

    TEST_CASE("norms")
    {
        const BasisPtr b = build_basis(6, 4);
        const std::size_t i = b->index(2, Parity::cosine, 3);
        Field e = Field::zero(b);
        e.coeffs[i] = 1.0;
        const SobolevExponent none{2, std::nullopt};
        CHECK(norm_V(e, none) == doctest::Approx(std::sqrt(b->entry(i).lam)));
        CHECK(norm_l2(e) == doctest::Approx(1.0));
        CHECK(norm_V(Field::zero(b), none) == 0.0);
        const Field r = random_field(b, 5);
        CHECK(norm_V(3.0 * r, none) == doctest::Approx(3.0 * norm_V(r, none)));
        const SobolevExponent q{3, 9.0};
        CHECK(norm_V(3.0 * r, q) == doctest::Approx(3.0 * norm_V(r, q)));
        CHECK(norm_V(r, q) > norm_V(r, none));
    }

    TEST_CASE("point evaluation")
    {
        const BasisPtr b = build_basis(7, 5);
        const Field r = random_field(b, 21);
        const GridValues g = synth(r);
        const int i = 9, l = 13;
        CHECK(eval_at(r, b->radii()[i], b->theta(l)) ==
              doctest::Approx(g[static_cast<std::size_t>(i) * b->n_theta() + l]).epsilon(1e-12));
        CHECK(std::fabs(eval_at(r, 1.0, 0.8)) <= 1e-8 * norm_h1(r));

        // Dense summation with reference Bessel values and explicit normalisation.
        const double rr = 0.63, th = 2.1;
        double sum = 0.0;
        for (const BasisEntry& e : b->entries()) {
            const double j = b->zero(e.m, e.k);
            const double jm1 = oracle::reference_bessel_j(e.m + 1.0, j);
            const double c = 1.0 / std::sqrt(0.5 * jm1 * jm1 * (e.m == 0 ? 2.0 * std::numbers::pi : std::numbers::pi));
            const double ang = e.parity == Parity::cosine ? std::cos(e.m * th) : std::sin(e.m * th);
            sum += r.coeffs[b->index(e.m, e.parity, e.k)] * c * oracle::reference_bessel_j(e.m, j * rr) * ang;
        }
        CHECK(eval_at(r, rr, th) == doctest::Approx(sum).epsilon(1e-11));
    }

    TEST_CASE("gradient samples")
    {
        const BasisPtr b = build_basis(5, 4);
        const Field r = random_field(b, 8);
        const double rr = 0.41;
        const GradientSample s = sample_with_gradient(r, {rr}, 16);
        for (int l = 0; l < 16; ++l) {
            const double th = 2.0 * std::numbers::pi * l / 16;
            const double dr = oracle::central_difference([&](double x) { return eval_at(r, x, th); }, rr, 1e-5);
            const double dt = oracle::central_difference([&](double t) { return eval_at(r, rr, t); }, th, 1e-5) / rr;
            CHECK(s.u[l] == doctest::Approx(eval_at(r, rr, th)).epsilon(1e-12));
            CHECK(s.u_r[l] == doctest::Approx(dr).epsilon(1e-7));
            CHECK(s.u_theta[l] == doctest::Approx(dt).epsilon(1e-7));
        }
    }

    TEST_CASE("text format round trip")
    {
        const BasisPtr b = build_basis(3, 4);
        const Field r = random_field(b, 77);
        std::stringstream io;
        write_field(io, r);
        const Field back = read_field(io);
        CHECK(back.basis->m_max() == 3);
        CHECK(back.basis->k_max() == 4);
        CHECK(back.coeffs == r.coeffs);
    }
}
