#include "suites.hpp"

#include "oracle.hpp"
#include "wgm/linear_spectrum.hpp"
#include "wgm/ls_solver.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace wgm::oracle {

namespace {

Comparison compare(std::string label, double expected, double actual, double tol)
{
    const double err = std::fabs(actual - expected) / std::max(std::fabs(expected), 1e-300);
    return {std::move(label), expected, actual, err, tol, err <= tol};
}

}  // namespace

int SuiteReport::passed() const
{
    int n = 0;
    for (const Comparison& c : items) n += c.pass;
    return n;
}

double SuiteReport::worst_error() const
{
    double w = 0.0;
    for (const Comparison& c : items) w = std::max(w, c.error);
    return w;
}

SuiteReport lommel_suite()
{
    SuiteReport rep{"lommel", {}};
    for (int d : {2, 3}) {
        for (int n : {5, 20, 60}) {
            const BallMode m = mode(d, n);
            const double D = 0.5 * d - 1.0;
            const double nu = n + D;
            const double j = m.j;
            const double angular = static_cast<double>(n) * (n + d - 2);
            auto integrand = [&](double r) {
                if (r == 0.0) return 0.0;
                const double x = j * r;
                const double J = reference_bessel_j(nu, x);
                const double Jp = nu / x * J - reference_bessel_j(nu + 1.0, x);
                const double radial = j * Jp - D * J / r;
                return r * (radial * radial + angular * J * J / (r * r));
            };
            for (double s : {0.3, 0.7, 1.0}) {
                std::ostringstream label;
                label << "d=" << d << " n=" << n << " s=" << s;
                rep.items.push_back(compare(label.str(), adaptive_gauss(integrand, 0.0, s, 1e-12),
                                            grad_energy(m, s), 1e-8));
            }
        }
    }
    return rep;
}

SuiteReport mass_suite()
{
    SuiteReport rep{"mass", {}};
    for (int d : {2, 3}) {
        for (int n : {0, 3, 20, 45}) {
            const BallMode m = mode(d, n);
            const double nu = m.order.value();
            auto integrand = [&](double r) {
                const double J = reference_bessel_j(nu, m.j * r);
                return r * J * J;
            };
            for (double s : {0.25, 0.6, 1.0}) {
                std::ostringstream label;
                label << "d=" << d << " n=" << n << " s=" << s;
                rep.items.push_back(compare(label.str(), adaptive_gauss(integrand, 0.0, s, 1e-12),
                                            radial_mass(m, s), 1e-8));
            }
        }
    }
    return rep;
}

SuiteReport bessel_suite()
{
    SuiteReport rep{"bessel", {}};
    for (int twice = 0; twice <= 40; ++twice) {
        for (double x : {0.1, 0.7, 1.5, 2.5, 4.0, 6.3, 8.0, 10.0}) {
            double cond = 0.0;
            const double ref = static_cast<double>(series_bessel_j(0.5 * twice, x, 200, &cond));
            if (cond > 1e4) continue;
            std::ostringstream label;
            label << "nu=" << 0.5 * twice << " x=" << x;
            rep.items.push_back(compare(label.str(), ref, bessel_j(Order(twice), x), 1e-11));
        }
    }
    return rep;
}

SuiteReport gradient_suite(int n, double delta, int points, unsigned seed)
{
    SuiteReport rep{"gradient", {}};
    LsConfig cfg;
    cfg.n = n;
    cfg.delta = delta;
    const LsProblem prob(cfg);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(0.05, 0.5), angle(0.0, 2.0 * 3.141592653589793);
    for (int p = 0; p < points; ++p) {
        const double r = radius(rng), a = angle(rng);
        const double x = r * std::cos(a), y = r * std::sin(a);
        const auto g = prob.reduced_gradient(prob.k_field(x, y));
        const double h = 1e-6 * r;
        const double fd[2] = {
            (prob.j_tilde(prob.k_field(x + h, y)) - prob.j_tilde(prob.k_field(x - h, y))) / (2.0 * h),
            (prob.j_tilde(prob.k_field(x, y + h)) - prob.j_tilde(prob.k_field(x, y - h))) / (2.0 * h)};
        const double scale = std::hypot(g[0], g[1]);
        for (int i = 0; i < 2; ++i) {
            std::ostringstream label;
            label << "n=" << n << " w=(" << x << ", " << y << ") component " << i;
            const double err = std::fabs(g[i] - fd[i]) / scale;
            rep.items.push_back({label.str(), fd[i], g[i], err, 1e-5, err <= 1e-5});
        }
    }
    return rep;
}

std::vector<std::string> suite_names()
{
    return {"bessel", "lommel", "mass", "gradient"};
}

SuiteReport run_suite(const std::string& name)
{
    if (name == "bessel") return bessel_suite();
    if (name == "lommel") return lommel_suite();
    if (name == "mass") return mass_suite();
    if (name == "gradient") return gradient_suite();
    throw std::invalid_argument("unknown oracle suite '" + name + "'");
}

}  // namespace wgm::oracle
