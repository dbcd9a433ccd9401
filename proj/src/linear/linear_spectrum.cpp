#include "wgm/linear_spectrum.hpp"

#include "wgm/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace wgm {

namespace {

void check_dimension(int d)
{
    if (d != 2 && d != 3) throw DomainError("only d = 2 and d = 3 are supported");
}

long binomial(long top, long k)
{
    if (top < 0 || k < 0 || k > top) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (top - k + i) / i;
    return r;
}

double log2_margin(double bound, double value)
{
    if (value <= 0.0) return std::numeric_limits<double>::infinity();
    return std::log2(bound) - std::log2(value);
}

}  // namespace

long harmonic_dimension(int d, int n)
{
    check_dimension(d);
    if (n < 0) throw DomainError("angular degree must be nonnegative");
    return binomial(n + d - 1, d - 1) - binomial(n + d - 3, d - 1);
}

BallMode mode(int d, int n)
{
    BallMode m;
    m.d = d;
    m.n = n;
    m.mult = harmonic_dimension(d, n);
    m.order = Order::from_dimension(d, n);
    m.j = first_zero(m.order).value;
    m.lam = m.j * m.j;
    return m;
}

double radial_mass(const BallMode& m, double s)
{
    return lommel_mass(m.order, m.j, s);
}

double grad_energy(const BallMode& m, double s)
{
    return lommel_energy(m.order, m.d, m.j, s);
}

double angular_lp_norm(int d, int n, double p)
{
    check_dimension(d);
    if (d == 2) {
        constexpr int nodes = 4096;
        const double h = 2.0 * std::numbers::pi / nodes;
        const double c = n == 0 ? 1.0 / std::sqrt(2.0 * std::numbers::pi) : 1.0 / std::sqrt(std::numbers::pi);
        double sum = 0.0;
        for (int i = 0; i < nodes; ++i) sum += std::pow(std::fabs(c * std::cos(n * i * h)), p);
        return std::pow(sum * h, 1.0 / p);
    }
    static const QuadratureRule rule = gauss_legendre(2048);
    const double c = std::sqrt((2.0 * n + 1.0) / (4.0 * std::numbers::pi));
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        double p0 = 1.0, p1 = x;
        if (n == 0) p1 = 1.0;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        sum += rule.weights[i] * std::pow(std::fabs(c * p1), p);
    }
    return std::pow(2.0 * std::numbers::pi * sum, 1.0 / p);
}

double lp_mass(const BallMode& m, double p, double s)
{
    if (s <= 0.0) return 0.0;
    const double D = 0.5 * m.d - 1.0;
    const double power = m.d - 1.0 - p * D;
    // Values below the double range come back as 0, which is what the integral sees.
    auto integrand = [&](double r) {
        const double j = bessel_j(m.order, m.j * r);
        if (j == 0.0) return 0.0;
        return std::pow(r, power) * std::pow(std::fabs(j), p);
    };
    const QuadratureResult radial = integrate_adaptive(integrand, 0.0, s);
    return radial.value * std::pow(angular_lp_norm(m.d, m.n, p), p);
}

double inner_radius(double lam)
{
    return std::max(0.0, 1.0 - 2.0 * std::pow(lam, -1.0 / 6.0));
}

double supercritical_radius(const BallMode& m)
{
    const double nu = m.order.value();
    return (nu - std::pow(nu, 2.0 / 3.0)) / m.j;
}

bool WgmReport::pass() const
{
    if (!grad_pass) return false;
    for (const LpEntry& e : lp_entries)
        if (!e.pass) return false;
    return true;
}

WgmReport verify_inner_decay(int d, int n, const std::vector<double>& p_list)
{
    const BallMode m = mode(d, n);
    WgmReport rep;
    rep.d = d;
    rep.n = n;
    rep.nu = m.order;
    rep.lam = m.lam;
    rep.tau = inner_radius(m.lam);
    rep.zeta = supercritical_radius(m);
    const double mass = radial_mass(m, 1.0);
    const double scale = std::pow(m.lam, 1.0 / 6.0);

    rep.grad_energy_inner = std::max(0.0, grad_energy(m, rep.tau)) / mass;
    rep.grad_bound = std::exp2(-scale / 5.0);
    rep.grad_margin = log2_margin(rep.grad_bound, rep.grad_energy_inner);
    rep.grad_pass = rep.grad_energy_inner <= rep.grad_bound;

    for (double p : p_list) {
        LpEntry e;
        e.p = p;
        e.mass_inner = lp_mass(m, p, rep.tau) / std::pow(mass, 0.5 * p);
        e.bound = std::exp2(-scale * p / 10.0);
        e.margin = log2_margin(e.bound, e.mass_inner);
        e.pass = e.mass_inner <= e.bound;
        rep.lp_entries.push_back(e);
    }
    return rep;
}

std::vector<int> degrees_in_order_range(int d, double nu_min, double nu_max)
{
    check_dimension(d);
    const double D = 0.5 * d - 1.0;
    std::vector<int> out;
    for (int n = std::max(0, static_cast<int>(std::ceil(nu_min - D))); n + D <= nu_max; ++n) out.push_back(n);
    return out;
}

std::vector<WgmReport> verify_order_range(int d, double nu_min, double nu_max,
                                         const std::vector<double>& p_list, unsigned threads)
{
    const std::vector<int> degrees = degrees_in_order_range(d, nu_min, nu_max);
    std::vector<WgmReport> out(degrees.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(degrees.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < degrees.size(); i = next++) out[i] = verify_inner_decay(d, degrees[i], p_list);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (std::thread& th : pool) th.join();
    return out;
}

double sogge_ratio(int d, int n, double r)
{
    const double eig = std::max(1.0, static_cast<double>(n) * (n + d - 2));
    return angular_lp_norm(d, n, r) / std::pow(eig, (d - 1) / 4.0);
}

}  // namespace wgm
