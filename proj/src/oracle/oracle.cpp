#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wgm::oracle {

long double series_bessel_j(double nu, double x, int max_terms, double* condition)
{
    if (condition) *condition = 1.0;
    if (x == 0.0) return nu == 0.0 ? 1.0L : 0.0L;
    const long double half = static_cast<long double>(x) / 2.0L;
    const long double lnu = nu;
    long double term = std::exp(lnu * std::log(half) - std::lgamma(lnu + 1.0L));
    long double sum = term, magnitude = std::fabs(term);
    const long double q = -half * half;
    for (int k = 1; k < max_terms; ++k) {
        term *= q / (static_cast<long double>(k) * (static_cast<long double>(k) + lnu));
        sum += term;
        magnitude += std::fabs(term);
        if (std::fabs(term) < 1e-22L * std::fabs(sum) && k > 4) break;
    }
    if (condition) *condition = sum == 0 ? INFINITY : static_cast<double>(magnitude / std::fabs(sum));
    return sum;
}

double reference_bessel_j(double nu, double x)
{
    if (nu == -1.0) return -reference_bessel_j(1.0, x);
    double cond = 0.0;
    const long double s = series_bessel_j(nu, x, 400, &cond);
    if (cond < 1e4) return static_cast<double>(s);
    return schlafli_bessel_j(nu, x);
}

double reference_bessel_j_prime(double nu, double x)
{
    if (nu == 0.0) return -reference_bessel_j(1.0, x);
    return 0.5 * (reference_bessel_j(nu - 1.0, x) - reference_bessel_j(nu + 1.0, x));
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n)
{
    std::vector<double> nodes(n), weights(n);
    const long double pi = std::numbers::pi_v<long double>;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        long double z = std::cos(pi * (i + 0.75L) / (n + 0.5L));
        long double dp = 0;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1, p1 = 0;
            for (int k = 1; k <= n; ++k) {
                long double p2 = p1;
                p1 = p0;
                p0 = ((2.0L * k - 1.0L) * z * p1 - (k - 1.0L) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0L);
            long double dz = p0 / dp;
            z -= dz;
            if (std::fabs(dz) < 1e-19L) break;
        }
        // Recompute the derivative at the converged node.
        long double p0 = 1, p1 = 0;
        for (int k = 1; k <= n; ++k) {
            long double p2 = p1;
            p1 = p0;
            p0 = ((2.0L * k - 1.0L) * z * p1 - (k - 1.0L) * p2) / k;
        }
        dp = n * (z * p0 - p1) / (z * z - 1.0L);
        const long double w = 2.0L / ((1.0L - z * z) * dp * dp);
        nodes[i] = static_cast<double>(-z);
        nodes[n - 1 - i] = static_cast<double>(z);
        weights[i] = weights[n - 1 - i] = static_cast<double>(w);
    }
    return {nodes, weights};
}

namespace {

template <class F>
long double composite_gl(const F& f, long double a, long double b, int panels)
{
    static const auto rule = gauss_legendre(20);
    const long double h = (b - a) / panels;
    long double total = 0;
    for (int p = 0; p < panels; ++p) {
        const long double lo = a + p * h;
        const long double mid = lo + h / 2;
        long double s = 0;
        for (std::size_t i = 0; i < rule.first.size(); ++i)
            s += rule.second[i] * f(mid + h / 2 * rule.first[i]);
        total += s * h / 2;
    }
    return total;
}

long double tail_cutoff(double nu, double x)
{
    // Smallest T with x sinh T + nu T >= 80.
    long double t = 1;
    while (x * std::sinh(t) + nu * t < 80.0L) t *= 1.5L;
    return t;
}

}  // namespace

double schlafli_bessel_j(double nu, double x)
{
    const long double pi = std::numbers::pi_v<long double>;
    const int panels = static_cast<int>(std::ceil((nu + x) / 2.0)) + 8;
    long double main = composite_gl(
        [&](long double t) { return std::cos(nu * t - x * std::sin(t)); }, 0.0L, pi, panels);
    main /= pi;
    const long double s = std::sin(nu * pi);
    if (std::fabs(s) > 1e-30L && x > 0) {
        const long double T = tail_cutoff(nu, x);
        long double tail = composite_gl(
            [&](long double t) { return std::exp(-x * std::sinh(t) - nu * t); }, 0.0L, T, 200);
        main -= s / pi * tail;
    }
    return static_cast<double>(main);
}

double schlafli_bessel_j_prime(double nu, double x)
{
    const long double pi = std::numbers::pi_v<long double>;
    const int panels = static_cast<int>(std::ceil((nu + x) / 2.0)) + 8;
    long double main = composite_gl(
        [&](long double t) { return std::sin(nu * t - x * std::sin(t)) * std::sin(t); }, 0.0L,
        pi, panels);
    main /= pi;
    const long double s = std::sin(nu * pi);
    if (std::fabs(s) > 1e-30L && x > 0) {
        const long double T = tail_cutoff(nu, x);
        long double tail = composite_gl(
            [&](long double t) { return std::sinh(t) * std::exp(-x * std::sinh(t) - nu * t); },
            0.0L, T, 200);
        main += s / pi * tail;
    }
    return static_cast<double>(main);
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth)
{
    const double m = (a + b) / 2;
    const double lm = (a + m) / 2, rm = (m + b) / 2;
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15 * tol) return left + right + delta / 15;
    return simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth)
{
    // Seed with a fixed subdivision so narrow peaks are not skipped by the first estimate.
    constexpr int seeds = 64;
    const double h = (b - a) / seeds;
    double total = 0;
    for (int i = 0; i < seeds; ++i) {
        const double lo = a + i * h, hi = lo + h;
        const double flo = f(lo), fhi = f(hi), fm = f((lo + hi) / 2);
        const double whole = h / 6 * (flo + 4 * fm + fhi);
        total += simpson_step(f, lo, hi, flo, fm, fhi, whole, tol / seeds, max_depth);
    }
    return total;
}

namespace {

long double gl20(const std::function<double(double)>& f, long double a, long double b)
{
    static const auto rule = gauss_legendre(20);
    const long double mid = (a + b) / 2, half = (b - a) / 2;
    long double s = 0;
    for (std::size_t i = 0; i < rule.first.size(); ++i)
        s += rule.second[i] * f(static_cast<double>(mid + half * rule.first[i]));
    return s * half;
}

long double gauss_step(const std::function<double(double)>& f, long double a, long double b,
                       long double whole, long double tol, int depth)
{
    const long double m = (a + b) / 2;
    const long double left = gl20(f, a, m), right = gl20(f, m, b);
    if (depth <= 0 || std::fabs(left + right - whole) <= tol) return left + right;
    return gauss_step(f, a, m, left, tol / 2, depth - 1) + gauss_step(f, m, b, right, tol / 2, depth - 1);
}

}  // namespace

double adaptive_gauss(const std::function<double(double)>& f, double a, double b, double rel_tol,
                      int max_depth)
{
    constexpr int seeds = 16;
    const long double h = (static_cast<long double>(b) - a) / seeds;
    std::vector<long double> first(seeds);
    long double rough = 0;
    for (int i = 0; i < seeds; ++i) {
        first[i] = gl20(f, a + i * h, a + (i + 1) * h);
        rough += std::fabs(first[i]);
    }
    const long double tol = std::max(rel_tol * rough, 1e-300L) / seeds;
    long double total = 0;
    for (int i = 0; i < seeds; ++i) total += gauss_step(f, a + i * h, a + (i + 1) * h, first[i], tol, max_depth);
    return static_cast<double>(total);
}

double bisect(const std::function<double(double)>& f, double a, double b, double width)
{
    double fa = f(a);
    if ((fa > 0) == (f(b) > 0)) throw std::invalid_argument("bisect: no sign change");
    while (b - a > width) {
        const double m = (a + b) / 2;
        const double fm = f(m);
        if (fm == 0) return m;
        if ((fm > 0) == (fa > 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return (a + b) / 2;
}

long double recurrence_log_gamma(long double x)
{
    long double shift = 0;
    while (x < 40) {
        shift += std::log(x);
        x += 1;
    }
    const long double pi = std::numbers::pi_v<long double>;
    const long double inv = 1 / x, inv2 = inv * inv;
    const long double series =
        inv * (1.0L / 12 - inv2 * (1.0L / 360 - inv2 * (1.0L / 1260 - inv2 / 1680)));
    return (x - 0.5L) * std::log(x) - x + 0.5L * std::log(2 * pi) + series - shift;
}

double central_difference(const std::function<double(double)>& f, double x, double h)
{
    return (f(x + h) - f(x - h)) / (2 * h);
}

}  // namespace wgm::oracle
