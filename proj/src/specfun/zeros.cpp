#include "wgm/specfun.hpp"

#include <cmath>
#include <functional>

namespace wgm {

namespace {

// Consecutive zeros of J_nu and of J_nu' (nu >= 0) are more than 2.4 apart,
// and all of them lie above nu, so a scan from max(nu, 0.5) with this step
// sees every sign change separately.
constexpr double kScanStep = 0.5;
constexpr int kMaxScanSteps = 200000;

using Scalar = std::function<double(double)>;

// Bisect [a, b] (f(a), f(b) of opposite sign) to relative width 1e-13,
// then take one Newton step from the midpoint.
double refine(const Scalar& f, const Scalar& df, double a, double b)
{
    double fa = f(a);
    for (int it = 0; it < 200 && b - a > 1e-13 * b; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    const double mid = 0.5 * (a + b);
    const double slope = df(mid);
    if (slope != 0.0) {
        const double polished = mid - f(mid) / slope;
        if (polished >= a && polished <= b) return polished;
    }
    return mid;
}

// Walk right from `from` (where f has sign `sign0`) and return the bracket of the next sign change.
std::pair<double, double> next_sign_change(const Scalar& f, double from)
{
    double x = from;
    double fx = f(x);
    for (int i = 0; i < kMaxScanSteps; ++i) {
        const double y = x + kScanStep;
        const double fy = f(y);
        if (fy == 0.0) return {y, y};
        if ((fy > 0.0) != (fx > 0.0) && fx != 0.0) return {x, y};
        x = y;
        fx = fy;
    }
    throw ConvergenceError("zero scan exceeded its step budget");
}

double scan_start(Order order)
{
    return std::max(order.value(), kScanStep);
}

double j_of(Order order, double x)
{
    return bessel_j(order, x);
}

double jp_of(Order order, double x)
{
    return bessel_j_prime(order, x);
}

// J'' from Bessel's equation.
double jpp_of(Order order, double x)
{
    const double nu = order.value();
    const BesselPair p = bessel_j_scaled(order, x);
    return -p.j_prime.value() / x - (1.0 - nu * nu / (x * x)) * p.j.value();
}

void certify(Order order, double value, ZeroKind kind)
{
    const BesselPair p = bessel_j_scaled(order, value);
    const double f = kind == ZeroKind::of_j ? p.j.value() : p.j_prime.value();
    const double df = kind == ZeroKind::of_j ? p.j_prime.value() : jpp_of(order, value);
    if (!(std::fabs(f) <= 1e-12 * std::fabs(df) * value))
        throw ConvergenceError("zero of order " + to_string(order) + " failed its residual check");
}

// Number of sign changes of f on [start, upto) sampled every `step`; exact
// when consecutive zeros of f are more than `step` apart.
int count_sign_changes(const Scalar& f, double start, double upto, double step)
{
    int changes = 0;
    double prev = f(start);
    for (double x = start + step; x < upto; x += step) {
        const double v = f(x);
        if (v != 0.0 && prev != 0.0 && (v > 0.0) != (prev > 0.0)) ++changes;
        if (v != 0.0) prev = v;
    }
    return changes;
}

}  // namespace

std::vector<double> zeros(Order order, int count)
{
    if (count < 0) throw DomainError("zero count must be nonnegative");
    std::vector<double> out;
    out.reserve(count);
    const Scalar f = [order](double x) { return j_of(order, x); };
    const Scalar df = [order](double x) { return jp_of(order, x); };
    double from = scan_start(order);
    while (static_cast<int>(out.size()) < count) {
        auto [a, b] = next_sign_change(f, from);
        const double z = a == b ? a : refine(f, df, a, b);
        certify(order, z, ZeroKind::of_j);
        out.push_back(z);
        from = b;
    }
    return out;
}

ZeroRecord kth_zero(Order order, int k)
{
    if (k < 1) throw DomainError("zero index must be >= 1");
    const std::vector<double> z = zeros(order, k);
    return {order, k, z.back(), ZeroKind::of_j};
}

ZeroRecord first_zero(Order order)
{
    const double nu = order.value();
    const Scalar f = [order](double x) { return j_of(order, x); };
    const Scalar df = [order](double x) { return jp_of(order, x); };
    if (nu >= 8.0) {
        const double c = std::cbrt(nu);
        const double a = nu + 1.5 * c, b = nu + 2.2 * c;
        if (f(a) > 0.0 && f(b) < 0.0) {
            const double z = refine(f, df, a, b);
            certify(order, z, ZeroKind::of_j);
            // Zeros of J_nu are more than pi apart for nu > 1/2.
            if (count_sign_changes(f, scan_start(order), z - 1e-9 * z, 3.0) == 0)
                return {order, 1, z, ZeroKind::of_j};
        }
    }
    return kth_zero(order, 1);
}

ZeroRecord first_deriv_zero(Order order)
{
    const double nu = order.value();
    const Scalar f = [order](double x) { return jp_of(order, x); };
    const Scalar df = [order](double x) { return jpp_of(order, x); };
    if (nu >= 8.0) {
        const double c = std::cbrt(nu);
        const double lo = nu + 0.6 * c, hi = nu + 1.0 * c;
        if (f(lo) > 0.0 && f(hi) < 0.0) {
            const double z = refine(f, df, lo, hi);
            certify(order, z, ZeroKind::of_j_prime);
            if (count_sign_changes(f, scan_start(order), z - 1e-9 * z, 2.0) == 0)
                return {order, 1, z, ZeroKind::of_j_prime};
        }
    }
    auto [a, b] = next_sign_change(f, scan_start(order));
    const double z = a == b ? a : refine(f, df, a, b);
    certify(order, z, ZeroKind::of_j_prime);
    return {order, 1, z, ZeroKind::of_j_prime};
}

}  // namespace wgm
