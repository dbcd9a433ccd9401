#include "wgm/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace wgm {

Order::Order(int twice_nu) : twice_nu_(twice_nu)
{
    if (twice_nu < 0) throw DomainError("Bessel order must be nonnegative");
}

Order Order::from_dimension(int d, int n)
{
    if (d < 2 || n < 0) throw DomainError("Order::from_dimension needs d >= 2, n >= 0");
    return Order(2 * n + d - 2);
}

Order Order::from_value(double nu)
{
    const double twice = 2.0 * nu;
    if (!(twice >= 0) || twice != std::round(twice) || twice > 1e8)
        throw DomainError("order must be a nonnegative integer or half-integer");
    return Order(static_cast<int>(twice));
}

std::string to_string(Order order)
{
    if (order.is_integer()) return std::to_string(order.twice() / 2);
    return std::to_string(order.twice() / 2) + ".5";
}

ScaledValue ScaledValue::from(double v)
{
    if (v == 0.0) return {};
    int e = 0;
    const double m = std::frexp(v, &e);
    return {m, e};
}

double ScaledValue::value() const
{
    return std::ldexp(mantissa, exponent);
}

double ScaledValue::log_abs() const
{
    if (mantissa == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(std::fabs(mantissa)) + exponent * std::numbers::ln2;
}

bool ScaledValue::underflows() const
{
    return mantissa != 0.0 && exponent < std::numeric_limits<double>::min_exponent;
}

namespace {

constexpr int kRescaleBits = 500;
const double kRescaleLimit = std::ldexp(1.0, kRescaleBits);
const double kRescaleFactor = std::ldexp(1.0, -kRescaleBits);

ScaledValue make_scaled(double m, long e)
{
    if (m == 0.0) return {};
    int e2 = 0;
    const double m2 = std::frexp(m, &e2);
    return {m2, static_cast<int>(e + e2)};
}

ScaledValue negate(ScaledValue v)
{
    return {-v.mantissa, v.exponent};
}

// a - b, both scaled.
ScaledValue subtract(ScaledValue a, ScaledValue b)
{
    if (a.mantissa == 0.0) return negate(b);
    if (b.mantissa == 0.0) return a;
    const int e = std::max(a.exponent, b.exponent);
    const double am = std::ldexp(a.mantissa, a.exponent - e);
    const double bm = std::ldexp(b.mantissa, b.exponent - e);
    return make_scaled(am - bm, e);
}

// J_{nu-1}, J_nu, J_{nu+1}.
struct Triple {
    ScaledValue lower, mid, upper;
};

// (x/2)^mu / Gamma(mu + 1) for mu = twice_mu / 2 >= -1/2, x > 0.
ScaledValue series_leading(int twice_mu, double x)
{
    const double h = 0.5 * x;
    double m = 1.0;
    long e = 0;
    auto renorm = [&] {
        int e2 = 0;
        m = std::frexp(m, &e2);
        e += e2;
    };
    if (twice_mu % 2 == 0) {
        for (int i = 1; i <= twice_mu / 2; ++i) {
            m *= h / i;
            renorm();
        }
    } else {
        const int whole = (twice_mu - 1) / 2;  // mu = whole + 1/2
        if (whole < 0) return ScaledValue::from(1.0 / std::sqrt(h * std::numbers::pi));
        m = std::sqrt(h) / (0.5 * std::sqrt(std::numbers::pi));
        renorm();
        for (int i = 1; i <= whole; ++i) {
            m *= h / (i + 0.5);
            renorm();
        }
    }
    return make_scaled(m, e);
}

ScaledValue series_j(int twice_mu, double x)
{
    if (twice_mu == -2) return negate(series_j(2, x));  // J_{-1} = -J_1
    const double mu = 0.5 * twice_mu;
    const double q = -0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 1000; ++k) {
        const double denom = k * (k + mu);
        term *= q / denom;
        sum += term;
        if (denom > -q && std::fabs(term) <= 1e-17 * std::fabs(sum)) break;
    }
    const ScaledValue lead = series_leading(twice_mu, x);
    return make_scaled(lead.mantissa * sum, lead.exponent);
}

Triple series_triple(Order order, double x)
{
    const int t = order.twice();
    return {series_j(t - 2, x), series_j(t, x), series_j(t + 2, x)};
}

// Miller's downward recurrence started `offset` orders above max(nu, x).
Triple miller_triple(Order order, double x, int offset)
{
    const bool integer = order.is_integer();
    // Recurrence index i carries order mu_i = i (integer) or i + 1/2 (half-integer).
    const int inu = integer ? order.twice() / 2 : (order.twice() - 1) / 2;
    const int lowest = integer ? 0 : -1;
    int start = std::max(inu + 2, static_cast<int>(std::ceil(x))) + offset;
    if (integer && start % 2 != 0) ++start;

    struct Saved {
        double v = 0.0;
        long shift = 0;
    };
    Saved saved[3];  // indices inu-1, inu, inu+1
    auto save = [&](int i, double v, long shift) {
        const int slot = i - (inu - 1);
        if (slot >= 0 && slot < 3) saved[slot] = {v, shift};
    };

    const double half = integer ? 0.0 : 0.5;
    double f_next = 0.0;  // index i + 1
    double f = 1.0;       // index i
    double norm = 0.0;
    long shift = 0;
    for (int i = start; i > lowest; --i) {
        const double f_prev = (2.0 * (i + half) / x) * f - f_next;
        f_next = f;
        f = f_prev;
        const int idx = i - 1;
        if (integer) {
            if (idx == 0)
                norm += f;
            else if (idx % 2 == 0)
                norm += 2.0 * f;
        }
        save(idx, f, shift);
        if (std::fabs(f) > kRescaleLimit) {
            f *= kRescaleFactor;
            f_next *= kRescaleFactor;
            norm *= kRescaleFactor;
            shift += kRescaleBits;
        }
    }

    double scale = 0.0;
    if (integer) {
        scale = 1.0 / norm;
    } else {
        // f is the order -1/2 value, f_next the order 1/2 value.
        const double s = std::sqrt(2.0 / (std::numbers::pi * x));
        const double j_half = s * std::sin(x);
        const double j_mhalf = s * std::cos(x);
        scale = (j_half * f_next + j_mhalf * f) / (f_next * f_next + f * f);
    }
    auto finish = [&](const Saved& sv) { return make_scaled(sv.v * scale, sv.shift - shift); };

    Triple out{finish(saved[0]), finish(saved[1]), finish(saved[2])};
    if (integer && inu == 0) out.lower = negate(out.upper);
    return out;
}

bool consistent(const Triple& a, const Triple& b, double tol)
{
    const int e = std::max({a.lower.exponent, a.mid.exponent, a.upper.exponent,
                            b.lower.exponent, b.mid.exponent, b.upper.exponent});
    auto close = [e, tol](ScaledValue u, ScaledValue v) {
        const double d = std::ldexp(u.mantissa, u.exponent - e) - std::ldexp(v.mantissa, v.exponent - e);
        return std::fabs(d) <= tol;
    };
    return close(a.lower, b.lower) && close(a.mid, b.mid) && close(a.upper, b.upper);
}

Triple miller_checked(Order order, double x)
{
    int offset = std::max(40, static_cast<int>(std::ceil(12.0 * std::sqrt(x))));
    // Rounding noise grows like the square root of the recurrence length.
    const double length = std::max(order.value(), x);
    const double tol = 5e-13 * std::max(1.0, std::sqrt(length / 1e4));
    Triple previous = miller_triple(order, x, offset);
    for (int attempt = 0; attempt < 6; ++attempt) {
        offset *= 2;
        Triple next = miller_triple(order, x, offset);
        if (consistent(previous, next, tol)) return next;
        previous = next;
    }
    throw ConvergenceError("Miller recurrence failed its self-consistency check for order " +
                           to_string(order));
}

bool use_series(Order order, double x)
{
    const double nu = order.value();
    return x <= 2.0 || 0.25 * x * x <= 0.25 * (nu + 1.0);
}

Triple evaluate_triple(Order order, double x)
{
    if (!(x >= 0.0)) throw DomainError("Bessel argument must be nonnegative");
    if (x > argument_guard(order))
        throw DomainError("Bessel argument beyond the supported range for order " +
                          to_string(order));
    if (use_series(order, x)) return series_triple(order, x);
    return miller_checked(order, x);
}

}  // namespace

double argument_guard(Order order)
{
    return std::max(15.0 * (order.value() + 2.0), 2000.0);
}

BesselPair bessel_j_scaled(Order order, double x)
{
    if (x == 0.0) {
        const int t = order.twice();
        const double j = t == 0 ? 1.0 : 0.0;
        double jp = 0.0;
        if (t == 2) jp = 0.5;
        if (t == 1) jp = std::numeric_limits<double>::infinity();
        return {ScaledValue::from(j), ScaledValue::from(jp)};
    }
    const Triple t = evaluate_triple(order, x);
    ScaledValue jp = subtract(t.lower, t.upper);
    jp.exponent -= 1;
    if (jp.mantissa == 0.0) jp.exponent = 0;
    return {t.mid, jp};
}

double bessel_j(Order order, double x)
{
    return bessel_j_scaled(order, x).j.value();
}

double bessel_j_prime(Order order, double x)
{
    return bessel_j_scaled(order, x).j_prime.value();
}

double lommel_mass(Order order, double scale, double s)
{
    if (s == 0.0) return 0.0;
    const double nu = order.value();
    const double z = scale * s;
    const BesselPair p = bessel_j_scaled(order, z);
    const double j = p.j.value(), jp = p.j_prime.value();
    const double val = 0.5 * (z * z - nu * nu) * j * j + 0.5 * z * z * jp * jp;
    return val / (scale * scale);
}

double lommel_energy(Order order, int d, double scale, double s)
{
    if (s == 0.0) return 0.0;
    const double nu = order.value();
    const double D = 0.5 * d - 1.0;
    const double z = scale * s;
    const BesselPair p = bessel_j_scaled(order, z);
    const double j = p.j.value(), jp = p.j_prime.value();
    return 0.5 * (z * z - nu * nu) * j * j + 0.5 * z * z * jp * jp + (-D * j + z * jp) * j;
}

double envelope_log_bound(Order order, double x)
{
    const double nu = order.value();
    return nu * std::log(0.5 * x) - log_gamma(nu + 1.0);
}

double log_gamma(double x)
{
    if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
    if (x == std::floor(x) && x <= 171.0) {
        double s = 0.0;
        for (int k = 2; k < static_cast<int>(x); ++k) s += std::log(static_cast<double>(k));
        return s;
    }
    double shift = 0.0;
    double prod = 1.0;
    while (x < 10.0) {
        prod *= x;
        x += 1.0;
    }
    shift = std::log(prod);
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double series =
        inv * (1.0 / 12.0 -
               inv2 * (1.0 / 360.0 -
                       inv2 * (1.0 / 1260.0 -
                               inv2 * (1.0 / 1680.0 -
                                       inv2 * (1.0 / 1188.0 -
                                               inv2 * (691.0 / 360360.0 - inv2 / 156.0))))));
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series - shift;
}

}  // namespace wgm
