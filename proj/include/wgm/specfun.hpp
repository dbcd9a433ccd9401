#pragma once

// Bessel functions of the first kind for integer and half-integer orders,
// their zeros, and log-Gamma.
//
// Orders are stored as 2*nu so that nu = n + d/2 - 1 is exact for every
// dimension d. Values are produced either by the ascending series (small
// argument) or by Miller's downward recurrence normalised with
// J_0 + 2 sum J_{2k} = 1 (integer orders) or with the closed forms of
// J_{+-1/2} (half-integer orders). Both paths track a binary exponent so that
// results far below the double range are still available in log form.

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace wgm {

class SpecfunError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the supported domain (negative x, x beyond the guard).
class DomainError : public SpecfunError {
public:
    using SpecfunError::SpecfunError;
};

/// An iterative procedure (recurrence self-check, zero refinement) did not settle.
class ConvergenceError : public SpecfunError {
public:
    using SpecfunError::SpecfunError;
};

/// Bessel order nu, held as twice_nu so half-integers are exact.
class Order {
public:
    explicit Order(int twice_nu);

    static Order integer(int nu) { return Order(2 * nu); }
    /// nu = n + d/2 - 1.
    static Order from_dimension(int d, int n);
    /// Accepts an integer or half-integer value; throws DomainError otherwise.
    static Order from_value(double nu);

    int twice() const { return twice_nu_; }
    double value() const { return 0.5 * twice_nu_; }
    bool is_integer() const { return twice_nu_ % 2 == 0; }

    auto operator<=>(const Order&) const = default;

private:
    int twice_nu_;
};

std::string to_string(Order order);

/// mantissa * 2^exponent, with |mantissa| in [0.5, 1) or exactly 0.
struct ScaledValue {
    double mantissa = 0.0;
    int exponent = 0;

    static ScaledValue from(double v);
    double value() const;
    /// ln|value|; -inf for an exact zero.
    double log_abs() const;
    /// True when the value is nonzero but does not fit in a double.
    bool underflows() const;
    int sign() const { return (mantissa > 0) - (mantissa < 0); }
};

/// J_nu(x) and J_nu'(x) in scaled form.
struct BesselPair {
    ScaledValue j;
    ScaledValue j_prime;
};

/// Largest argument accepted for order nu.
double argument_guard(Order order);

double bessel_j(Order order, double x);
double bessel_j_prime(Order order, double x);
BesselPair bessel_j_scaled(Order order, double x);

enum class ZeroKind { of_j, of_j_prime };

struct ZeroRecord {
    Order order;
    int k;
    double value;
    ZeroKind kind;
};

ZeroRecord first_zero(Order order);
ZeroRecord kth_zero(Order order, int k);
/// The first `count` positive zeros of J_nu, in increasing order.
std::vector<double> zeros(Order order, int count);
ZeroRecord first_deriv_zero(Order order);

double log_gamma(double x);

/// Dirichlet energy of r^{-D} J_nu(scale r) Y over the ball of radius s, with
/// D = d/2 - 1 and Y an L^2-normalised spherical harmonic, via Lommel's integral.
double lommel_energy(Order order, int d, double scale, double s);

/// int_0^s r J_nu(scale r)^2 dr via Lommel's integral.
double lommel_mass(Order order, double scale, double s);

/// ln of (x/2)^nu / Gamma(nu + 1), an upper bound for ln|J_nu(x)|.
double envelope_log_bound(Order order, double x);

}  // namespace wgm
