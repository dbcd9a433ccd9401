#pragma once

// Reference evaluators used to cross-check the production code paths.
// Nothing in here calls into the wgm library: every routine is a separate,
// slower algorithm (power series in extended precision, integral
// representations, adaptive Simpson and Gauss-Legendre) so that agreement is meaningful.

#include <functional>
#include <utility>
#include <vector>

namespace wgm::oracle {

/// J_nu(x) by its ascending power series, summed in long double.
/// Only trustworthy where the series has little cancellation; `condition`
/// receives sum|terms| / |sum|, which bounds the relative error amplification.
long double series_bessel_j(double nu, double x, int max_terms = 200, double* condition = nullptr);

/// J_nu(x) from the series when its condition number is below 1e4, otherwise
/// from the Schlaefli integral.
double reference_bessel_j(double nu, double x);

/// (J_{nu-1} - J_{nu+1}) / 2 from reference_bessel_j (-J_1 at nu = 0).
double reference_bessel_j_prime(double nu, double x);

/// J_nu(x) from the Schlaefli integral
///   (1/pi) int_0^pi cos(nu t - x sin t) dt - sin(nu pi)/pi int_0^inf e^{-x sinh t - nu t} dt
/// with composite Gauss-Legendre panels. Good to ~1e-14 absolute for
/// moderate arguments; loses relative accuracy where J is tiny.
double schlafli_bessel_j(double nu, double x);

/// Derivative from the Schlaefli representation (differentiated under the integral).
double schlafli_bessel_j_prime(double nu, double x);

/// Adaptive Simpson quadrature with Richardson correction.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 60);

/// Recursive bisection with a 20-point Gauss-Legendre rule per panel, starting
/// from 16 equal panels; a panel is accepted once its two halves agree with it
/// to within its share of `rel_tol` times a first estimate of |integral|.
double adaptive_gauss(const std::function<double(double)>& f, double a, double b, double rel_tol,
                      int max_depth = 40);

/// Plain bisection for a sign change on [a, b]; returns the midpoint of the final bracket.
double bisect(const std::function<double(double)>& f, double a, double b, double width);

/// Gauss-Legendre nodes/weights on [-1, 1], computed in long double by Newton iteration.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

/// log Gamma(x) for x > 0 by pushing the argument into the Stirling regime (x >= 40)
/// with Gamma(x+1) = x Gamma(x), evaluated in long double.
long double recurrence_log_gamma(long double x);

/// Central finite difference of f at x with step h.
double central_difference(const std::function<double(double)>& f, double x, double h);

}  // namespace wgm::oracle
