#pragma once

// Gauss-Legendre rules and a globally adaptive Gauss-Legendre integrator.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wgm {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

/// The n-point rule mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
    bool converged = false;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, QuadratureResult achieved)
        : std::runtime_error(what), result(achieved)
    {
    }
    QuadratureResult result;
};

struct AdaptiveOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-300;
    int initial_panels = 8;
    int max_panels = 4000;
};

/// Integrate f over [a, b]. Each panel is estimated with 10- and 20-point
/// Gauss-Legendre rules; the panel with the largest difference is bisected
/// until the summed estimate meets max(rel_tol * |value|, abs_tol).
/// Throws QuadratureError (carrying the achieved estimate) when the panel
/// budget runs out.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const AdaptiveOptions& options = {});

}  // namespace wgm
