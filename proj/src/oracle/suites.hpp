#pragma once

// Cross-checks of library results against the independent evaluators in
// oracle.hpp. Shared by the command-line `oracle` command and the test suites.

#include <string>
#include <vector>

namespace wgm::oracle {

struct Comparison {
    std::string label;
    double expected = 0.0;
    double actual = 0.0;
    double error = 0.0;  // relative unless the suite says otherwise
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteReport {
    std::string name;
    std::vector<Comparison> items;

    int passed() const;
    bool all_passed() const { return passed() == static_cast<int>(items.size()); }
    double worst_error() const;
};

/// Sub-ball Dirichlet energies of ball modes against adaptive Gauss-Legendre quadrature
/// of |grad w|^2 built from reference Bessel values:
/// d in {2, 3}, n in {5, 20, 60}, s in {0.3, 0.7, 1.0}; tolerance 1e-8 relative.
SuiteReport lommel_suite();

/// Reduced gradient against central differences of the reduced energy at
/// `points` random w with ||w||_2 <= 1/2; tolerance 1e-5 relative to |gradient|.
SuiteReport gradient_suite(int n = 8, double delta = 1e-3, int points = 10, unsigned seed = 7);

/// bessel_j against the long-double power series for x <= 10, nu <= 20; tolerance 1e-11 relative.
SuiteReport bessel_suite();

/// Sub-ball L^2 masses against adaptive Gauss-Legendre quadrature of r J^2; tolerance 1e-8 relative.
SuiteReport mass_suite();

std::vector<std::string> suite_names();
/// Throws std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name);

}  // namespace wgm::oracle
