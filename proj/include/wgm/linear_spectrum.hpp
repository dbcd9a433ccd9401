#pragma once

// Dirichlet eigenmodes of the unit ball in d = 2, 3 and their concentration
// near the boundary.
//
// A mode of angular degree n is w(r, theta) = r^{-D} J_nu(j_nu r) Y(theta)
// with D = d/2 - 1, nu = n + D, eigenvalue j_nu^2 and Y an L^2-normalised
// zonal spherical harmonic.

#include "wgm/specfun.hpp"

#include <vector>

namespace wgm {

struct BallMode {
    int d = 2;
    int n = 0;
    Order order{0};
    double j = 0.0;    // first zero of J_nu
    double lam = 0.0;  // j^2
    long mult = 1;     // dimension of the eigenspace of degree-n harmonics
};

/// Dimension of the space of degree-n spherical harmonics on S^{d-1}.
long harmonic_dimension(int d, int n);

BallMode mode(int d, int n);

/// int_{B_s} w^2 = j^{-2} x Lommel closed form at s.
double radial_mass(const BallMode& m, double s);

/// int_{B_s} |grad w|^2 by Lommel's integral.
double grad_energy(const BallMode& m, double s);

/// L^p norm on the sphere of the zonal harmonic of degree n.
double angular_lp_norm(int d, int n, double p);

/// int_{B_s} |w|^p: adaptive radial quadrature times angular_lp_norm^p.
/// Throws QuadratureError when the radial integral misses its tolerance.
double lp_mass(const BallMode& m, double p, double s);

/// tau = 1 - 2 Lambda^{-1/6}, clamped at 0.
double inner_radius(double lam);

/// (nu - nu^{2/3}) / j_nu.
double supercritical_radius(const BallMode& m);

struct LpEntry {
    double p = 2.0;
    double mass_inner = 0.0;  // normalised int_{B_tau} |w|^p
    double bound = 0.0;       // 2^{-Lambda^{1/6} p / 10}
    double margin = 0.0;      // log2(bound) - log2(mass_inner)
    bool pass = false;
};

struct WgmReport {
    int d = 2;
    int n = 0;
    Order nu{0};
    double lam = 0.0;
    double tau = 0.0;
    double zeta = 0.0;
    double grad_energy_inner = 0.0;  // normalised int_{B_tau} |grad w|^2
    double grad_bound = 0.0;         // 2^{-Lambda^{1/6} / 5}
    double grad_margin = 0.0;
    bool grad_pass = false;
    std::vector<LpEntry> lp_entries;

    bool tau_below_zeta() const { return tau < zeta; }
    bool pass() const;
};

/// Checks the inner-ball energy and L^p bounds for the normalised degree-n mode.
WgmReport verify_inner_decay(int d, int n, const std::vector<double>& p_list);

/// Degrees n whose order nu = n + d/2 - 1 lies in [nu_min, nu_max].
std::vector<int> degrees_in_order_range(int d, double nu_min, double nu_max);

/// verify_inner_decay for every degree in the order range, on up to `threads` workers;
/// the output is ordered by n whatever the thread count.
std::vector<WgmReport> verify_order_range(int d, double nu_min, double nu_max,
                                         const std::vector<double>& p_list, unsigned threads = 1);

/// ||Y||_r / max(1, n(n+d-2))^{(d-1)/4} for the zonal harmonic of degree n.
double sogge_ratio(int d, int n, double r);

}  // namespace wgm
