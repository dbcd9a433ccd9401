#pragma once

// Energies on concentric sub-disks, the boundary-concentration sweep over
// angular degrees, and CSV/SVG emission.

#include "wgm/linear_spectrum.hpp"
#include "wgm/ls_solver.hpp"

#include <functional>
#include <string>
#include <vector>

namespace wgm {

struct EnergyEstimate {
    double value = 0.0;
    double error = 0.0;  // |value(256 radial nodes) - value(128 radial nodes)|
};

/// int_{B_tau} 1/2 |grad u|^2 + F(u), with 128 Gauss-Legendre radii on [0, tau]
/// and gradients from exact coefficient derivatives. Throws QuadratureError when
/// the node-doubling estimate exceeds 1e-7 relative.
double energy(const Field& u, const PotentialSpec& spec, double tau);
EnergyEstimate energy_estimate(const Field& u, const PotentialSpec& spec, double tau);

/// int_{B_tau} 1/2 |grad u|^2 alone.
double dirichlet_energy(const Field& u, double tau);

struct EnergyRow {
    int n = 0;
    double lam_lin = 0.0;
    double lam = 0.0;
    double tau = 0.0;
    double e_tau = 0.0;
    double e_one = 0.0;
    double ratio = 0.0;
    double lin_ratio = 0.0;
    double residual = 0.0;
    std::string error;  // empty on success

    bool ok() const { return error.empty(); }
};

struct SweepOptions {
    std::function<double(int)> delta_rule = [](int) { return 1e-3; };
    int m_max_factor = 3;  // m_max = factor * n
    int k_max = 24;
    double tol_fixed_point = 1e-12;
    int max_iter = 200;
    unsigned threads = 1;
};

/// One row per (n, tau), sorted by n then by position in tau_list. Failed
/// solves produce rows carrying an error message; the sweep continues.
std::vector<EnergyRow> ratio_sweep(const std::vector<int>& n_list, const PotentialSpec& spec,
                                   const std::vector<double>& tau_list, const SweepOptions& options = {});

void emit_csv(const std::vector<EnergyRow>& rows, std::ostream& out);
void emit_csv(const std::vector<EnergyRow>& rows, const std::string& path);

/// Log-scale plot of ratio against n (one polyline per tau, plus the linear ratio).
void emit_svg(const std::vector<EnergyRow>& rows, std::ostream& out);
void emit_svg(const std::vector<EnergyRow>& rows, const std::string& path);

/// One line per (mode, quantity): the gradient energy and each L^p mass.
/// Columns d,n,nu,lambda,tau,zeta,quantity,p,value,bound,margin_log2,pass.
void emit_linear_csv(const std::vector<WgmReport>& reports, std::ostream& out);

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace wgm
