#pragma once

// Bifurcating solutions of -Lap u + f(u) = lambda u on the unit disk near a
// Dirichlet eigenvalue Lambda = j_{n,1}^2, built by Lyapunov-Schmidt reduction.
//
// With u~ = M u the equation becomes -Lap u~ + M f(u~ / M) = lambda u~. In the
// orthonormal eigenbasis this reads (Lambda_e - lambda) c_e + M F_e = 0 with
// F_e = <f(u~ / M), psi_e>. u~ = w + phi is split along the two-dimensional
// eigenspace K (w) and its complement (phi); phi(w) is the fixed point of
//   T(phi)_e = -M F_e / (Lambda_e - lambda),   e outside K,
// and w is a minimiser of the reduced energy J(w) = E(w + phi(w)).

#include "wgm/potential.hpp"
#include "wgm/spectral_field.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace wgm {

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The fixed-point iteration did not settle within max_iter steps.
class FixedPointError : public SolverError {
public:
    using SolverError::SolverError;
};

/// The reduced minimum sits at an end of the search ray.
class BoundaryMinimizerError : public SolverError {
public:
    using SolverError::SolverError;
};

/// b0 pi^{1 - p1/2} / 2^{p1 - 1}: the Hoelder constant of the unit disk
/// divided by 2^{p1 - 1}.
double eta_constant(const PotentialSpec& spec);

/// M = (2 eta / delta)^{1/(p1 - 2)}.
double scale_for_delta(double eta, double delta, double p1);

struct LsConfig {
    int n = 1;
    double delta = 1e-3;
    PotentialSpec spec = PotentialSpec::quartic();
    double tol_fixed_point = 1e-12;
    int max_iter = 200;
    int m_max = 0;  // 0: 3n
    int k_max = 24;
};

struct PhiSolution {
    Field phi;
    std::vector<double> increments;  // H^1 norms of successive updates

    /// Ratios of successive increments over the last five steps (fewer if the run was shorter).
    std::vector<double> tail_ratios() const;
};

struct RayPoint {
    double t = 0.0;
    double value = 0.0;
};

struct MinimizeResult {
    Field w;                  // minimiser in K
    double t_min = 0.0;       // golden-section position on the cos ray
    double j_min = 0.0;       // reduced energy at the polished minimiser
    double j_small = 0.0;     // reduced energy at t = 1e-6
    double j_half = 0.0;      // reduced energy at t = 1/2
    double gradient_norm = 0.0;
    int golden_steps = 0;
    int newton_steps = 0;
    std::vector<RayPoint> trace;
};

struct SplitResiduals {
    double complement = 0.0;  // max |phi_e (1 - lambda/Lambda_e) + M F_e / Lambda_e| off K
    double eigenspace = 0.0;  // max |(1 - lambda/Lambda) w_i + M F_i / Lambda| on K
};

class LsProblem {
public:
    /// Builds the basis (unless one is supplied), the eigenspace of degree n and
    /// the scale M; throws ValidationError when delta is outside (0, gap_guard).
    explicit LsProblem(LsConfig config, BasisPtr basis = nullptr);

    const LsConfig& config() const { return config_; }
    const BasisPtr& basis() const { return basis_; }
    const EigenspaceHandle& eigenspace() const { return handle_; }
    double Lambda() const { return handle_.lam; }
    double lambda() const { return handle_.lam + config_.delta; }
    double eta() const { return eta_; }
    double M() const { return M_; }
    /// Half the distance from Lambda to the nearest other eigenvalue of the basis.
    double gap_guard() const { return gap_guard_; }
    /// min |1 - lambda / Lambda_e| over the complement.
    double coercivity() const;

    Field k_field(double a, double b) const;

    Field apply_A(const Field& phi) const;
    Field apply_A_inv_on_perp(const Field& phi) const;

    /// F_e = <f(u~ / M), psi_e> for every entry.
    Field nonlinear_projection(const Field& u_tilde) const;

    Field contraction_step(const Field& w, const Field& phi) const;
    PhiSolution solve_phi(const Field& w) const;

    double g_tilde(const Field& w) const;
    double r_tilde(const Field& w, const Field& phi) const;
    /// E(u~) = 1/2 sum (Lambda_e - lambda) c_e^2 + M^2 int F(u~ / M).
    double energy(const Field& u_tilde) const;
    double j_tilde(const Field& w) const;

    /// K-coordinates of (Lambda_e - lambda) c_e + M F_e at u~ = w + phi(w).
    std::array<double, 2> reduced_gradient(const Field& w) const;
    std::array<double, 2> reduced_gradient(const Field& w, const Field& phi) const;

    MinimizeResult minimize_reduced() const;

    SplitResiduals split_residuals(const Field& w, const Field& phi) const;

private:
    LsConfig config_;
    BasisPtr basis_;
    EigenspaceHandle handle_;
    double eta_ = 0.0;
    double M_ = 0.0;
    double gap_guard_ = 0.0;
};

struct SolutionDiagnostics {
    double residual_l2 = 0.0;  // ||-Lap u + f(u) - lambda u||_2 / ||lambda u||_2
    double ortho_h1 = 0.0;
    double ortho_l2 = 0.0;
    std::vector<double> contraction_rates;
    double j_tilde_value = 0.0;
    double w_l2 = 0.0;
    double phi_vnorm = 0.0;
    double t_min = 0.0;
    double gradient_norm = 0.0;
    SplitResiduals split;
    int scale_doublings = 0;
};

struct SolutionPair {
    int n = 1;
    double delta = 0.0;  // lambda - Lambda actually used
    double Lambda = 0.0;
    double lam = 0.0;
    double M = 0.0;
    double eta = 0.0;
    Field u;
    Field w;
    Field phi;
    SolutionDiagnostics diagnostics;
};

/// Runs the full pipeline. When the fixed point or the minimiser fails, M is
/// doubled (delta shrinks accordingly) up to six times before giving up.
SolutionPair assemble_solution(const LsConfig& config, BasisPtr basis = nullptr);

/// Metadata line, then the Field text format of u.
void write_solution(std::ostream& out, const SolutionPair& s);

}  // namespace wgm
