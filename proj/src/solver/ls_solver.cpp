#include "wgm/ls_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace wgm {

namespace {

constexpr double kRayStart = 1e-6;
constexpr double kRayEnd = 0.5;
constexpr double kRayTol = 1e-10;
constexpr int kMaxScaleDoublings = 6;

double norm2(const std::array<double, 2>& g)
{
    return std::hypot(g[0], g[1]);
}

GridValues map_values(const GridValues& values, double (*fn)(const PotentialSpec&, double),
                      const PotentialSpec& spec, double inv_scale)
{
    GridValues out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = fn(spec, values[i] * inv_scale);
    return out;
}

}  // namespace

double eta_constant(const PotentialSpec& spec)
{
    const double p1 = spec.p1();
    return spec.b0() * std::pow(std::numbers::pi, 1.0 - 0.5 * p1) / std::pow(2.0, p1 - 1.0);
}

double scale_for_delta(double eta, double delta, double p1)
{
    return std::pow(2.0 * eta / delta, 1.0 / (p1 - 2.0));
}

std::vector<double> PhiSolution::tail_ratios() const
{
    std::vector<double> ratios;
    const std::size_t n = increments.size();
    const std::size_t first = n > 6 ? n - 6 : 0;
    for (std::size_t i = first + 1; i < n; ++i)
        if (increments[i - 1] > 0.0) ratios.push_back(increments[i] / increments[i - 1]);
    return ratios;
}

LsProblem::LsProblem(LsConfig config, BasisPtr basis) : config_(std::move(config))
{
    if (config_.n < 1) throw ValidationError("solve.n must be at least 1");
    if (config_.m_max <= 0) config_.m_max = 3 * config_.n;
    if (config_.m_max < config_.n) throw ValidationError("solve.m_max must be at least n");
    if (config_.k_max < 2) throw ValidationError("solve.k_max must be at least 2");
    if (!(config_.delta > 0.0)) throw ValidationError("solve.delta must be positive");
    if (!(config_.tol_fixed_point > 0.0)) throw ValidationError("solve.tol must be positive");
    if (config_.max_iter < 1) throw ValidationError("solve.max_iter must be positive");

    if (!basis || basis->m_max() != config_.m_max || basis->k_max() != config_.k_max)
        basis = build_basis(config_.m_max, config_.k_max);
    basis_ = std::move(basis);
    handle_ = wgm::eigenspace(*basis_, config_.n);

    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < basis_->size(); ++i)
        if (!handle_.contains(i)) gap = std::min(gap, std::fabs(basis_->entry(i).lam - handle_.lam));
    gap_guard_ = 0.5 * gap;
    if (!(config_.delta < gap_guard_)) {
        std::ostringstream msg;
        msg << "solve.delta = " << config_.delta << " is not below the spectral gap guard " << gap_guard_;
        throw ValidationError(msg.str());
    }
    eta_ = eta_constant(config_.spec);
    M_ = scale_for_delta(eta_, config_.delta, config_.spec.p1());
}

double LsProblem::coercivity() const
{
    double c = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < basis_->size(); ++i)
        if (!handle_.contains(i)) c = std::min(c, std::fabs(1.0 - lambda() / basis_->entry(i).lam));
    return c;
}

Field LsProblem::k_field(double a, double b) const
{
    Field w = Field::zero(basis_);
    w.coeffs[handle_.cos_index] = a;
    w.coeffs[handle_.sin_index] = b;
    return w;
}

Field LsProblem::apply_A(const Field& phi) const
{
    Field out = phi;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i)
        out.coeffs[i] *= 1.0 - lambda() / basis_->entry(i).lam;
    return out;
}

Field LsProblem::apply_A_inv_on_perp(const Field& phi) const
{
    if (phi.coeffs[handle_.cos_index] != 0.0 || phi.coeffs[handle_.sin_index] != 0.0)
        throw std::invalid_argument("apply_A_inv_on_perp: input has a component in the eigenspace");
    Field out = phi;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
        if (handle_.contains(i)) continue;
        const double factor = 1.0 - lambda() / basis_->entry(i).lam;
        if (std::fabs(factor) < 1e-12) throw SolverError("lambda sits on a complement eigenvalue");
        out.coeffs[i] /= factor;
    }
    return out;
}

Field LsProblem::nonlinear_projection(const Field& u_tilde) const
{
    const GridValues values = synth(u_tilde);
    return analyze(map_values(values, f_eval, config_.spec, 1.0 / M_), basis_);
}

Field LsProblem::contraction_step(const Field& w, const Field& phi) const
{
    const Field forcing = nonlinear_projection(w + phi);
    const Field perp = project_Kperp(apply_inv_laplacian(forcing), handle_);
    return (-M_) * apply_A_inv_on_perp(perp);
}

PhiSolution LsProblem::solve_phi(const Field& w) const
{
    PhiSolution sol{Field::zero(basis_), {}};
    for (int it = 0; it < config_.max_iter; ++it) {
        Field next = contraction_step(w, sol.phi);
        const double inc = norm_h1(next - sol.phi);
        sol.phi = std::move(next);
        sol.increments.push_back(inc);
        if (!std::isfinite(inc) || inc > 1e12) throw FixedPointError("fixed-point iteration diverged");
        if (inc <= config_.tol_fixed_point) {
            for (double r : sol.tail_ratios())
                if (r > 0.95) throw FixedPointError("fixed-point increments did not decay geometrically");
            return sol;
        }
    }
    std::ostringstream msg;
    msg << "fixed-point iteration did not converge in " << config_.max_iter << " steps (last increment "
        << sol.increments.back() << ")";
    throw FixedPointError(msg.str());
}

double LsProblem::g_tilde(const Field& w) const
{
    const GridValues values = synth(w);
    const double nonlinear = grid_integral(*basis_, map_values(values, F_eval, config_.spec, 1.0 / M_));
    return 0.5 * (Lambda() - lambda()) * inner_l2(w, w) + M_ * M_ * nonlinear;
}

double LsProblem::r_tilde(const Field& w, const Field& phi) const
{
    double quad = 0.0;
    for (std::size_t i = 0; i < phi.coeffs.size(); ++i)
        if (!handle_.contains(i)) quad += (basis_->entry(i).lam - lambda()) * phi.coeffs[i] * phi.coeffs[i];
    const GridValues full = map_values(synth(w + phi), F_eval, config_.spec, 1.0 / M_);
    const GridValues base = map_values(synth(w), F_eval, config_.spec, 1.0 / M_);
    GridValues diff(full.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = full[i] - base[i];
    return 0.5 * quad + M_ * M_ * grid_integral(*basis_, diff);
}

double LsProblem::energy(const Field& u_tilde) const
{
    double quad = 0.0;
    for (std::size_t i = 0; i < u_tilde.coeffs.size(); ++i)
        quad += (basis_->entry(i).lam - lambda()) * u_tilde.coeffs[i] * u_tilde.coeffs[i];
    const GridValues values = synth(u_tilde);
    return 0.5 * quad + M_ * M_ * grid_integral(*basis_, map_values(values, F_eval, config_.spec, 1.0 / M_));
}

double LsProblem::j_tilde(const Field& w) const
{
    return energy(w + solve_phi(w).phi);
}

std::array<double, 2> LsProblem::reduced_gradient(const Field& w) const
{
    return reduced_gradient(w, solve_phi(w).phi);
}

std::array<double, 2> LsProblem::reduced_gradient(const Field& w, const Field& phi) const
{
    const Field F = nonlinear_projection(w + phi);
    const double shift = Lambda() - lambda();
    return {shift * w.coeffs[handle_.cos_index] + M_ * F.coeffs[handle_.cos_index],
            shift * w.coeffs[handle_.sin_index] + M_ * F.coeffs[handle_.sin_index]};
}

MinimizeResult LsProblem::minimize_reduced() const
{
    MinimizeResult res;
    auto along_ray = [&](double t) {
        const double v = j_tilde(k_field(t, 0.0));
        res.trace.push_back({t, v});
        return v;
    };

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = kRayStart, b = kRayEnd;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = along_ray(c), fd = along_ray(d);
    while (b - a > kRayTol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = along_ray(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = along_ray(d);
        }
        ++res.golden_steps;
    }
    res.t_min = 0.5 * (a + b);
    res.j_small = along_ray(kRayStart);
    res.j_half = along_ray(kRayEnd);
    const double j_ray = along_ray(res.t_min);
    if (!(res.t_min > kRayStart + 1e-6 && res.t_min < kRayEnd - 1e-6) ||
        !(j_ray < std::min(res.j_small, res.j_half))) {
        std::ostringstream msg;
        msg << "reduced energy is minimised at the end of the search ray (t = " << res.t_min << ")";
        throw BoundaryMinimizerError(msg.str());
    }

    // Damped Newton on the two K coordinates. The minimisers form a circle, so the
    // Hessian is singular along the rotation direction; that direction is skipped.
    std::array<double, 2> x{res.t_min, 0.0};
    auto grad_at = [&](const std::array<double, 2>& p) { return reduced_gradient(k_field(p[0], p[1])); };
    std::array<double, 2> g = grad_at(x);
    const double target = 1e-12 * std::pow(M_, 2.0 - config_.spec.p1());
    for (int step = 0; step < 8 && norm2(g) > target; ++step) {
        const double h = 1e-6 * std::hypot(x[0], x[1]);
        double H[2][2];
        for (int j = 0; j < 2; ++j) {
            std::array<double, 2> xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            const auto gp = grad_at(xp), gm = grad_at(xm);
            H[0][j] = (gp[0] - gm[0]) / (2.0 * h);
            H[1][j] = (gp[1] - gm[1]) / (2.0 * h);
        }
        const double off = 0.5 * (H[0][1] + H[1][0]);
        const double tr = H[0][0] + H[1][1];
        const double disc = std::hypot(H[0][0] - H[1][1], 2.0 * off);
        const double mu[2] = {0.5 * (tr + disc), 0.5 * (tr - disc)};
        const double angle = 0.5 * std::atan2(2.0 * off, H[0][0] - H[1][1]);
        const double v[2][2] = {{std::cos(angle), std::sin(angle)}, {-std::sin(angle), std::cos(angle)}};
        const double scale = std::max(std::fabs(mu[0]), std::fabs(mu[1]));
        std::array<double, 2> s{0.0, 0.0};
        for (int i = 0; i < 2; ++i) {
            if (std::fabs(mu[i]) <= 1e-8 * scale) continue;
            const double coef = (v[i][0] * g[0] + v[i][1] * g[1]) / mu[i];
            s[0] -= coef * v[i][0];
            s[1] -= coef * v[i][1];
        }
        bool accepted = false;
        for (double alpha = 1.0; alpha > 1e-3; alpha *= 0.5) {
            const std::array<double, 2> trial{x[0] + alpha * s[0], x[1] + alpha * s[1]};
            const auto gt = grad_at(trial);
            if (norm2(gt) < norm2(g)) {
                x = trial;
                g = gt;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        ++res.newton_steps;
    }
    res.w = k_field(x[0], x[1]);
    res.gradient_norm = norm2(g);
    res.j_min = j_tilde(res.w);
    return res;
}

SplitResiduals LsProblem::split_residuals(const Field& w, const Field& phi) const
{
    const Field F = nonlinear_projection(w + phi);
    SplitResiduals r;
    for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
        const double lam_e = basis_->entry(i).lam;
        if (handle_.contains(i)) {
            const double v = (1.0 - lambda() / Lambda()) * w.coeffs[i] + M_ * F.coeffs[i] / Lambda();
            r.eigenspace = std::max(r.eigenspace, std::fabs(v));
        } else {
            const double v = phi.coeffs[i] * (1.0 - lambda() / lam_e) + M_ * F.coeffs[i] / lam_e;
            r.complement = std::max(r.complement, std::fabs(v));
        }
    }
    return r;
}

SolutionPair assemble_solution(const LsConfig& config, BasisPtr basis)
{
    LsConfig cfg = config;
    int doublings = 0;
    for (;;) {
        try {
            const LsProblem prob(cfg, basis);
            basis = prob.basis();
            const MinimizeResult min = prob.minimize_reduced();
            const PhiSolution phi = prob.solve_phi(min.w);

            SolutionPair s;
            s.n = cfg.n;
            s.delta = cfg.delta;
            s.Lambda = prob.Lambda();
            s.lam = prob.lambda();
            s.M = prob.M();
            s.eta = prob.eta();
            const Field u_tilde = min.w + phi.phi;
            s.u = (1.0 / s.M) * u_tilde;
            const double back = std::pow(2.0 * s.eta, -1.0 / (cfg.spec.p1() - 2.0));
            s.w = back * min.w;
            s.phi = back * phi.phi;

            SolutionDiagnostics& d = s.diagnostics;
            const GridValues values = synth(s.u);
            const Field F = analyze(map_values(values, f_eval, cfg.spec, 1.0), basis);
            double res2 = 0.0;
            for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
                const double r = (basis->entry(i).lam - s.lam) * s.u.coeffs[i] + F.coeffs[i];
                res2 += r * r;
            }
            d.residual_l2 = std::sqrt(res2) / (s.lam * norm_l2(s.u));
            d.ortho_h1 = std::fabs(inner_h1(s.w, s.phi));
            d.ortho_l2 = std::fabs(inner_l2(s.w, s.phi));
            for (std::size_t i = 1; i < phi.increments.size(); ++i)
                if (phi.increments[i - 1] > 0.0)
                    d.contraction_rates.push_back(phi.increments[i] / phi.increments[i - 1]);
            d.j_tilde_value = min.j_min;
            d.w_l2 = norm_l2(s.w);
            d.phi_vnorm = norm_V(s.phi, SobolevExponent{2, std::nullopt});
            d.t_min = min.t_min;
            d.gradient_norm = min.gradient_norm;
            d.split = prob.split_residuals(min.w, phi.phi);
            d.scale_doublings = doublings;
            return s;
        } catch (const FixedPointError&) {
            if (doublings == kMaxScaleDoublings) throw;
        } catch (const BoundaryMinimizerError&) {
            if (doublings == kMaxScaleDoublings) throw;
        }
        ++doublings;
        const double eta = eta_constant(cfg.spec);
        const double M = 2.0 * scale_for_delta(eta, cfg.delta, cfg.spec.p1());
        cfg.delta = 2.0 * eta * std::pow(M, 2.0 - cfg.spec.p1());
    }
}

void write_solution(std::ostream& out, const SolutionPair& s)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, "%d %.17g %.17g %.17g %.17g %.17g %.17g\n", s.n, s.delta, s.lam, s.M,
                  s.eta, s.diagnostics.residual_l2, s.diagnostics.ortho_h1);
    out << "# n delta lambda M eta residual ortho\n" << buf;
    write_field(out, s.u);
}

}  // namespace wgm
