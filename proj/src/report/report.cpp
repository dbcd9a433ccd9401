#include "wgm/report.hpp"

#include "wgm/linear_spectrum.hpp"
#include "wgm/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace wgm {

namespace {

constexpr int kRadialNodes = 128;

struct EnergyParts {
    double dirichlet = 0.0;
    double potential = 0.0;
};

EnergyParts energy_parts(const Field& u, const PotentialSpec* spec, double tau, int radial_nodes)
{
    if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("energy: tau must lie in (0, 1]");
    const BasisTable& b = *u.basis;
    const int n_theta = std::max(b.n_theta(), 4 * b.m_max() + 4);
    const QuadratureRule rule = gauss_legendre(radial_nodes, 0.0, tau);
    const GradientSample g = sample_with_gradient(u, rule.nodes, n_theta);
    const double aw = 2.0 * std::numbers::pi / n_theta;
    EnergyParts parts;
    for (int i = 0; i < radial_nodes; ++i) {
        double grad = 0.0, pot = 0.0;
        for (int l = 0; l < n_theta; ++l) {
            const std::size_t k = static_cast<std::size_t>(i) * n_theta + l;
            grad += g.u_r[k] * g.u_r[k] + g.u_theta[k] * g.u_theta[k];
            if (spec) pot += F_eval(*spec, g.u[k]);
        }
        const double w = rule.weights[i] * rule.nodes[i] * aw;
        parts.dirichlet += 0.5 * grad * w;
        parts.potential += pot * w;
    }
    return parts;
}

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

EnergyEstimate energy_estimate(const Field& u, const PotentialSpec& spec, double tau)
{
    const EnergyParts coarse = energy_parts(u, &spec, tau, kRadialNodes);
    const EnergyParts fine = energy_parts(u, &spec, tau, 2 * kRadialNodes);
    const double a = coarse.dirichlet + coarse.potential;
    const double b = fine.dirichlet + fine.potential;
    return {a, std::fabs(b - a)};
}

double energy(const Field& u, const PotentialSpec& spec, double tau)
{
    const EnergyEstimate e = energy_estimate(u, spec, tau);
    if (e.error > 1e-7 * std::fabs(e.value) && e.error > std::numeric_limits<double>::min()) {
        QuadratureResult achieved{e.value, e.error, 2 * kRadialNodes, false};
        throw QuadratureError("sub-disk energy missed its node-doubling tolerance", achieved);
    }
    return e.value;
}

double dirichlet_energy(const Field& u, double tau)
{
    return energy_parts(u, nullptr, tau, kRadialNodes).dirichlet;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn)
{
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) fn(i);
        });
    for (std::thread& th : pool) th.join();
}

std::vector<EnergyRow> ratio_sweep(const std::vector<int>& n_list, const PotentialSpec& spec,
                                   const std::vector<double>& tau_list, const SweepOptions& options)
{
    std::vector<int> ns = n_list;
    std::sort(ns.begin(), ns.end());
    std::vector<std::vector<EnergyRow>> per_n(ns.size());
    parallel_for(ns.size(), options.threads, [&](std::size_t idx) {
        const int n = ns[idx];
        std::vector<EnergyRow>& rows = per_n[idx];
        for (double tau : tau_list) {
            EnergyRow row;
            row.n = n;
            row.tau = tau;
            rows.push_back(row);
        }
        try {
            const BallMode lin = mode(2, n);
            const double lin_one = grad_energy(lin, 1.0);
            for (EnergyRow& row : rows) {
                row.lam_lin = lin.lam;
                row.lin_ratio = grad_energy(lin, row.tau) / lin_one;
            }
            LsConfig cfg;
            cfg.n = n;
            cfg.delta = options.delta_rule(n);
            cfg.spec = spec;
            cfg.m_max = options.m_max_factor * n;
            cfg.k_max = options.k_max;
            cfg.tol_fixed_point = options.tol_fixed_point;
            cfg.max_iter = options.max_iter;
            const SolutionPair sol = assemble_solution(cfg);
            const double e_one = energy(sol.u, spec, 1.0);
            for (EnergyRow& row : rows) {
                row.lam = sol.lam;
                row.residual = sol.diagnostics.residual_l2;
                row.e_one = e_one;
                row.e_tau = row.tau == 1.0 ? e_one : energy(sol.u, spec, row.tau);
                row.ratio = row.e_tau / row.e_one;
            }
        } catch (const std::exception& e) {
            for (EnergyRow& row : rows) row.error = e.what();
        }
    });
    std::vector<EnergyRow> out;
    for (const auto& rows : per_n) out.insert(out.end(), rows.begin(), rows.end());
    return out;
}

void emit_csv(const std::vector<EnergyRow>& rows, std::ostream& out)
{
    out << "n,lambda_lin,lambda,tau,E_tau,E_1,ratio,lin_ratio,residual\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const EnergyRow& r : rows) {
        const bool ok = r.ok();
        out << r.n << ',' << format_number(r.lam_lin) << ',' << format_number(ok ? r.lam : nan) << ','
            << format_number(r.tau) << ',' << format_number(ok ? r.e_tau : nan) << ','
            << format_number(ok ? r.e_one : nan) << ',' << format_number(ok ? r.ratio : nan) << ','
            << format_number(r.lin_ratio) << ',' << format_number(ok ? r.residual : nan) << '\n';
    }
}

void emit_csv(const std::vector<EnergyRow>& rows, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    emit_csv(rows, out);
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void emit_linear_csv(const std::vector<WgmReport>& reports, std::ostream& out)
{
    out << "d,n,nu,lambda,tau,zeta,quantity,p,value,bound,margin_log2,pass\n";
    for (const WgmReport& r : reports) {
        const std::string head = std::to_string(r.d) + ',' + std::to_string(r.n) + ',' +
                                 format_number(r.nu.value()) + ',' + format_number(r.lam) + ',' +
                                 format_number(r.tau) + ',' + format_number(r.zeta) + ',';
        out << head << "grad,," << format_number(r.grad_energy_inner) << ',' << format_number(r.grad_bound)
            << ',' << format_number(r.grad_margin) << ',' << (r.grad_pass ? 1 : 0) << '\n';
        for (const LpEntry& e : r.lp_entries)
            out << head << "lp," << format_number(e.p) << ',' << format_number(e.mass_inner) << ','
                << format_number(e.bound) << ',' << format_number(e.margin) << ',' << (e.pass ? 1 : 0) << '\n';
    }
}

void emit_svg(const std::vector<EnergyRow>& rows, std::ostream& out)
{
    constexpr double width = 800, height = 600;
    constexpr double left = 80, right = 40, top = 40, bottom = 60;

    std::vector<double> taus;
    double n_lo = std::numeric_limits<double>::infinity(), n_hi = -n_lo;
    double y_lo = n_lo, y_hi = -n_lo;
    auto consider = [&](double v) {
        if (v > 0.0 && std::isfinite(v)) {
            y_lo = std::min(y_lo, std::log10(v));
            y_hi = std::max(y_hi, std::log10(v));
        }
    };
    for (const EnergyRow& r : rows) {
        if (std::find(taus.begin(), taus.end(), r.tau) == taus.end()) taus.push_back(r.tau);
        n_lo = std::min(n_lo, static_cast<double>(r.n));
        n_hi = std::max(n_hi, static_cast<double>(r.n));
        if (r.ok()) consider(r.ratio);
        consider(r.lin_ratio);
    }
    if (!std::isfinite(n_lo)) n_lo = 0, n_hi = 1;
    if (n_hi == n_lo) n_hi = n_lo + 1;
    if (!std::isfinite(y_lo)) y_lo = -1, y_hi = 0;
    y_lo = std::floor(y_lo);
    y_hi = std::ceil(y_hi);
    if (y_hi == y_lo) y_hi = y_lo + 1;

    auto px = [&](double n) { return left + (n - n_lo) / (n_hi - n_lo) * (width - left - right); };
    auto py = [&](double v) { return top + (y_hi - std::log10(v)) / (y_hi - y_lo) * (height - top - bottom); };
    char buf[256];

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<path d=\"M %.2f %.2f L %.2f %.2f L %.2f %.2f\" fill=\"none\" stroke=\"black\"/>\n", left,
                  top, left, height - bottom, width - right, height - bottom);
    out << buf;
    for (int e = static_cast<int>(y_lo); e <= static_cast<int>(y_hi); ++e) {
        const double y = py(std::pow(10.0, e));
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" text-anchor=\"end\">1e%d</text>\n", left - 6,
                      y + 4, e);
        out << buf;
    }
    for (const EnergyRow& r : rows) {
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" text-anchor=\"middle\">%d</text>\n", px(r.n),
                      height - bottom + 18, r.n);
        out << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"14\" text-anchor=\"middle\">angular degree n</text>\n",
                  0.5 * (left + width - right), height - 15);
    out << buf;
    out << "<text x=\"20\" y=\"30\" font-size=\"14\">E_tau / E_1 (log scale)</text>\n";

    static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    for (std::size_t t = 0; t < taus.size(); ++t) {
        for (int linear = 0; linear < 2; ++linear) {
            std::string points;
            for (const EnergyRow& r : rows) {
                if (r.tau != taus[t]) continue;
                const double v = linear ? r.lin_ratio : (r.ok() ? r.ratio : 0.0);
                if (!(v > 0.0) || !std::isfinite(v)) continue;
                std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(r.n), py(v));
                points += buf;
            }
            if (points.empty()) continue;
            points.pop_back();
            out << "<polyline fill=\"none\" stroke=\"" << colours[t % 5] << "\" stroke-width=\"2\""
                << (linear ? " stroke-dasharray=\"6,4\"" : "") << " points=\"" << points << "\"/>\n";
        }
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" fill=\"%s\">tau = %g (dashed: linear mode)</text>\n",
                      width - right - 260, top + 16.0 * (t + 1), colours[t % 5], taus[t]);
        out << buf;
    }
    // Shape 2^{-Lambda^{1/6}/5}, anchored at the first plotted ratio with tau < 1.
    for (const EnergyRow& anchor : rows) {
        if (!anchor.ok() || anchor.tau >= 1.0 || !(anchor.ratio > 0.0)) continue;
        auto shape = [](double lam) { return std::exp2(-std::pow(lam, 1.0 / 6.0) / 5.0); };
        const double scale = anchor.ratio / shape(anchor.lam_lin);
        std::string points;
        for (const EnergyRow& r : rows) {
            if (r.tau != anchor.tau) continue;
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(r.n), py(scale * shape(r.lam_lin)));
            points += buf;
        }
        points.pop_back();
        out << "<polyline fill=\"none\" stroke=\"gray\" stroke-dasharray=\"2,3\" points=\"" << points << "\"/>\n";
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" fill=\"gray\">reference shape 2^(-Lambda^(1/6)/5)</text>\n",
                      width - right - 260, top + 16.0 * (taus.size() + 1));
        out << buf;
        break;
    }
    out << "</svg>\n";
}

void emit_svg(const std::vector<EnergyRow>& rows, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    emit_svg(rows, out);
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace wgm
