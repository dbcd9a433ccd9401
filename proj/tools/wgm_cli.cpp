// wgm: command-line driver for the Bessel, linear-mode, nonlinear-solve and
// sweep machinery.
//
// Exit codes: 0 success, 1 computation failure, 2 usage or validation error.

#include "wgm/linear_spectrum.hpp"
#include "wgm/ls_solver.hpp"
#include "wgm/potential.hpp"
#include "wgm/report.hpp"
#include "wgm/run_config.hpp"
#include "wgm/specfun.hpp"
#include "wgm/spectral_field.hpp"

#include "suites.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>
#include <thread>

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

// Thrown for bad flag values that CLI11 cannot catch on its own.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fmt17(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    body(out);
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

int cmd_bessel(double nu, double x)
{
    wgm::Order order(0);
    try {
        order = wgm::Order::from_value(nu);
    } catch (const wgm::DomainError& e) {
        throw UsageError(e.what());
    }
    if (!(x >= 0.0) || x > wgm::argument_guard(order))
        throw UsageError("--x must lie in [0, " + fmt17(wgm::argument_guard(order)) + "] for this order");
    const wgm::BesselPair p = wgm::bessel_j_scaled(order, x);
    std::cout << fmt17(p.j.value()) << ' ' << fmt17(p.j_prime.value()) << '\n';
    return kOk;
}

int cmd_zeros(double nu, int count)
{
    wgm::Order order(0);
    try {
        order = wgm::Order::from_value(nu);
    } catch (const wgm::DomainError& e) {
        throw UsageError(e.what());
    }
    if (count < 1) throw UsageError("--count must be at least 1");
    for (double z : wgm::zeros(order, count)) std::cout << fmt17(z) << '\n';
    return kOk;
}

int cmd_linear_verify(const wgm::RunConfig& cfg, const std::string& out_path, unsigned threads)
{
    const wgm::LinearSection& lin = cfg.linear;
    const std::vector<wgm::WgmReport> reports =
        wgm::verify_order_range(lin.d, lin.nu_min, lin.nu_max, lin.p_list, threads);
    if (out_path.empty()) {
        wgm::emit_linear_csv(reports, std::cout);
    } else {
        write_file(out_path, [&](std::ostream& o) { wgm::emit_linear_csv(reports, o); });
    }
    int failures = 0;
    for (const wgm::WgmReport& r : reports)
        if (r.nu.value() >= 100.0 && !r.pass()) ++failures;
    std::cerr << reports.size() << " modes checked, " << failures << " failing with nu >= 100\n";
    return failures == 0 ? kOk : kFailure;
}

int cmd_solve(const wgm::RunConfig& cfg, const std::string& prefix)
{
    wgm::LsConfig ls;
    ls.n = cfg.solve.n;
    ls.delta = cfg.solve.delta;
    ls.spec = cfg.potential;
    ls.m_max = cfg.solve.m_max;
    ls.k_max = cfg.solve.k_max;
    ls.tol_fixed_point = cfg.solve.tol;
    ls.max_iter = cfg.solve.max_iter;
    const wgm::SolutionPair s = wgm::assemble_solution(ls);
    const wgm::SolutionDiagnostics& d = s.diagnostics;

    write_file(prefix + ".u.txt", [&](std::ostream& o) { wgm::write_solution(o, s); });
    write_file(prefix + ".w.txt", [&](std::ostream& o) { wgm::write_field(o, s.w); });
    write_file(prefix + ".phi.txt", [&](std::ostream& o) { wgm::write_field(o, s.phi); });

    std::cout << "n " << s.n << '\n'
              << "Lambda " << fmt17(s.Lambda) << '\n'
              << "lambda " << fmt17(s.lam) << '\n'
              << "delta " << fmt17(s.delta) << '\n'
              << "M " << fmt17(s.M) << '\n'
              << "eta " << fmt17(s.eta) << '\n'
              << "residual " << fmt17(d.residual_l2) << '\n'
              << "ortho_l2 " << fmt17(d.ortho_l2) << '\n'
              << "ortho_h1 " << fmt17(d.ortho_h1) << '\n'
              << "w_l2 " << fmt17(d.w_l2) << '\n'
              << "phi_V " << fmt17(d.phi_vnorm) << '\n'
              << "j_tilde " << fmt17(d.j_tilde_value) << '\n'
              << "reduced_gradient " << fmt17(d.gradient_norm) << '\n'
              << "scale_doublings " << d.scale_doublings << '\n'
              << "contraction_rates";
    for (double r : d.contraction_rates) std::cout << ' ' << fmt17(r);
    std::cout << '\n';
    return d.residual_l2 <= 1e-8 ? kOk : kFailure;
}

int cmd_sweep(const wgm::RunConfig& cfg, const std::string& csv_path, const std::string& svg_path,
              unsigned threads)
{
    wgm::SweepOptions opt;
    const double delta = cfg.sweep.delta;
    opt.delta_rule = [delta](int) { return delta; };
    opt.threads = threads;
    const std::vector<wgm::EnergyRow> rows =
        wgm::ratio_sweep(cfg.sweep.n_list, cfg.potential, cfg.sweep.tau_list, opt);
    if (csv_path.empty())
        wgm::emit_csv(rows, std::cout);
    else
        wgm::emit_csv(rows, csv_path);
    if (!svg_path.empty()) wgm::emit_svg(rows, svg_path);
    int failed = 0;
    for (const wgm::EnergyRow& r : rows) {
        if (r.ok()) continue;
        ++failed;
        std::cerr << "n=" << r.n << " tau=" << r.tau << ": " << r.error << '\n';
    }
    return failed == 0 ? kOk : kFailure;
}

int cmd_oracle(const std::string& name)
{
    wgm::oracle::SuiteReport report;
    try {
        report = wgm::oracle::run_suite(name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    for (const auto& c : report.items)
        std::cout << (c.pass ? "ok   " : "FAIL ") << c.label << " expected=" << fmt17(c.expected)
                  << " actual=" << fmt17(c.actual) << " error=" << fmt17(c.error) << '\n';
    std::cout << report.name << ": " << report.passed() << '/' << report.items.size()
              << " passed, worst error " << fmt17(report.worst_error()) << '\n';
    return report.all_passed() ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Whispering-gallery modes of the unit ball: Bessel tools, linear checks, nonlinear solves"};
    app.require_subcommand(1);

    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    app.add_option("--threads", threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);

    double nu = 0.0, x = 0.0;
    int count = 1;
    std::string config, out, csv, svg, suite;

    CLI::App* bessel = app.add_subcommand("bessel", "Print J_nu(x) and J_nu'(x)");
    bessel->add_option("--nu", nu, "Order (integer or half-integer)")->required();
    bessel->add_option("--x", x, "Argument")->required();

    CLI::App* zeros = app.add_subcommand("zeros", "Print the first zeros of J_nu");
    zeros->add_option("--nu", nu, "Order (integer or half-integer)")->required();
    zeros->add_option("--count", count, "Number of zeros")->required();

    CLI::App* linear = app.add_subcommand("linear-verify", "Check inner decay of ball modes over an order range");
    linear->add_option("--config", config, "Run configuration (JSON)")->required();
    linear->add_option("--out", out, "CSV output path (default: standard output)");

    CLI::App* solve = app.add_subcommand("solve", "Solve the nonlinear problem near one eigenvalue");
    solve->add_option("--config", config, "Run configuration (JSON)")->required();
    solve->add_option("--out", out, "Prefix for the solution files")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "Sub-disk energy ratios over angular degrees");
    sweep->add_option("--config", config, "Run configuration (JSON)")->required();
    sweep->add_option("--csv", csv, "CSV output path (default: standard output)");
    sweep->add_option("--svg", svg, "SVG plot output path");

    CLI::App* oracle = app.add_subcommand("oracle", "Run an independent cross-check suite");
    oracle->add_option("--suite", suite, "Suite name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (bessel->parsed()) return cmd_bessel(nu, x);
        if (zeros->parsed()) return cmd_zeros(nu, count);
        if (oracle->parsed()) return cmd_oracle(suite);
        const wgm::RunConfig cfg = wgm::load_run_config(config);
        if (linear->parsed()) return cmd_linear_verify(cfg, out, threads);
        if (solve->parsed()) return cmd_solve(cfg, out);
        if (sweep->parsed()) return cmd_sweep(cfg, csv, svg, threads);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const wgm::ValidationError& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "computation failed: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}
