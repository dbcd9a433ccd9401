#include "wgm/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <algorithm>

namespace wgm {

QuadratureRule gauss_legendre(int n)
{
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::fabs(dz) <= 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

QuadratureRule gauss_legendre(int n, double a, double b)
{
    QuadratureRule rule = gauss_legendre(n);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}

namespace {

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel estimate(const std::function<double(double)>& f, double a, double b)
{
    static const QuadratureRule coarse = gauss_legendre(10);
    static const QuadratureRule fine = gauss_legendre(20);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < coarse.nodes.size(); ++i)
        lo += coarse.weights[i] * f(mid + half * coarse.nodes[i]);
    for (std::size_t i = 0; i < fine.nodes.size(); ++i)
        hi += fine.weights[i] * f(mid + half * fine.nodes[i]);
    return {a, b, hi * half, std::fabs(hi - lo) * half};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const AdaptiveOptions& options)
{
    QuadratureResult result;
    if (a == b) {
        result.converged = true;
        return result;
    }
    std::vector<Panel> heap;
    const int start = std::max(1, options.initial_panels);
    const double h = (b - a) / start;
    for (int i = 0; i < start; ++i) {
        const double lo = a + i * h;
        const double hi = i + 1 == start ? b : lo + h;
        heap.push_back(estimate(f, lo, hi));
    }
    std::make_heap(heap.begin(), heap.end());
    int panels = start;
    for (;;) {
        // Re-sum every pass so that cancellation in running totals cannot accumulate.
        double value = 0.0, error = 0.0;
        for (const Panel& p : heap) {
            value += p.value;
            error += p.error;
        }
        result = {value, error, panels, false};
        if (error <= std::max(options.rel_tol * std::fabs(value), options.abs_tol)) {
            result.converged = true;
            return result;
        }
        if (panels >= options.max_panels)
            throw QuadratureError("adaptive quadrature did not reach tolerance", result);
        std::pop_heap(heap.begin(), heap.end());
        const Panel worst = heap.back();
        heap.pop_back();
        const double m = 0.5 * (worst.a + worst.b);
        heap.push_back(estimate(f, worst.a, m));
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(estimate(f, m, worst.b));
        std::push_heap(heap.begin(), heap.end());
        ++panels;
    }
}

}  // namespace wgm
