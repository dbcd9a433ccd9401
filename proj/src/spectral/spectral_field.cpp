#include "wgm/spectral_field.hpp"

#include "wgm/quadrature.hpp"
#include "wgm/specfun.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace wgm {

namespace {

double norm_constant(int m, double j)
{
    const double jn = bessel_j(Order::integer(m + 1), j);
    const double angular = m == 0 ? 2.0 * std::numbers::pi : std::numbers::pi;
    return 1.0 / std::sqrt(0.5 * jn * jn * angular);
}

void require_same_basis(const Field& a, const Field& b)
{
    if (a.basis != b.basis || a.coeffs.size() != b.coeffs.size())
        throw std::invalid_argument("fields live on different bases");
}

}  // namespace

BasisTable::BasisTable(int m_max, int k_max, GridOptions grid) : m_max_(m_max), k_max_(k_max)
{
    if (m_max < 1 || k_max < 1) throw std::invalid_argument("basis needs m_max >= 1 and k_max >= 1");
    const int n_r = grid.n_r > 0 ? grid.n_r : std::max(64, 4 * k_max);
    n_theta_ = grid.n_theta > 0 ? grid.n_theta : std::max(64, 4 * m_max);

    zeros_.resize(m_max + 1);
    std::vector<std::vector<double>> norms(m_max + 1);
    for (int m = 0; m <= m_max; ++m) {
        zeros_[m] = zeros(Order::integer(m), k_max);
        for (int k = 1; k <= k_max; ++k) norms[m].push_back(norm_constant(m, zeros_[m][k - 1]));
    }
    for (int m = 0; m <= m_max; ++m) {
        for (Parity parity : {Parity::cosine, Parity::sine}) {
            if (m == 0 && parity == Parity::sine) continue;
            for (int k = 1; k <= k_max; ++k) {
                const double j = zeros_[m][k - 1];
                entries_.push_back({m, parity, k, j * j, norms[m][k - 1]});
            }
        }
    }

    const QuadratureRule rule = gauss_legendre(n_r, 0.0, 1.0);
    radii_ = rule.nodes;
    radial_weights_.resize(n_r);
    for (int i = 0; i < n_r; ++i) radial_weights_[i] = rule.weights[i] * radii_[i];

    radial_.resize(static_cast<std::size_t>(m_max + 1) * k_max * n_r);
    for (int m = 0; m <= m_max; ++m) {
        const Order order = Order::integer(m);
        for (int k = 1; k <= k_max; ++k) {
            const double j = zeros_[m][k - 1];
            for (int i = 0; i < n_r; ++i)
                radial_[(static_cast<std::size_t>(m) * k_max + (k - 1)) * n_r + i] =
                    norms[m][k - 1] * bessel_j(order, j * radii_[i]);
        }
    }

    cos_.resize(static_cast<std::size_t>(m_max + 1) * n_theta_);
    sin_.resize(cos_.size());
    for (int m = 0; m <= m_max; ++m) {
        for (int l = 0; l < n_theta_; ++l) {
            // Reduce m*l modulo n_theta so the angle stays exact for large products.
            const double a = 2.0 * std::numbers::pi * ((static_cast<long>(m) * l) % n_theta_) / n_theta_;
            cos_[static_cast<std::size_t>(m) * n_theta_ + l] = std::cos(a);
            sin_[static_cast<std::size_t>(m) * n_theta_ + l] = std::sin(a);
        }
    }
}

std::size_t BasisTable::index(int m, Parity parity, int k) const
{
    if (m < 0 || m > m_max_ || k < 1 || k > k_max_ || (m == 0 && parity == Parity::sine))
        throw std::out_of_range("basis entry not present");
    // m = 0 has k_max entries, every later m has 2 k_max.
    std::size_t base = m == 0 ? 0 : static_cast<std::size_t>(k_max_) * (2 * m - 1);
    if (parity == Parity::sine) base += k_max_;
    return base + (k - 1);
}

double BasisTable::theta(int l) const
{
    return 2.0 * std::numbers::pi * l / n_theta_;
}

double BasisTable::angular_weight() const
{
    return 2.0 * std::numbers::pi / n_theta_;
}

BasisPtr build_basis(int m_max, int k_max, GridOptions grid)
{
    return std::make_shared<const BasisTable>(m_max, k_max, grid);
}

Field Field::zero(BasisPtr basis)
{
    const std::size_t n = basis->size();
    return {std::move(basis), std::vector<double>(n, 0.0)};
}

GridValues synth(const Field& field)
{
    const BasisTable& b = *field.basis;
    if (field.coeffs.size() != b.size()) throw std::invalid_argument("synth: coefficient count mismatch");
    const int nr = b.n_r(), nt = b.n_theta(), K = b.k_max();
    GridValues out(b.grid_size(), 0.0);
    std::vector<double> profile(nr);
    for (int m = 0; m <= b.m_max(); ++m) {
        for (Parity parity : {Parity::cosine, Parity::sine}) {
            if (m == 0 && parity == Parity::sine) continue;
            const std::size_t base = b.index(m, parity, 1);
            std::fill(profile.begin(), profile.end(), 0.0);
            bool any = false;
            for (int k = 1; k <= K; ++k) {
                const double c = field.coeffs[base + k - 1];
                if (c == 0.0) continue;
                any = true;
                for (int i = 0; i < nr; ++i) profile[i] += c * b.radial_value(m, k, i);
            }
            if (!any) continue;
            for (int i = 0; i < nr; ++i) {
                double* row = &out[static_cast<std::size_t>(i) * nt];
                const double p = profile[i];
                if (parity == Parity::cosine)
                    for (int l = 0; l < nt; ++l) row[l] += p * b.cos_value(m, l);
                else
                    for (int l = 0; l < nt; ++l) row[l] += p * b.sin_value(m, l);
            }
        }
    }
    return out;
}

Field analyze(const GridValues& values, BasisPtr basis)
{
    const BasisTable& b = *basis;
    if (values.size() != b.grid_size()) throw std::invalid_argument("analyze: grid size mismatch");
    const int nr = b.n_r(), nt = b.n_theta(), K = b.k_max();
    Field out = Field::zero(basis);
    std::vector<double> moment(nr);
    const double aw = b.angular_weight();
    for (int m = 0; m <= b.m_max(); ++m) {
        for (Parity parity : {Parity::cosine, Parity::sine}) {
            if (m == 0 && parity == Parity::sine) continue;
            for (int i = 0; i < nr; ++i) {
                const double* row = &values[static_cast<std::size_t>(i) * nt];
                double s = 0.0;
                if (parity == Parity::cosine)
                    for (int l = 0; l < nt; ++l) s += row[l] * b.cos_value(m, l);
                else
                    for (int l = 0; l < nt; ++l) s += row[l] * b.sin_value(m, l);
                moment[i] = s * aw * b.radial_weights()[i];
            }
            const std::size_t base = b.index(m, parity, 1);
            for (int k = 1; k <= K; ++k) {
                double s = 0.0;
                for (int i = 0; i < nr; ++i) s += moment[i] * b.radial_value(m, k, i);
                out.coeffs[base + k - 1] = s;
            }
        }
    }
    return out;
}

double grid_integral(const BasisTable& b, const GridValues& g)
{
    if (g.size() != b.grid_size()) throw std::invalid_argument("grid_integral: grid size mismatch");
    const int nt = b.n_theta();
    double total = 0.0;
    for (int i = 0; i < b.n_r(); ++i) {
        double s = 0.0;
        for (int l = 0; l < nt; ++l) s += g[static_cast<std::size_t>(i) * nt + l];
        total += s * b.radial_weights()[i];
    }
    return total * b.angular_weight();
}

Field apply_inv_laplacian(const Field& field)
{
    Field out = field;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] /= field.basis->entry(i).lam;
    return out;
}

EigenspaceHandle eigenspace(const BasisTable& basis, int n)
{
    if (n < 1 || n > basis.m_max()) throw std::invalid_argument("eigenspace degree outside the basis");
    EigenspaceHandle h;
    h.n = n;
    h.cos_index = basis.index(n, Parity::cosine, 1);
    h.sin_index = basis.index(n, Parity::sine, 1);
    h.lam = basis.entry(h.cos_index).lam;
    return h;
}

Field project_K(const Field& field, const EigenspaceHandle& handle)
{
    Field out = Field::zero(field.basis);
    out.coeffs[handle.cos_index] = field.coeffs[handle.cos_index];
    out.coeffs[handle.sin_index] = field.coeffs[handle.sin_index];
    return out;
}

Field project_Kperp(const Field& field, const EigenspaceHandle& handle)
{
    Field out = field;
    out.coeffs[handle.cos_index] = 0.0;
    out.coeffs[handle.sin_index] = 0.0;
    return out;
}

double inner_l2(const Field& a, const Field& b)
{
    require_same_basis(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) s += a.coeffs[i] * b.coeffs[i];
    return s;
}

double inner_h1(const Field& a, const Field& b)
{
    require_same_basis(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        s += a.basis->entry(i).lam * a.coeffs[i] * b.coeffs[i];
    return s;
}

double norm_l2(const Field& field)
{
    return std::sqrt(inner_l2(field, field));
}

double norm_h1(const Field& field)
{
    return std::sqrt(inner_h1(field, field));
}

double norm_V(const Field& field, const SobolevExponent& q)
{
    double v = norm_h1(field);
    if (q.q) {
        GridValues g = synth(field);
        for (double& x : g) x = std::pow(std::fabs(x), *q.q);
        v += std::pow(grid_integral(*field.basis, g), 1.0 / *q.q);
    }
    return v;
}

double eval_at(const Field& field, double r, double theta)
{
    const BasisTable& b = *field.basis;
    double sum = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double c = field.coeffs[i];
        if (c == 0.0) continue;
        const BasisEntry& e = b.entry(i);
        const double radial = e.norm_const * bessel_j(Order::integer(e.m), b.zero(e.m, e.k) * r);
        const double angular = e.parity == Parity::cosine ? std::cos(e.m * theta) : std::sin(e.m * theta);
        sum += c * radial * angular;
    }
    return sum;
}

GradientSample sample_with_gradient(const Field& field, const std::vector<double>& radii, int n_theta)
{
    const BasisTable& b = *field.basis;
    const int nr = static_cast<int>(radii.size());
    GradientSample out;
    out.radii = radii;
    out.n_theta = n_theta;
    const std::size_t total = static_cast<std::size_t>(nr) * n_theta;
    out.u.assign(total, 0.0);
    out.u_r.assign(total, 0.0);
    out.u_theta.assign(total, 0.0);

    std::vector<double> val(nr), der(nr), ang(nr);
    std::vector<double> cs(n_theta), sn(n_theta);
    for (int m = 0; m <= b.m_max(); ++m) {
        for (int l = 0; l < n_theta; ++l) {
            const double a = 2.0 * std::numbers::pi * ((static_cast<long>(m) * l) % n_theta) / n_theta;
            cs[l] = std::cos(a);
            sn[l] = std::sin(a);
        }
        const Order order = Order::integer(m);
        for (Parity parity : {Parity::cosine, Parity::sine}) {
            if (m == 0 && parity == Parity::sine) continue;
            const std::size_t base = b.index(m, parity, 1);
            std::fill(val.begin(), val.end(), 0.0);
            std::fill(der.begin(), der.end(), 0.0);
            std::fill(ang.begin(), ang.end(), 0.0);
            bool any = false;
            for (int k = 1; k <= b.k_max(); ++k) {
                const double c = field.coeffs[base + k - 1];
                if (c == 0.0) continue;
                any = true;
                const double j = b.zero(m, k);
                const double cn = c * b.entry(base + k - 1).norm_const;
                for (int i = 0; i < nr; ++i) {
                    const double r = radii[i];
                    const BesselPair p = bessel_j_scaled(order, j * r);
                    const double jv = p.j.value();
                    val[i] += cn * jv;
                    der[i] += cn * j * p.j_prime.value();
                    // m J_m(jr) / r, with the r -> 0 limit j/2 for m = 1 and 0 otherwise.
                    if (r > 0.0)
                        ang[i] += cn * m * jv / r;
                    else if (m == 1)
                        ang[i] += cn * 0.5 * j;
                }
            }
            if (!any) continue;
            for (int i = 0; i < nr; ++i) {
                const std::size_t row = static_cast<std::size_t>(i) * n_theta;
                for (int l = 0; l < n_theta; ++l) {
                    const double c = parity == Parity::cosine ? cs[l] : sn[l];
                    // d/dtheta cos = -m sin, d/dtheta sin = m cos; m is folded into ang.
                    const double dc = parity == Parity::cosine ? -sn[l] : cs[l];
                    out.u[row + l] += val[i] * c;
                    out.u_r[row + l] += der[i] * c;
                    out.u_theta[row + l] += ang[i] * dc;
                }
            }
        }
    }
    return out;
}

Field operator+(const Field& a, const Field& b)
{
    require_same_basis(a, b);
    Field out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
    return out;
}

Field operator-(const Field& a, const Field& b)
{
    require_same_basis(a, b);
    Field out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] -= b.coeffs[i];
    return out;
}

Field operator*(double s, const Field& a)
{
    Field out = a;
    for (double& c : out.coeffs) c *= s;
    return out;
}

void write_field(std::ostream& out, const Field& field)
{
    const BasisTable& b = *field.basis;
    out << b.m_max() << ' ' << b.k_max() << '\n';
    char buf[64];
    for (std::size_t i = 0; i < b.size(); ++i) {
        const BasisEntry& e = b.entry(i);
        std::snprintf(buf, sizeof buf, "%.17g", field.coeffs[i]);
        out << e.m << ' ' << (e.parity == Parity::cosine ? "cos" : "sin") << ' ' << e.k << ' ' << buf
            << '\n';
    }
}

Field read_field(std::istream& in)
{
    int m_max = 0, k_max = 0;
    if (!(in >> m_max >> k_max)) throw std::runtime_error("field header missing");
    Field f = Field::zero(build_basis(m_max, k_max));
    for (std::size_t n = 0; n < f.basis->size(); ++n) {
        int m = 0, k = 0;
        std::string parity, coeff;
        if (!(in >> m >> parity >> k >> coeff)) throw std::runtime_error("field body truncated");
        if (parity != "cos" && parity != "sin") throw std::runtime_error("bad parity '" + parity + "'");
        f.coeffs[f.basis->index(m, parity == "cos" ? Parity::cosine : Parity::sine, k)] = std::stod(coeff);
    }
    return f;
}

}  // namespace wgm
