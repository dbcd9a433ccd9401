#pragma once

// Functions on the unit disk expanded in the Dirichlet eigenbasis
//   psi_{m,k}(r, theta) = c_{m,k} J_m(j_{m,k} r) {cos, sin}(m theta),
// which is L^2-orthonormal, so L^2 and H^1_0 norms are plain weighted sums of
// squared coefficients. Nonlinear terms are handled pseudo-spectrally on a
// tensor grid: Gauss-Legendre radii (weight r) times uniform angles.

#include "wgm/potential.hpp"

#include <iosfwd>
#include <memory>
#include <vector>

namespace wgm {

enum class Parity { cosine, sine };

struct BasisEntry {
    int m = 0;
    Parity parity = Parity::cosine;
    int k = 1;
    double lam = 0.0;         // j_{m,k}^2
    double norm_const = 0.0;  // c_{m,k}
};

struct GridOptions {
    int n_r = 0;      // 0: max(64, 4 k_max)
    int n_theta = 0;  // 0: max(64, 4 m_max)
};

class BasisTable {
public:
    BasisTable(int m_max, int k_max, GridOptions grid = {});

    int m_max() const { return m_max_; }
    int k_max() const { return k_max_; }
    std::size_t size() const { return entries_.size(); }
    const std::vector<BasisEntry>& entries() const { return entries_; }
    const BasisEntry& entry(std::size_t i) const { return entries_[i]; }
    /// Position of (m, parity, k); throws std::out_of_range if absent.
    std::size_t index(int m, Parity parity, int k) const;
    /// j_{m,k}.
    double zero(int m, int k) const { return zeros_[m][k - 1]; }

    int n_r() const { return static_cast<int>(radii_.size()); }
    int n_theta() const { return n_theta_; }
    std::size_t grid_size() const { return radii_.size() * n_theta_; }
    const std::vector<double>& radii() const { return radii_; }
    /// Gauss-Legendre weight times r.
    const std::vector<double>& radial_weights() const { return radial_weights_; }
    double theta(int l) const;
    double angular_weight() const;

    /// c_{m,k} J_m(j_{m,k} r_i), laid out [m][k-1][i].
    double radial_value(int m, int k, int i) const
    {
        return radial_[(static_cast<std::size_t>(m) * k_max_ + (k - 1)) * radii_.size() + i];
    }
    double cos_value(int m, int l) const { return cos_[static_cast<std::size_t>(m) * n_theta_ + l]; }
    double sin_value(int m, int l) const { return sin_[static_cast<std::size_t>(m) * n_theta_ + l]; }

private:
    int m_max_, k_max_, n_theta_;
    std::vector<BasisEntry> entries_;
    std::vector<std::vector<double>> zeros_;
    std::vector<double> radii_, radial_weights_, radial_, cos_, sin_;
};

using BasisPtr = std::shared_ptr<const BasisTable>;

BasisPtr build_basis(int m_max, int k_max, GridOptions grid = {});

struct Field {
    BasisPtr basis;
    std::vector<double> coeffs;

    static Field zero(BasisPtr basis);
};

/// Values on the basis grid, index i * n_theta + l.
using GridValues = std::vector<double>;

GridValues synth(const Field& field);
/// Quadrature adjoint of synth: coefficients by grid projection.
Field analyze(const GridValues& values, BasisPtr basis);

/// Grid-quadrature integral of g over the disk.
double grid_integral(const BasisTable& basis, const GridValues& g);

Field apply_inv_laplacian(const Field& field);

/// The two-dimensional eigenspace spanned by the k = 1 cos/sin modes of degree n.
struct EigenspaceHandle {
    int n = 1;
    std::size_t cos_index = 0;
    std::size_t sin_index = 0;
    double lam = 0.0;

    bool contains(std::size_t i) const { return i == cos_index || i == sin_index; }
};

EigenspaceHandle eigenspace(const BasisTable& basis, int n);

Field project_K(const Field& field, const EigenspaceHandle& handle);
Field project_Kperp(const Field& field, const EigenspaceHandle& handle);

double inner_l2(const Field& a, const Field& b);
double inner_h1(const Field& a, const Field& b);
double norm_l2(const Field& field);
double norm_h1(const Field& field);
/// H^1_0 norm, plus the grid L^q norm when q is present.
double norm_V(const Field& field, const SobolevExponent& q);

/// Direct summation of the expansion at one point.
double eval_at(const Field& field, double r, double theta);

/// Values and gradient components on an arbitrary polar grid.
struct GradientSample {
    std::vector<double> radii;
    int n_theta = 0;
    std::vector<double> u;        // i * n_theta + l
    std::vector<double> u_r;      // radial derivative
    std::vector<double> u_theta;  // (1/r) angular derivative
};

GradientSample sample_with_gradient(const Field& field, const std::vector<double>& radii,
                                    int n_theta);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);

void write_field(std::ostream& out, const Field& field);
/// Reads the text format written by write_field and rebuilds a matching basis.
Field read_field(std::istream& in);

}  // namespace wgm
