#pragma once

#include <vector>

#include "qlm/errors.hpp"

namespace qlm {

/// Gauss-Legendre grid in x = cos(theta) on (-1, 1). Nodes never touch the
/// poles, so 1/sin(theta) stays finite everywhere on the grid.
///
/// Smooth axisymmetric data on the sphere is a smooth function of x; data of
/// odd azimuthal parity carries one factor of sin(theta). The two
/// differentiation rules below cover both cases with spectral accuracy:
///   dtheta_even  for f = f(x)             (d/dtheta = -sin(theta) d/dx)
///   dtheta_odd   for f = sin(theta) g(x)
class GaussGrid {
  public:
    explicit GaussGrid(int order);

    int size() const { return n_; }
    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& weight() const { return w_; }
    const std::vector<double>& theta() const { return theta_; }
    const std::vector<double>& sin_theta() const { return st_; }

    /// d/dx via the barycentric differentiation matrix.
    std::vector<double> deriv_x(const std::vector<double>& f) const;

    /// Integral of the node-interpolant from x=0 to each node x_j (Legendre
    /// coefficient route; exact for polynomial data of degree < order).
    std::vector<double> antideriv_from_zero(const std::vector<double>& fx) const;

    /// Sum of w_j f_j, i.e. the integral over x in (-1,1).
    double integrate_x(const std::vector<double>& f) const;

    /// d/dtheta of a field smooth in x.
    std::vector<double> dtheta_even(const std::vector<double>& f) const;

    /// d/dtheta of a field of the form sin(theta) * (smooth in x).
    std::vector<double> dtheta_odd(const std::vector<double>& f) const;

  private:
    int n_;
    std::vector<double> x_, w_;       // nodes ascending, weights
    std::vector<double> theta_, st_;  // acos(x), sqrt(1-x^2)
    std::vector<double> diff_;        // n x n differentiation matrix, row-major
    std::vector<double> leg_;         // P_m(x_j), m-major: leg_[m*n + j], m <= n
    std::vector<double> leg0_;        // P_m(0), m <= n
};

/// Uniform periodic phi grid with a real trigonometric transform. Used for
/// the azimuthal direction; the trapezoid rule on it is exact for
/// trigonometric polynomials and spectrally accurate for smooth integrands.
class PhiGrid {
  public:
    explicit PhiGrid(int count);

    int size() const { return n_; }
    const std::vector<double>& phi() const { return phi_; }

    /// Real DFT: f_j = sum_m a_m cos(m phi_j) + b_m sin(m phi_j), m <= n/2.
    void transform(const double* f, double* a, double* b) const;
    int mode_count() const { return n_ / 2 + 1; }
    const double* cos_row(int m) const { return &cos_[static_cast<size_t>(m) * n_]; }
    const double* sin_row(int m) const { return &sin_[static_cast<size_t>(m) * n_]; }

    /// Spectral d/dphi of one ring of samples.
    void deriv(const double* f, double* df) const;

  private:
    int n_;
    std::vector<double> phi_;
    std::vector<double> cos_, sin_; // cos_[m*n + j] = cos(m phi_j)
};

/// Product grid (Gauss-Legendre in cos theta) x (uniform phi). Scalar fields
/// are stored row-major: field[i * nphi + j] for theta node i, phi node j.
class Grid2D {
  public:
    Grid2D(int order, int nphi);

    const GaussGrid& gauss() const { return gl_; }
    const PhiGrid& fourier() const { return ph_; }
    int ntheta() const { return gl_.size(); }
    int nphi() const { return ph_.size(); }
    int nodes() const { return gl_.size() * ph_.size(); }
    int idx(int i, int j) const { return i * ph_.size() + j; }
    double theta(int i) const { return gl_.theta()[i]; }
    double phi(int j) const { return ph_.phi()[j]; }

    /// d/dtheta of a smooth scalar field on the sphere. Decomposes in phi
    /// modes and applies the even/odd rule per mode parity.
    std::vector<double> dtheta(const std::vector<double>& f) const;

    /// d/dphi (exact trigonometric differentiation).
    std::vector<double> dphi(const std::vector<double>& f) const;

    /// Integral over the surface: sum w_i (2 pi / nphi) f_ij * area_ij /
    /// sin(theta_i), where area is the area element sqrt(det sigma). The
    /// 1/sin folds the element into the Gauss measure dx = sin(theta) dtheta.
    double integrate(const std::vector<double>& f, const std::vector<double>& area) const;

  private:
    GaussGrid gl_;
    PhiGrid ph_;
};

} // namespace qlm
