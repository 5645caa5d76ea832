#pragma once

#include <functional>
#include <vector>

#include "qlm/grid.hpp"
#include "qlm/linalg.hpp"
#include "qlm/spacetime.hpp"

namespace qlm {

/// Parameterized spacelike 2-surface Y(theta, phi) in spacetime with analytic
/// first and second parameter derivatives. The family parameter r0 labels the
/// member of a one-parameter family going out to spatial infinity.
struct SurfaceChart {
    double r0 = 1.0;
    double beta = 0.0;
    double gamma = 1.0;
    std::function<Vec4(double, double)> position;                 // Y
    std::function<std::array<Vec4, 2>(double, double)> first;     // dY/dtheta, dY/dphi
    std::function<std::array<Vec4, 3>(double, double)> second;    // tt, tp, pp
};

/// Coordinate sphere of radius r0 in the boosted slice {gamma y0 - beta gamma
/// y3 = 0}:
///   Y = (beta gamma r0 cos t, r0 sin t sin p, r0 sin t cos p, gamma r0 cos t)
/// Requires gamma^2 (1 - beta^2) = 1.
SurfaceChart boosted_sphere_chart(double beta, double gamma, double r0);

/// Scaling-invariant frames along a chart: N = (Y/r0)^a d_a (asymptotically
/// the outward normal), B = gamma (d_0 + beta d_3) (asymptotically the unit
/// timelike normal of the slice), T = (1/r0) dY/dtheta (tangent).
Vec4 frame_N(const SurfaceChart& c, double theta, double phi);
Vec4 frame_B(const SurfaceChart& c);
Vec4 frame_T(const SurfaceChart& c, double theta, double phi);

/// Induced 2-metric sigma_ab at one node.
struct Sym2 {
    double tt = 0.0, tp = 0.0, pp = 0.0;
    double det() const { return tt * pp - tp * tp; }
    Sym2 inverse() const {
        const double d = det();
        if (!(d > 0)) throw SingularError("induced metric is not positive definite");
        return {pp / d, -tp / d, tt / d};
    }
};

Sym2 induced_metric(const SurfaceChart& c, const MetricProvider& m, double theta, double phi);

struct MeanCurvature {
    Vec4 H;
    double norm; // |H| = sqrt(<H,H>), requires spacelike H
};

/// H^c = sigma^{ab} (d^2 Y^c / du^a du^b + Gamma^c_{de} dY^d/du^a dY^e/du^b),
/// projected onto the normal bundle. Throws NotSpacelikeError if <H,H> <= 0.
MeanCurvature mean_curvature_vector(const SurfaceChart& c, const MetricProvider& m, double theta,
                                    double phi);

/// Future-directed normal J dual to H along the light cone of the normal
/// bundle: <J,J> = -<H,H>, <J,H> = 0, J normal to the surface.
Vec4 dual_normal(const SurfaceChart& c, const MetricProvider& m, double theta, double phi,
                 const Vec4& H);

/// Per-node extrinsic data of a chart over a full product grid, plus the
/// connection-form samples needed by the energy integrand. Immutable once
/// built.
class GeometrySnapshot {
  public:
    GeometrySnapshot(const SurfaceChart& chart, const MetricProvider& metric, int order, int nphi);

    const Grid2D& grid() const { return grid_; }
    double r0() const { return r0_; }
    int nodes() const { return grid_.nodes(); }

    const std::vector<Vec4>& position() const { return Y_; }
    const std::vector<Vec4>& dY_dtheta() const { return Yt_; }
    const std::vector<Vec4>& dY_dphi() const { return Yp_; }
    const std::vector<Mat4>& ambient_metric() const { return G_; }
    const std::vector<Sym2>& sigma() const { return sigma_; }
    const std::vector<Sym2>& sigma_inv() const { return sigma_inv_; }
    const std::vector<double>& area_element() const { return sqrt_det_; }
    const std::vector<Vec4>& mean_curvature() const { return H_; }
    const std::vector<double>& mean_curvature_norm() const { return absH_; }
    const std::vector<Vec4>& dual() const { return J_; }

    /// <nabla_W (J/|H|), H/|H|> for the tangent vector W = Wt dY/dtheta +
    /// Wp dY/dphi at the given node.
    double connection_form(int node, double Wt, double Wp) const {
        return Wt * omega_t_[node] + Wp * omega_p_[node];
    }
    const std::vector<double>& omega_theta() const { return omega_t_; }
    const std::vector<double>& omega_phi() const { return omega_p_; }

    /// Integral of f over the surface with its area element.
    double integrate(const std::vector<double>& f) const {
        return grid_.integrate(f, sqrt_det_);
    }

  private:
    Grid2D grid_;
    double r0_;
    std::vector<Vec4> Y_, Yt_, Yp_, H_, J_;
    std::vector<Mat4> G_;
    std::vector<Sym2> sigma_, sigma_inv_;
    std::vector<double> sqrt_det_, absH_;
    std::vector<double> omega_t_, omega_p_;
};

/// Gradient, squared gradient and Laplace-Beltrami of a scalar field with
/// respect to an induced metric sampled on the grid.
struct ScalarCalculus {
    std::vector<double> dt, dp;         // partial derivatives
    std::vector<double> grad_t, grad_p; // contravariant gradient components
    std::vector<double> grad_sq;        // |grad f|^2
    std::vector<double> laplacian;
};

ScalarCalculus surface_calculus(const Grid2D& grid, const std::vector<Sym2>& sigma_inv,
                                const std::vector<double>& sqrt_det,
                                const std::vector<double>& f);

} // namespace qlm
