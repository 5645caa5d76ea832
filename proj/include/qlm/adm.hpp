#pragma once

#include <functional>
#include <map>
#include <vector>

#include "qlm/linalg.hpp"
#include "qlm/spacetime.hpp"

namespace qlm {

/// Asymptotically flat slice data in adapted coordinates (y1', y2', y3'):
/// the induced 3-metric, its coordinate derivatives and the extrinsic
/// curvature, plus the spacetime embedding of the slice. Extrinsic curvature
/// sign convention: p_ij = <nabla_{E_i} e0, E_j> with e0 the future unit
/// normal — the choice for which p(nu,nu) - tr p = <H, e0> holds with the
/// surface-geometry mean curvature vector.
struct SliceData {
    std::function<Mat3(const Vec3&)> metric;
    std::function<std::array<Mat3, 3>(const Vec3&)> metric_deriv; // d_k g_ij
    std::function<Mat3(const Vec3&)> ext_curvature;
    std::function<Vec4(const Vec3&)> embed;      // slice point -> spacetime point
    std::array<Vec4, 3> frame;                    // E_i = d(embed)/dy^i' (constant)
    std::function<Vec4(const Point4&)> normal;    // future unit normal field e0
    std::map<std::string, double> params;
};

/// Constant-time slice {gamma y0 - beta gamma y3 = 0} of isotropic
/// Schwarzschild. Closed-form metric and extrinsic curvature; metric
/// derivatives are closed-form at beta = 0 and use the finite-difference
/// policy otherwise.
SliceData boosted_slice_data(double mass, double beta, double gamma);

/// Raw ADM surface integrals over the coordinate sphere |y'| = r
/// (Euclidean normal and measure):
///   E(r)   = (1/16pi) Int (d_j g_ij - d_i g_jj) nu^i dA
///   P_k(r) = (1/16pi) Int 2 (p_ik - delta_ik p_jj) nu^i dA
double adm_energy_at(const SliceData& d, double r, int order, int nphi);
Vec3 adm_momentum_at(const SliceData& d, double r, int order, int nphi);

struct AdmResult {
    double E = 0.0;
    Vec3 P{0, 0, 0};
    double E_residual = 0.0;
    Vec3 P_residual{0, 0, 0};
    std::vector<double> radii;
    std::vector<double> E_raw;
    std::vector<Vec3> P_raw;
};

/// Ladder of sphere integrals extrapolated to spatial infinity.
AdmResult adm_energy_momentum(const SliceData& d, const std::vector<double>& radii, int order,
                              int nphi, double residual_tol = 1e-6);

} // namespace qlm
