#pragma once

#include <vector>

#include "qlm/grid.hpp"
#include "qlm/linalg.hpp"
#include "qlm/surface.hpp"

namespace qlm {

/// Axisymmetric 2-metric sigma = r0^2 P(t)^2 dt^2 + r0^2 Q(t)^2 sin^2 t dp^2,
/// sampled at the Gauss nodes. P and Q are smooth functions of cos(theta).
struct AxisymMetric2 {
    double r0 = 1.0;
    std::vector<double> P, Q;
};

/// Extract (P, Q) from a computed surface geometry. Requires the induced
/// metric to be diagonal and phi-independent on the grid.
AxisymMetric2 axisym_metric(const GeometrySnapshot& snap, double tol = 1e-10);

/// Surface of revolution X = (u sin p, u cos p, v) in R^3, embedded in
/// R^{3,1} as (0, u sin p, u cos p, v). Gauge: v(pi/2) = 0; v decreases with
/// theta. H0 is the mean curvature with respect to the outward normal.
struct EmbeddingProfile {
    double r0 = 1.0;
    std::vector<double> u, du, d2u; // u and its theta-derivatives
    std::vector<double> v, dv, d2v;
    std::vector<double> rP;         // r0 P = sqrt(du^2 + dv^2)
    std::vector<double> H0;
};

/// Solve u = r0 Q sin t, (du)^2 + (dv)^2 = r0^2 P^2 for the profile, with v
/// integrated spectrally from its derivative. Throws EmbeddingError (with the
/// offending theta) when the radicand r0^2 P^2 - (du)^2 is not positive.
EmbeddingProfile profile_from_metric(const GaussGrid& grid, const AxisymMetric2& g);

/// Mean curvature of the surface of revolution with outward orientation:
///   H0 = -( (du d2v - d2u dv) / (r0 P)^3 + dv / (u r0 P) )
std::vector<double> reference_mean_curvature(const GaussGrid& grid, const EmbeddingProfile& e);

/// Time function tau = -<X, T0> = -(a1 u sin p + a2 u cos p + a3 v) on the
/// product grid.
std::vector<double> tau_field(const Grid2D& grid, const EmbeddingProfile& e, const Vec3& a);

/// Outward unit normal of the embedded surface in R^3, as a spacetime vector
/// (0, n1, n2, n3); this is e3 of the reference data while e4 = (1,0,0,0).
Vec4 reference_outward_normal(const EmbeddingProfile& e, int theta_index, double phi);

} // namespace qlm
