#pragma once

#include <functional>
#include <vector>

#include "qlm/embedding.hpp"
#include "qlm/surface.hpp"

namespace qlm {

/// Future timelike unit observer T0 = (sqrt(1 + |a|^2), a1, a2, a3).
struct Observer {
    Vec3 a{0, 0, 0};
    Vec4 t0() const {
        const double n = std::sqrt(1.0 + a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
        return {n, a[0], a[1], a[2]};
    }
};

/// Least-squares fit of c0 + c1/r + c2/r^2 through ladder values; returns the
/// r -> infinity limit c0 and the max fit residual.
struct Extrapolation {
    double limit = 0.0;
    double residual = 0.0;
    std::array<double, 3> coeffs{};
};

Extrapolation extrapolate(const std::vector<double>& radii, const std::vector<double>& values);

/// Quasilocal energy of the surface with respect to (embedding, observer):
///   (1/8pi) Int [ sqrt(|H0|^2 (1+|grad tau|^2) + (Lap tau)^2)
///               - sqrt(|H|^2  (1+|grad tau|^2) + (Lap tau)^2)
///               - Lap tau (asinh(Lap tau / (sqrt(1+|grad tau|^2)|H0|))
///                        - asinh(Lap tau / (sqrt(1+|grad tau|^2)|H|)))
///               + <nabla_{grad tau} J/|H|, H/|H|> ] dv
/// The reference connection term vanishes identically for embeddings into
/// R^3 (J0/|H0| is the constant vector (1,0,0,0)).
double qle_finite(const GeometrySnapshot& surface, const EmbeddingProfile& emb,
                  const Observer& obs);

/// The linearized large-radius form of the same energy:
///   (1/8pi) Int [ sqrt(1+|a|^2) (|H0| - |H|) + <nabla_{grad tau} J/|H|, H/|H|> ] dv
/// Guards the asymptotic regime: requires |H|/|H0| in (0.5, 2) at all nodes.
double qle_limit_form(const GeometrySnapshot& surface, const EmbeddingProfile& emb,
                      const Observer& obs);

/// Raw observer-independent integrals at one radius.
struct RawFourVector {
    double e = 0.0; // (1/8pi) Int (|H0| - |H|) dv
    Vec3 p{0, 0, 0}; // (1/8pi) Int <nabla_{-grad X^i} J/|H|, H/|H|> dv
};

RawFourVector energy_momentum_integrals(const GeometrySnapshot& surface,
                                        const EmbeddingProfile& emb);

using ChartFamily = std::function<SurfaceChart(double)>;

/// Extrapolated energy-momentum four-vector of a surface family, with the
/// rest mass and minimizing observer when the vector is future timelike
/// (m and a_min are NaN otherwise).
struct EnergyMomentum {
    double e = 0.0;
    Vec3 p{0, 0, 0};
    double m = 0.0;
    Vec3 a_min{0, 0, 0};
    double e_residual = 0.0;
    Vec3 p_residual{0, 0, 0};
    std::vector<double> radii;
    std::vector<RawFourVector> raw;
};

EnergyMomentum energy_momentum(const MetricProvider& metric, const ChartFamily& family,
                               const std::vector<double>& radii, int order, int nphi,
                               double residual_tol = 1e-6);

/// Closed-form minimum of f(a) = e sqrt(1+|a|^2) + p.a over observers:
/// m = sqrt(e^2 - |p|^2) at a_min = -p/m. Throws DomainError when e <= |p|.
struct MassMinimum {
    double m;
    Vec3 a_min;
};

MassMinimum minimize_over_observers(double e, const Vec3& p);

/// e sqrt(1+|a|^2) + p.a — the limit energy seen by observer a.
double observer_energy(double e, const Vec3& p, const Vec3& a);

} // namespace qlm
