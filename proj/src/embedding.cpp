#include "qlm/embedding.hpp"

#include <cmath>

namespace qlm {

AxisymMetric2 axisym_metric(const GeometrySnapshot& snap, double tol) {
    const Grid2D& grid = snap.grid();
    const int nt = grid.ntheta(), np = grid.nphi();
    const double r0 = snap.r0();
    AxisymMetric2 out;
    out.r0 = r0;
    out.P.resize(nt);
    out.Q.resize(nt);
    const double scale = r0 * r0;
    for (int i = 0; i < nt; ++i) {
        const Sym2& s0 = snap.sigma()[grid.idx(i, 0)];
        for (int j = 0; j < np; ++j) {
            const Sym2& s = snap.sigma()[grid.idx(i, j)];
            if (std::abs(s.tt - s0.tt) > tol * scale || std::abs(s.pp - s0.pp) > tol * scale ||
                std::abs(s.tp) > tol * scale)
                throw DomainError("induced metric is not axisymmetric/diagonal on the grid");
        }
        const double st = grid.gauss().sin_theta()[i];
        out.P[i] = std::sqrt(s0.tt) / r0;
        out.Q[i] = std::sqrt(s0.pp) / (r0 * st);
        if (!(out.P[i] > 0) || !(out.Q[i] > 0))
            throw DomainError("axisymmetric metric profile is not positive");
    }
    return out;
}

EmbeddingProfile profile_from_metric(const GaussGrid& grid, const AxisymMetric2& g) {
    const int n = grid.size();
    const double r0 = g.r0;
    EmbeddingProfile e;
    e.r0 = r0;
    e.u.resize(n);
    e.du.resize(n);
    e.rP.resize(n);
    for (int j = 0; j < n; ++j) {
        e.u[j] = r0 * g.Q[j] * grid.sin_theta()[j];
        e.rP[j] = r0 * g.P[j];
    }
    // du/dtheta = r0 (Q cos t - sin^2 t dQ/dx); smooth in x
    const auto Qx = grid.deriv_x(g.Q);
    for (int j = 0; j < n; ++j) {
        const double x = grid.x()[j];
        e.du[j] = r0 * (g.Q[j] * x - (1.0 - x * x) * Qx[j]);
    }
    e.d2u = grid.dtheta_even(e.du);

    // dv/dtheta = -sqrt(r0^2 P^2 - du^2): v decreases with theta. In the x
    // variable dv/dx = sqrt(radicand / (1 - x^2)) stays smooth through the
    // poles, which is the form we integrate.
    std::vector<double> vx(n);
    for (int j = 0; j < n; ++j) {
        const double radicand = e.rP[j] * e.rP[j] - e.du[j] * e.du[j];
        if (!(radicand > 0)) {
            throw EmbeddingError("embedding does not exist: r0^2 P^2 - (du/dtheta)^2 <= 0 at theta = " +
                                     std::to_string(grid.theta()[j]),
                                 grid.theta()[j]);
        }
        vx[j] = std::sqrt(radicand / (1.0 - grid.x()[j] * grid.x()[j]));
    }
    e.v = grid.antideriv_from_zero(vx); // gauge v(pi/2) = 0
    e.dv.resize(n);
    e.d2v.resize(n);
    const auto vxx = grid.deriv_x(vx);
    for (int j = 0; j < n; ++j) {
        const double x = grid.x()[j];
        const double st = grid.sin_theta()[j];
        e.dv[j] = -st * vx[j];
        e.d2v[j] = -x * vx[j] + (1.0 - x * x) * vxx[j];
    }
    e.H0 = reference_mean_curvature(grid, e);
    return e;
}

std::vector<double> reference_mean_curvature(const GaussGrid& grid, const EmbeddingProfile& e) {
    const int n = grid.size();
    std::vector<double> h0(n);
    for (int j = 0; j < n; ++j) {
        const double rp = e.rP[j];
        if (!(rp > 0) || !(e.u[j] > 0))
            throw DomainError("degenerate embedding profile");
        const double profile = (e.du[j] * e.d2v[j] - e.d2u[j] * e.dv[j]) / (rp * rp * rp);
        const double azimuthal = e.dv[j] / (e.u[j] * rp);
        h0[j] = -(profile + azimuthal);
    }
    return h0;
}

std::vector<double> tau_field(const Grid2D& grid, const EmbeddingProfile& e, const Vec3& a) {
    const int nt = grid.ntheta(), np = grid.nphi();
    std::vector<double> tau(static_cast<size_t>(nt) * np);
    for (int i = 0; i < nt; ++i) {
        for (int j = 0; j < np; ++j) {
            const double p = grid.phi(j);
            tau[grid.idx(i, j)] =
                -(a[0] * e.u[i] * std::sin(p) + a[1] * e.u[i] * std::cos(p) + a[2] * e.v[i]);
        }
    }
    return tau;
}

Vec4 reference_outward_normal(const EmbeddingProfile& e, int i, double phi) {
    const double rp = e.rP[i];
    return {0.0, -e.dv[i] * std::sin(phi) / rp, -e.dv[i] * std::cos(phi) / rp, e.du[i] / rp};
}

} // namespace qlm
