#include "qlm/quasilocal.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <numbers>

namespace qlm {

Extrapolation extrapolate(const std::vector<double>& radii, const std::vector<double>& values) {
    const int n = static_cast<int>(radii.size());
    if (n < 3 || values.size() != radii.size())
        throw DomainError("extrapolation needs at least three (radius, value) pairs");
    for (int i = 1; i < n; ++i)
        if (!(radii[i] > radii[i - 1]) || !(radii[0] > 0))
            throw DomainError("ladder radii must be positive and strictly increasing");

    // scaled basis {1, s, s^2}, s = r_min / r, for conditioning
    const double rmin = radii[0];
    double ata[3][3] = {};
    double atb[3] = {};
    for (int i = 0; i < n; ++i) {
        const double s = rmin / radii[i];
        const double b[3] = {1.0, s, s * s};
        for (int r = 0; r < 3; ++r) {
            atb[r] += b[r] * values[i];
            for (int c = 0; c < 3; ++c) ata[r][c] += b[r] * b[c];
        }
    }
    // solve the 3x3 normal equations by Gaussian elimination
    double m[3][4];
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) m[r][c] = ata[r][c];
        m[r][3] = atb[r];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-14)
            throw SingularError("rank-deficient extrapolation fit");
        for (int c = 0; c < 4; ++c) std::swap(m[piv][c], m[col][c]);
        const double d = 1.0 / m[col][col];
        for (int c = 0; c < 4; ++c) m[col][c] *= d;
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = m[r][col];
            for (int c = 0; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }
    Extrapolation out;
    out.coeffs = {m[0][3], m[1][3] * rmin, m[2][3] * rmin * rmin};
    out.limit = out.coeffs[0];
    for (int i = 0; i < n; ++i) {
        const double fit =
            out.coeffs[0] + out.coeffs[1] / radii[i] + out.coeffs[2] / (radii[i] * radii[i]);
        out.residual = std::max(out.residual, std::abs(fit - values[i]));
    }
    return out;
}

namespace {

void check_reference_positive(const EmbeddingProfile& emb) {
    for (double h : emb.H0)
        if (!(h > 0)) throw DomainError("reference mean curvature is not positive");
}

} // namespace

double qle_finite(const GeometrySnapshot& surface, const EmbeddingProfile& emb,
                  const Observer& obs) {
    check_reference_positive(emb);
    const Grid2D& grid = surface.grid();
    const auto tau = tau_field(grid, emb, obs.a);
    const auto calc = surface_calculus(grid, surface.sigma_inv(), surface.area_element(), tau);
    const int np = grid.nphi();
    std::vector<double> integrand(surface.nodes());
    for (int k = 0; k < surface.nodes(); ++k) {
        const double h0 = emb.H0[k / np];
        const double h = surface.mean_curvature_norm()[k];
        const double q = 1.0 + calc.grad_sq[k];
        const double sq = std::sqrt(q);
        const double lap = calc.laplacian[k];
        const double a0 = std::sqrt(h0 * h0 * q + lap * lap);
        const double a1 = std::sqrt(h * h * q + lap * lap);
        const double asdiff = std::asinh(lap / (sq * h0)) - std::asinh(lap / (sq * h));
        const double conn = surface.connection_form(k, calc.grad_t[k], calc.grad_p[k]);
        integrand[k] = a0 - a1 - lap * asdiff + conn;
    }
    return surface.integrate(integrand) / (8.0 * std::numbers::pi);
}

double qle_limit_form(const GeometrySnapshot& surface, const EmbeddingProfile& emb,
                      const Observer& obs) {
    check_reference_positive(emb);
    const Grid2D& grid = surface.grid();
    const int np = grid.nphi();
    for (int k = 0; k < surface.nodes(); ++k) {
        const double ratio = surface.mean_curvature_norm()[k] / emb.H0[k / np];
        if (!(ratio > 0.5 && ratio < 2.0))
            throw DomainError("asymptotic regime guard violated: |H|/|H0| outside (0.5, 2)");
    }
    const auto tau = tau_field(grid, emb, obs.a);
    const auto calc = surface_calculus(grid, surface.sigma_inv(), surface.area_element(), tau);
    const double boost = std::sqrt(1.0 + obs.a[0] * obs.a[0] + obs.a[1] * obs.a[1] + obs.a[2] * obs.a[2]);
    std::vector<double> integrand(surface.nodes());
    for (int k = 0; k < surface.nodes(); ++k) {
        const double h0 = emb.H0[k / np];
        const double h = surface.mean_curvature_norm()[k];
        const double conn = surface.connection_form(k, calc.grad_t[k], calc.grad_p[k]);
        integrand[k] = boost * (h0 - h) + conn;
    }
    return surface.integrate(integrand) / (8.0 * std::numbers::pi);
}

RawFourVector energy_momentum_integrals(const GeometrySnapshot& surface,
                                        const EmbeddingProfile& emb) {
    check_reference_positive(emb);
    const Grid2D& grid = surface.grid();
    const int nt = grid.ntheta(), np = grid.nphi();
    RawFourVector out;

    std::vector<double> liu_yau(surface.nodes());
    for (int k = 0; k < surface.nodes(); ++k)
        liu_yau[k] = emb.H0[k / np] - surface.mean_curvature_norm()[k];
    out.e = surface.integrate(liu_yau) / (8.0 * std::numbers::pi);

    // p_i = -(1/8pi) Int <nabla_{grad X^i} J/|H|, H/|H|> dv with the gradient
    // of the embedding coordinate X^i pushed forward through the chart
    for (int i3 = 0; i3 < 3; ++i3) {
        std::vector<double> integrand(surface.nodes());
        for (int i = 0; i < nt; ++i) {
            for (int j = 0; j < np; ++j) {
                const int k = grid.idx(i, j);
                const double p = grid.phi(j);
                double dXt = 0.0, dXp = 0.0;
                if (i3 == 0) {
                    dXt = emb.du[i] * std::sin(p);
                    dXp = emb.u[i] * std::cos(p);
                } else if (i3 == 1) {
                    dXt = emb.du[i] * std::cos(p);
                    dXp = -emb.u[i] * std::sin(p);
                } else {
                    dXt = emb.dv[i];
                }
                const Sym2& inv = surface.sigma_inv()[k];
                const double Wt = inv.tt * dXt + inv.tp * dXp;
                const double Wp = inv.tp * dXt + inv.pp * dXp;
                integrand[k] = surface.connection_form(k, Wt, Wp);
            }
        }
        out.p[i3] = -surface.integrate(integrand) / (8.0 * std::numbers::pi);
    }
    return out;
}

EnergyMomentum energy_momentum(const MetricProvider& metric, const ChartFamily& family,
                               const std::vector<double>& radii, int order, int nphi,
                               double residual_tol) {
    if (radii.size() < 3) throw DomainError("energy_momentum needs a ladder of at least 3 radii");

    std::vector<std::future<RawFourVector>> jobs;
    jobs.reserve(radii.size());
    for (double r : radii) {
        jobs.push_back(std::async(std::launch::async, [&, r]() {
            const SurfaceChart chart = family(r);
            const GeometrySnapshot snap(chart, metric, order, nphi);
            const AxisymMetric2 g2 = axisym_metric(snap);
            const EmbeddingProfile emb = profile_from_metric(snap.grid().gauss(), g2);
            return energy_momentum_integrals(snap, emb);
        }));
    }

    EnergyMomentum out;
    out.radii = radii;
    for (auto& j : jobs) out.raw.push_back(j.get());

    std::vector<double> vals(radii.size());
    auto fit = [&](auto getter, double& limit, double& residual) {
        for (size_t i = 0; i < radii.size(); ++i) vals[i] = getter(out.raw[i]);
        const Extrapolation ex = extrapolate(radii, vals);
        limit = ex.limit;
        residual = ex.residual;
        if (ex.residual > residual_tol * std::max(1.0, std::abs(ex.limit)))
            throw ConvergenceError("non-convergent radius ladder: fit residual " +
                                   std::to_string(ex.residual) + " exceeds tolerance");
    };
    fit([](const RawFourVector& r) { return r.e; }, out.e, out.e_residual);
    for (int i = 0; i < 3; ++i)
        fit([i](const RawFourVector& r) { return r.p[i]; }, out.p[i], out.p_residual[i]);

    const double pn = norm3(out.p);
    if (out.e > pn) {
        const MassMinimum mm = minimize_over_observers(out.e, out.p);
        out.m = mm.m;
        out.a_min = mm.a_min;
    } else {
        out.m = std::numeric_limits<double>::quiet_NaN();
        out.a_min = {std::numeric_limits<double>::quiet_NaN(),
                     std::numeric_limits<double>::quiet_NaN(),
                     std::numeric_limits<double>::quiet_NaN()};
    }
    return out;
}

MassMinimum minimize_over_observers(double e, const Vec3& p) {
    const double pn = norm3(p);
    if (!(e > pn)) throw DomainError("energy-momentum not future-timelike (e <= |p|)");
    const double m = std::sqrt(e * e - pn * pn);
    return {m, {-p[0] / m, -p[1] / m, -p[2] / m}};
}

double observer_energy(double e, const Vec3& p, const Vec3& a) {
    const double boost = std::sqrt(1.0 + a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
    return e * boost + p[0] * a[0] + p[1] * a[1] + p[2] * a[2];
}

} // namespace qlm
