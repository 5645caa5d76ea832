#include "qlm/surface.hpp"

#include <cmath>

namespace qlm {

SurfaceChart boosted_sphere_chart(double beta, double gamma, double r0) {
    if (!(r0 > 0)) throw DomainError("boosted_sphere_chart: r0 must be positive");
    if (!(gamma > 0) || std::abs(gamma * gamma * (1.0 - beta * beta) - 1.0) > 1e-12)
        throw DomainError("boosted_sphere_chart: need gamma^2 (1 - beta^2) = 1");
    SurfaceChart c;
    c.r0 = r0;
    c.beta = beta;
    c.gamma = gamma;
    const double bg = beta * gamma, g = gamma;
    c.position = [bg, g, r0](double t, double p) -> Vec4 {
        const double st = std::sin(t), ct = std::cos(t);
        return {bg * r0 * ct, r0 * st * std::sin(p), r0 * st * std::cos(p), g * r0 * ct};
    };
    c.first = [bg, g, r0](double t, double p) -> std::array<Vec4, 2> {
        const double st = std::sin(t), ct = std::cos(t);
        const double sp = std::sin(p), cp = std::cos(p);
        Vec4 dt = {-bg * r0 * st, r0 * ct * sp, r0 * ct * cp, -g * r0 * st};
        Vec4 dp = {0.0, r0 * st * cp, -r0 * st * sp, 0.0};
        return {dt, dp};
    };
    c.second = [bg, g, r0](double t, double p) -> std::array<Vec4, 3> {
        const double st = std::sin(t), ct = std::cos(t);
        const double sp = std::sin(p), cp = std::cos(p);
        Vec4 dtt = {-bg * r0 * ct, -r0 * st * sp, -r0 * st * cp, -g * r0 * ct};
        Vec4 dtp = {0.0, r0 * ct * cp, -r0 * ct * sp, 0.0};
        Vec4 dpp = {0.0, -r0 * st * sp, -r0 * st * cp, 0.0};
        return {dtt, dtp, dpp};
    };
    return c;
}

Vec4 frame_N(const SurfaceChart& c, double theta, double phi) {
    return (1.0 / c.r0) * c.position(theta, phi);
}

Vec4 frame_B(const SurfaceChart& c) {
    return {c.gamma, 0.0, 0.0, c.beta * c.gamma};
}

Vec4 frame_T(const SurfaceChart& c, double theta, double phi) {
    return (1.0 / c.r0) * c.first(theta, phi)[0];
}

Sym2 induced_metric(const SurfaceChart& c, const MetricProvider& m, double theta, double phi) {
    const Mat4 G = m.eval(c.position(theta, phi));
    const auto d = c.first(theta, phi);
    Sym2 s;
    s.tt = inner(G, d[0], d[0]);
    s.tp = inner(G, d[0], d[1]);
    s.pp = inner(G, d[1], d[1]);
    if (!(s.det() > 0) || !(s.tt > 0))
        throw SingularError("induced metric is not positive definite");
    return s;
}

namespace {

// trace of the second fundamental form before normal projection:
// V^c = sigma^{ab} (d2Y^c_{ab} + Gamma^c_{de} dY^d_a dY^e_b)
Vec4 curvature_trace(const Sym2& inv, const std::array<Vec4, 2>& d1,
                     const std::array<Vec4, 3>& d2, const Christoffels& christ) {
    Vec4 v{0, 0, 0, 0};
    for (int cIdx = 0; cIdx < 4; ++cIdx) {
        double s = inv.tt * d2[0][cIdx] + 2.0 * inv.tp * d2[1][cIdx] + inv.pp * d2[2][cIdx];
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                const double gab = christ[cIdx][a][b];
                if (gab == 0.0) continue;
                s += gab * (inv.tt * d1[0][a] * d1[0][b] + inv.tp * (d1[0][a] * d1[1][b] + d1[1][a] * d1[0][b]) +
                            inv.pp * d1[1][a] * d1[1][b]);
            }
        }
        v[cIdx] = s;
    }
    return v;
}

Vec4 normal_project(const Mat4& G, const Sym2& inv, const std::array<Vec4, 2>& d1, const Vec4& v) {
    // subtract sigma^{ab} <v, dY_a> dY_b
    const double vt = inner(G, v, d1[0]);
    const double vp = inner(G, v, d1[1]);
    const double ct = inv.tt * vt + inv.tp * vp;
    const double cp = inv.tp * vt + inv.pp * vp;
    Vec4 out;
    for (int i = 0; i < 4; ++i) out[i] = v[i] - ct * d1[0][i] - cp * d1[1][i];
    return out;
}

} // namespace

MeanCurvature mean_curvature_vector(const SurfaceChart& c, const MetricProvider& m, double theta,
                                    double phi) {
    const Vec4 y = c.position(theta, phi);
    const Mat4 G = m.eval(y);
    const auto d1 = c.first(theta, phi);
    const auto d2 = c.second(theta, phi);
    Sym2 s;
    s.tt = inner(G, d1[0], d1[0]);
    s.tp = inner(G, d1[0], d1[1]);
    s.pp = inner(G, d1[1], d1[1]);
    const Sym2 inv = s.inverse();
    const Christoffels christ = christoffel(G, m.deriv(y));
    const Vec4 v = curvature_trace(inv, d1, d2, christ);
    MeanCurvature mc;
    mc.H = normal_project(G, inv, d1, v);
    const double h2 = inner(G, mc.H, mc.H);
    if (!(h2 > 0)) throw NotSpacelikeError("mean curvature vector is not spacelike");
    mc.norm = std::sqrt(h2);
    return mc;
}

Vec4 dual_normal(const SurfaceChart& c, const MetricProvider& m, double theta, double phi,
                 const Vec4& H) {
    const Vec4 y = c.position(theta, phi);
    const Mat4 G = m.eval(y);
    const auto d1 = c.first(theta, phi);
    // J spans the kernel of the three covectors G dY_t, G dY_p, G H
    const Vec4 w = hodge_complement(lower(G, d1[0]), lower(G, d1[1]), lower(G, H));
    const double w2 = inner(G, w, w);
    if (!(w2 < 0)) throw NotSpacelikeError("normal bundle is degenerate (no timelike dual)");
    const double h2 = inner(G, H, H);
    if (!(h2 > 0)) throw NotSpacelikeError("mean curvature vector is not spacelike");
    double scale = std::sqrt(h2 / -w2);
    if (w[0] < 0) scale = -scale; // future-directed: positive time component
    return scale * w;
}

GeometrySnapshot::GeometrySnapshot(const SurfaceChart& chart, const MetricProvider& metric,
                                   int order, int nphi)
    : grid_(order, nphi), r0_(chart.r0) {
    const int n = grid_.nodes();
    Y_.resize(n);
    Yt_.resize(n);
    Yp_.resize(n);
    G_.resize(n);
    sigma_.resize(n);
    sigma_inv_.resize(n);
    sqrt_det_.resize(n);
    H_.resize(n);
    absH_.resize(n);
    J_.resize(n);
    omega_t_.assign(n, 0.0);
    omega_p_.assign(n, 0.0);

    std::vector<Christoffels> christ(n);
    std::vector<Vec4> Jn(n); // J / |H|
    for (int i = 0; i < grid_.ntheta(); ++i) {
        const double t = grid_.theta(i);
        for (int j = 0; j < grid_.nphi(); ++j) {
            const double p = grid_.phi(j);
            const int k = grid_.idx(i, j);
            Y_[k] = chart.position(t, p);
            const auto d1 = chart.first(t, p);
            Yt_[k] = d1[0];
            Yp_[k] = d1[1];
            G_[k] = metric.eval(Y_[k]);
            christ[k] = christoffel(G_[k], metric.deriv(Y_[k]));

            Sym2 s;
            s.tt = inner(G_[k], d1[0], d1[0]);
            s.tp = inner(G_[k], d1[0], d1[1]);
            s.pp = inner(G_[k], d1[1], d1[1]);
            if (!(s.det() > 0) || !(s.tt > 0))
                throw SingularError("induced metric is not positive definite");
            sigma_[k] = s;
            sigma_inv_[k] = s.inverse();
            sqrt_det_[k] = std::sqrt(s.det());

            const auto d2 = chart.second(t, p);
            const Vec4 v = curvature_trace(sigma_inv_[k], d1, d2, christ[k]);
            H_[k] = normal_project(G_[k], sigma_inv_[k], d1, v);
            const double h2 = inner(G_[k], H_[k], H_[k]);
            if (!(h2 > 0)) throw NotSpacelikeError("mean curvature vector is not spacelike");
            absH_[k] = std::sqrt(h2);

            const Vec4 w = hodge_complement(lower(G_[k], d1[0]), lower(G_[k], d1[1]),
                                            lower(G_[k], H_[k]));
            const double w2 = inner(G_[k], w, w);
            if (!(w2 < 0)) throw NotSpacelikeError("normal bundle is degenerate");
            double scale = std::sqrt(h2 / -w2);
            if (w[0] < 0) scale = -scale;
            J_[k] = scale * w;
            Jn[k] = (1.0 / absH_[k]) * J_[k];
        }
    }

    // connection form omega_a = <nabla_{dY/du^a} (J/|H|), H/|H|>: spectral
    // parameter derivatives of the J/|H| component fields plus the
    // Christoffel correction.
    std::vector<double> comp(n), dct, dcp;
    std::vector<Vec4> dJn_t(n, Vec4{0, 0, 0, 0}), dJn_p(n, Vec4{0, 0, 0, 0});
    for (int c = 0; c < 4; ++c) {
        for (int k = 0; k < n; ++k) comp[k] = Jn[k][c];
        dct = grid_.dtheta(comp);
        dcp = grid_.dphi(comp);
        for (int k = 0; k < n; ++k) {
            dJn_t[k][c] = dct[k];
            dJn_p[k][c] = dcp[k];
        }
    }
    for (int k = 0; k < n; ++k) {
        Vec4 cov_t = dJn_t[k], cov_p = dJn_p[k];
        for (int c = 0; c < 4; ++c) {
            double st = 0.0, sp = 0.0;
            for (int a = 0; a < 4; ++a) {
                for (int b = 0; b < 4; ++b) {
                    const double gam = christ[k][c][a][b];
                    if (gam == 0.0) continue;
                    st += gam * Yt_[k][a] * Jn[k][b];
                    sp += gam * Yp_[k][a] * Jn[k][b];
                }
            }
            cov_t[c] += st;
            cov_p[c] += sp;
        }
        const Vec4 Hn = (1.0 / absH_[k]) * H_[k];
        omega_t_[k] = inner(G_[k], cov_t, Hn);
        omega_p_[k] = inner(G_[k], cov_p, Hn);
    }
}

ScalarCalculus surface_calculus(const Grid2D& grid, const std::vector<Sym2>& sigma_inv,
                                const std::vector<double>& sqrt_det,
                                const std::vector<double>& f) {
    const int n = grid.nodes();
    ScalarCalculus out;
    out.dt = grid.dtheta(f);
    out.dp = grid.dphi(f);
    out.grad_t.resize(n);
    out.grad_p.resize(n);
    out.grad_sq.resize(n);
    for (int k = 0; k < n; ++k) {
        out.grad_t[k] = sigma_inv[k].tt * out.dt[k] + sigma_inv[k].tp * out.dp[k];
        out.grad_p[k] = sigma_inv[k].tp * out.dt[k] + sigma_inv[k].pp * out.dp[k];
        out.grad_sq[k] = out.dt[k] * out.grad_t[k] + out.dp[k] * out.grad_p[k];
    }
    // Delta f = (1/sqrt(det)) d_a (sqrt(det) sigma^{ab} d_b f)
    std::vector<double> flux_t(n), flux_p(n);
    for (int k = 0; k < n; ++k) {
        flux_t[k] = sqrt_det[k] * out.grad_t[k];
        flux_p[k] = sqrt_det[k] * out.grad_p[k];
    }
    const auto div_t = grid.dtheta(flux_t);
    const auto div_p = grid.dphi(flux_p);
    out.laplacian.resize(n);
    for (int k = 0; k < n; ++k) out.laplacian[k] = (div_t[k] + div_p[k]) / sqrt_det[k];
    return out;
}

} // namespace qlm
