#include "qlm/adm.hpp"

#include <cmath>
#include <numbers>

#include "qlm/grid.hpp"
#include "qlm/quasilocal.hpp"

namespace qlm {

namespace {

struct IsotropicFactors {
    double F2, G2, dF2, dG2; // values and d/ds, s = M/(2 rho)
};

IsotropicFactors factors(double s) {
    const double om = 1.0 - s, op = 1.0 + s;
    IsotropicFactors f;
    f.F2 = op * op / (om * om);
    f.G2 = 1.0 / (op * op * op * op);
    f.dF2 = 4.0 * op / (om * om * om);
    f.dG2 = -4.0 / (op * op * op * op * op);
    return f;
}

} // namespace

SliceData boosted_slice_data(double mass, double beta, double gamma) {
    if (!(gamma > 0) || std::abs(gamma * gamma * (1.0 - beta * beta) - 1.0) > 1e-12)
        throw DomainError("boosted_slice_data: need gamma^2 (1 - beta^2) = 1");
    if (mass < 0) throw DomainError("boosted_slice_data: mass must be nonnegative");

    const double bg = beta * gamma;
    SliceData d;
    d.params = {{"M", mass}, {"beta", beta}, {"gamma", gamma}};
    d.embed = [bg, gamma](const Vec3& y) -> Vec4 {
        return {bg * y[2], y[0], y[1], gamma * y[2]};
    };
    d.frame = {Vec4{0, 1, 0, 0}, Vec4{0, 0, 1, 0}, Vec4{bg, 0, 0, gamma}};

    auto rho_of = [gamma](const Vec3& y) {
        // rho is the unprimed spatial radius: y3 = gamma y3' on the slice
        return std::sqrt(y[0] * y[0] + y[1] * y[1] + gamma * gamma * y[2] * y[2]);
    };
    auto guard = [mass](double rho) {
        if (!(rho > mass / 2.0))
            throw DomainError("slice data queried at rho <= M/2");
    };

    const double M = mass, b = beta, g = gamma;
    d.metric = [M, b, g, rho_of, guard](const Vec3& y) {
        const double rho = rho_of(y);
        guard(rho);
        const double s = M / (2.0 * rho);
        const auto f = factors(s);
        Mat3 out{};
        out[0][0] = out[1][1] = 1.0 / f.G2;
        out[2][2] = g * g * (1.0 / f.G2 - b * b / f.F2);
        return out;
    };

    if (beta == 0.0) {
        // time-symmetric slice: g_ij = (1 + M/2r)^4 delta_ij, closed form
        d.metric_deriv = [M, guard](const Vec3& y) {
            const double r = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
            guard(r);
            const double s = M / (2.0 * r);
            const double op = 1.0 + s;
            const double dpsi4_dr = 4.0 * op * op * op * (-s / r); // d(1+s)^4/dr
            std::array<Mat3, 3> out{};
            for (int k = 0; k < 3; ++k) {
                const double dr = y[k] / r;
                for (int i = 0; i < 3; ++i) out[k][i][i] = dpsi4_dr * dr;
            }
            return out;
        };
    } else {
        auto metric_fn = d.metric;
        d.metric_deriv = [metric_fn](const Vec3& y) {
            const double r = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
            const double h = std::max(1.0, r) * 1e-6;
            std::array<Mat3, 3> out{};
            for (int k = 0; k < 3; ++k) {
                auto central = [&](double step) {
                    Vec3 yp = y, ym = y;
                    yp[k] += step;
                    ym[k] -= step;
                    const Mat3 gp = metric_fn(yp), gm = metric_fn(ym);
                    Mat3 dd{};
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j) dd[i][j] = (gp[i][j] - gm[i][j]) / (2.0 * step);
                    return dd;
                };
                const Mat3 dh = central(h), dh2 = central(h / 2.0);
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) out[k][i][j] = (4.0 * dh2[i][j] - dh[i][j]) / 3.0;
            }
            return out;
        };
    }

    // future unit normal of the slice as a spacetime field:
    //   e0 = (gamma F^2, 0, 0, beta gamma G^2) / sqrt(gamma^2 F^2 - beta^2 gamma^2 G^2)
    auto e0_field = [M, b, g](const Point4& y) -> Vec4 {
        const double rho = std::sqrt(y[1] * y[1] + y[2] * y[2] + y[3] * y[3]);
        if (!(rho > M / 2.0)) throw DomainError("slice normal queried at rho <= M/2");
        const double s = M / (2.0 * rho);
        const auto f = factors(s);
        const double D = std::sqrt(g * g * f.F2 - b * b * g * g * f.G2);
        return {g * f.F2 / D, 0.0, 0.0, b * g * f.G2 / D};
    };
    d.normal = e0_field;

    // p_ij = <nabla_{E_i} e0, E_j>, from the closed-form e0 field and the
    // spacetime Christoffels
    const MetricProvider metric4 = schwarzschild_isotropic(mass);
    auto frame = d.frame;
    auto embed = d.embed;
    d.ext_curvature = [metric4, frame, embed, e0_field, M, b, g](const Vec3& yp) {
        const Vec4 y = embed(yp);
        const double rho = std::sqrt(y[1] * y[1] + y[2] * y[2] + y[3] * y[3]);
        const double s = M / (2.0 * rho);
        const auto f = factors(s);
        const double D2 = g * g * f.F2 - b * b * g * g * f.G2;
        const double D = std::sqrt(D2);
        const double dD = (g * g * f.dF2 - b * b * g * g * f.dG2) / (2.0 * D);
        // d e0 / ds
        const double de0_ds = g * (f.dF2 * D - f.F2 * dD) / D2;
        const double de3_ds = b * g * (f.dG2 * D - f.G2 * dD) / D2;
        // ds/dy^c (spatial)
        Vec4 ds{0, -s * y[1] / (rho * rho), -s * y[2] / (rho * rho), -s * y[3] / (rho * rho)};

        const Mat4 G = metric4.eval(y);
        const Christoffels christ = christoffel(G, metric4.deriv(y));
        const Vec4 e0 = e0_field(y);

        Mat3 p{};
        for (int i = 0; i < 3; ++i) {
            // directional derivative of e0 along E_i
            double dir_s = 0.0;
            for (int a = 0; a < 4; ++a) dir_s += frame[i][a] * ds[a];
            Vec4 cov{de0_ds * dir_s, 0.0, 0.0, de3_ds * dir_s};
            for (int c = 0; c < 4; ++c) {
                double corr = 0.0;
                for (int a = 0; a < 4; ++a)
                    for (int bb = 0; bb < 4; ++bb) corr += christ[c][a][bb] * frame[i][a] * e0[bb];
                cov[c] += corr;
            }
            for (int j = 0; j < 3; ++j) p[i][j] = inner(G, cov, frame[j]);
        }
        // symmetrize away roundoff
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                const double avg = 0.5 * (p[i][j] + p[j][i]);
                p[i][j] = p[j][i] = avg;
            }
        return p;
    };
    return d;
}

namespace {

template <typename F>
double sphere_integral(double r, int order, int nphi, F&& node_value) {
    const GaussGrid gl(order);
    const double wphi = 2.0 * std::numbers::pi / nphi;
    double total = 0.0;
    for (int i = 0; i < gl.size(); ++i) {
        const double st = gl.sin_theta()[i], x = gl.x()[i];
        double ring = 0.0;
        for (int j = 0; j < nphi; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / nphi;
            const Vec3 nu = {st * std::sin(phi), st * std::cos(phi), x};
            const Vec3 y = {r * nu[0], r * nu[1], r * nu[2]};
            ring += node_value(y, nu);
        }
        total += gl.weight()[i] * ring * wphi;
    }
    return total * r * r;
}

} // namespace

double adm_energy_at(const SliceData& d, double r, int order, int nphi) {
    const double flux = sphere_integral(r, order, nphi, [&](const Vec3& y, const Vec3& nu) {
        const auto dg = d.metric_deriv(y);
        double s = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s += (dg[j][i][j] - dg[i][j][j]) * nu[i];
        return s;
    });
    return flux / (16.0 * std::numbers::pi);
}

Vec3 adm_momentum_at(const SliceData& d, double r, int order, int nphi) {
    Vec3 out{0, 0, 0};
    for (int k = 0; k < 3; ++k) {
        const double flux = sphere_integral(r, order, nphi, [&](const Vec3& y, const Vec3& nu) {
            const Mat3 p = d.ext_curvature(y);
            const double tr = p[0][0] + p[1][1] + p[2][2];
            double s = 0.0;
            for (int i = 0; i < 3; ++i) s += 2.0 * (p[i][k] - (i == k ? tr : 0.0)) * nu[i];
            return s;
        });
        out[k] = flux / (16.0 * std::numbers::pi);
    }
    return out;
}

AdmResult adm_energy_momentum(const SliceData& d, const std::vector<double>& radii, int order,
                              int nphi, double residual_tol) {
    AdmResult out;
    out.radii = radii;
    for (double r : radii) {
        out.E_raw.push_back(adm_energy_at(d, r, order, nphi));
        out.P_raw.push_back(adm_momentum_at(d, r, order, nphi));
    }
    auto fit = [&](const std::vector<double>& vals, double& limit, double& residual) {
        const Extrapolation ex = extrapolate(radii, vals);
        limit = ex.limit;
        residual = ex.residual;
        if (ex.residual > residual_tol * std::max(1.0, std::abs(ex.limit)))
            throw ConvergenceError("non-convergent ADM ladder");
    };
    std::vector<double> vals(radii.size());
    fit(out.E_raw, out.E, out.E_residual);
    for (int k = 0; k < 3; ++k) {
        for (size_t i = 0; i < radii.size(); ++i) vals[i] = out.P_raw[i][k];
        fit(vals, out.P[k], out.P_residual[k]);
    }
    return out;
}

} // namespace qlm
