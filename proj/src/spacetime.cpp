#include "qlm/spacetime.hpp"

#include <cmath>

namespace qlm {

MetricProvider minkowski() {
    auto eval = [](const Point4&) {
        Mat4 g{};
        g[0][0] = -1.0;
        g[1][1] = g[2][2] = g[3][3] = 1.0;
        return g;
    };
    auto deriv = [](const Point4&) { return MetricDeriv{}; };
    return {"minkowski", eval, deriv, {}};
}

MetricProvider schwarzschild_isotropic(double mass) {
    if (mass < 0) throw DomainError("schwarzschild_isotropic: mass must be nonnegative");
    auto rho_of = [](const Point4& y) {
        return std::sqrt(y[1] * y[1] + y[2] * y[2] + y[3] * y[3]);
    };
    auto guard = [mass](double rho) {
        if (!(rho > mass / 2.0))
            throw DomainError("schwarzschild_isotropic: rho <= M/2 is outside the isotropic chart");
    };
    auto eval = [mass, rho_of, guard](const Point4& y) {
        const double rho = rho_of(y);
        guard(rho);
        const double s = mass / (2.0 * rho);
        Mat4 g{};
        const double om = 1.0 - s, op = 1.0 + s;
        g[0][0] = -(om * om) / (op * op);
        g[1][1] = g[2][2] = g[3][3] = op * op * op * op;
        return g;
    };
    auto deriv = [mass, rho_of, guard](const Point4& y) {
        const double rho = rho_of(y);
        guard(rho);
        const double s = mass / (2.0 * rho);
        const double om = 1.0 - s, op = 1.0 + s;
        // d/ds of the two distinct components
        const double d00 = 4.0 * om / (op * op * op); // d(-om^2/op^2)/ds
        const double dii = 4.0 * op * op * op;        // d(op^4)/ds
        MetricDeriv out{};
        for (int c = 1; c < 4; ++c) {
            const double ds = -s * y[c] / (rho * rho); // ds/dy^c
            out[c][0][0] = d00 * ds;
            out[c][1][1] = out[c][2][2] = out[c][3][3] = dii * ds;
        }
        return out;
    };
    return {"schwarzschild-isotropic", eval, deriv, {{"M", mass}}};
}

Christoffels christoffel(const Mat4& G, const MetricDeriv& dG) {
    const Mat4 inv = inverse(G);
    Christoffels out;
    for (int c = 0; c < 4; ++c) {
        for (int a = 0; a < 4; ++a) {
            for (int b = a; b < 4; ++b) {
                double s = 0.0;
                for (int d = 0; d < 4; ++d) {
                    s += inv[c][d] * (dG[a][d][b] + dG[b][d][a] - dG[d][a][b]);
                }
                out[c][a][b] = 0.5 * s;
                out[c][b][a] = out[c][a][b];
            }
        }
    }
    return out;
}

Christoffels christoffel(const MetricProvider& m, const Point4& y) {
    return christoffel(m.eval(y), m.deriv(y));
}

MetricDeriv finite_difference_deriv(const MetricProvider::EvalFn& eval, const Point4& y) {
    const double r = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[3] * y[3]);
    const double h = std::max(1.0, r) * 1e-6;
    MetricDeriv out{};
    for (int c = 0; c < 4; ++c) {
        auto central = [&](double step) {
            Point4 yp = y, ym = y;
            yp[c] += step;
            ym[c] -= step;
            const Mat4 gp = eval(yp), gm = eval(ym);
            Mat4 d{};
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) d[a][b] = (gp[a][b] - gm[a][b]) / (2.0 * step);
            return d;
        };
        const Mat4 dh = central(h);
        const Mat4 dh2 = central(h / 2.0);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) out[c][a][b] = (4.0 * dh2[a][b] - dh[a][b]) / 3.0;
    }
    return out;
}

} // namespace qlm
