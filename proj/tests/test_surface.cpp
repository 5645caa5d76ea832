#include <cmath>

#include "doctest.h"
#include "qlm/metric_dsl.hpp"
#include "qlm/surface.hpp"

using namespace qlm;

namespace {

// second-order coefficients of the boosted-sphere geometry, used as
// asymptotic oracles below
struct BoostOracle {
    double M, beta, gamma, b2; // b2 = beta^2 gamma^2

    double rho_tilde(double ct) const { return std::sqrt(1.0 + b2 * ct * ct); }

    // 1/r0^2 coefficient of |H| - 2/r0
    double mean_curvature_coeff(double t) const {
        const double s = std::sin(t), c = std::cos(t);
        const double rt = rho_tilde(c);
        const double n = M / (rt * rt * rt) *
                         (6.0 + 6.0 * b2 + 2.0 * b2 * b2 * s * s * c * c);
        return 2.0 * M / rt * (1.0 + 2.0 * b2 * c * c) - n;
    }

    // limit of r0^3 <nabla_{dY/dtheta} J, H>
    double connection_coeff(double t) const {
        const double s = std::sin(t), c = std::cos(t);
        const double rt = rho_tilde(c);
        const double rt3 = rt * rt * rt, rt5 = rt3 * rt * rt;
        const double bprime =
            2.0 * M * beta * gamma * gamma *
            (s * (1.0 - b2 * s * s + 2.0 * b2 * c * c) / rt3 +
             3.0 * b2 * c * c * s * (b2 * s * s - 1.0) / rt5);
        return 2.0 * bprime + 8.0 * M / rt * beta * gamma * gamma * s;
    }
};

} // namespace

TEST_CASE("boosted sphere chart parametrization") {
    const double beta = 0.6, gamma = 1.25, r0 = 7.0;
    const SurfaceChart c = boosted_sphere_chart(beta, gamma, r0);

    const Vec4 pole = c.position(0.0, 0.3);
    CHECK(pole[0] == doctest::Approx(beta * gamma * r0));
    CHECK(pole[1] == doctest::Approx(0.0));
    CHECK(pole[2] == doctest::Approx(0.0));
    CHECK(pole[3] == doctest::Approx(gamma * r0));

    const Vec4 equator = c.position(std::numbers::pi / 2.0, 0.0);
    CHECK(equator[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(equator[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(equator[2] == doctest::Approx(r0));
    CHECK(std::abs(equator[3]) < 1e-14 * r0);

    // slice constraint gamma y0 - beta gamma y3 = 0 on a grid of nodes
    for (double t = 0.1; t < 3.1; t += 0.37) {
        for (double p = 0.0; p < 6.2; p += 0.9) {
            const Vec4 y = c.position(t, p);
            CHECK(std::abs(gamma * y[0] - beta * gamma * y[3]) < 1e-12 * r0);
        }
    }

    CHECK_THROWS_AS(boosted_sphere_chart(0.6, 1.0, r0), DomainError); // inconsistent pair
    CHECK_THROWS_AS(boosted_sphere_chart(0.0, 1.0, -1.0), DomainError);
}

TEST_CASE("round sphere induced metric in minkowski") {
    const double r0 = 4.0;
    const MetricProvider m = minkowski();
    const SurfaceChart c = boosted_sphere_chart(0.0, 1.0, r0);
    for (double t = 0.2; t < 3.0; t += 0.44) {
        const Sym2 s = induced_metric(c, m, t, 1.1);
        CHECK(s.tt == doctest::Approx(r0 * r0).epsilon(1e-13));
        CHECK(s.pp == doctest::Approx(r0 * r0 * std::sin(t) * std::sin(t)).epsilon(1e-13));
        CHECK(std::abs(s.tp) < 1e-12);
    }
}

TEST_CASE("boosted chart in minkowski is still a round sphere") {
    const double r0 = 5.0, beta = 0.6, gamma = 1.25;
    const MetricProvider m = minkowski();
    const SurfaceChart c = boosted_sphere_chart(beta, gamma, r0);
    const Sym2 s = induced_metric(c, m, 0.9, 0.4);
    CHECK(s.tt == doctest::Approx(r0 * r0).epsilon(1e-13));
    CHECK(s.pp == doctest::Approx(r0 * r0 * std::pow(std::sin(0.9), 2)).epsilon(1e-13));
}

TEST_CASE("induced metric asymptotics on the boosted schwarzschild sphere") {
    const double M = 1.0, beta = 0.6, gamma = 1.25;
    const double b2 = beta * beta * gamma * gamma;
    const MetricProvider m = schwarzschild_isotropic(M);
    auto residual_tt = [&](double r0, double t) {
        const SurfaceChart c = boosted_sphere_chart(beta, gamma, r0);
        const Sym2 s = induced_metric(c, m, t, 0.7);
        const double ct = std::cos(t), st = std::sin(t);
        const double rho = r0 * std::sqrt(1.0 + b2 * ct * ct);
        return s.tt / (r0 * r0) - (1.0 + 2.0 * M / rho * (1.0 + 2.0 * b2 * st * st));
    };
    auto residual_area = [&](double r0, double t) {
        const SurfaceChart c = boosted_sphere_chart(beta, gamma, r0);
        const Sym2 s = induced_metric(c, m, t, 0.7);
        const double ct = std::cos(t), st = std::sin(t);
        const double rho = r0 * std::sqrt(1.0 + b2 * ct * ct);
        return std::sqrt(s.det()) / (r0 * r0 * st) - (1.0 + 2.0 * M / rho * (1.0 + b2 * st * st));
    };
    for (double t : {0.4, 1.0, 1.9, 2.8}) {
        // leading error is O(1/r0^2): doubling r0 divides it by ~4
        const double q_tt = residual_tt(200.0, t) / residual_tt(400.0, t);
        CHECK(q_tt == doctest::Approx(4.0).epsilon(0.1));
        const double q_ar = residual_area(200.0, t) / residual_area(400.0, t);
        CHECK(q_ar == doctest::Approx(4.0).epsilon(0.1));
    }
}

TEST_CASE("mean curvature of the minkowski round sphere") {
    const double r0 = 3.0;
    const MetricProvider m = minkowski();
    const SurfaceChart c = boosted_sphere_chart(0.0, 1.0, r0);
    for (double t : {0.3, 1.2, 2.6}) {
        for (double p : {0.0, 2.1}) {
            const MeanCurvature mc = mean_curvature_vector(c, m, t, p);
            CHECK(mc.norm == doctest::Approx(2.0 / r0).epsilon(1e-12));
            const Vec4 expect = {0.0, -2.0 / r0 * std::sin(t) * std::sin(p),
                                 -2.0 / r0 * std::sin(t) * std::cos(p), -2.0 / r0 * std::cos(t)};
            for (int i = 0; i < 4; ++i)
                CHECK(mc.H[i] == doctest::Approx(expect[i]).epsilon(1e-11));
        }
    }
}

TEST_CASE("|H| expansion for the static schwarzschild sphere") {
    // beta = 0, M = 1: |H| = 2/r0 - 4/r0^2 + O(1/r0^3)
    const double M = 1.0;
    const MetricProvider m = schwarzschild_isotropic(M);
    auto coeff = [&](double r0) {
        const SurfaceChart c = boosted_sphere_chart(0.0, 1.0, r0);
        const MeanCurvature mc = mean_curvature_vector(c, m, 1.1, 0.0);
        return (mc.norm - 2.0 / r0) * r0 * r0;
    };
    // Richardson: fit c + d/r + e/r^2 through three radii
    const double c1 = coeff(1000.0), c2 = coeff(2000.0), c3 = coeff(4000.0);
    const double fit = (c1 - 6.0 * c2 + 8.0 * c3) / 3.0;
    CHECK(fit == doctest::Approx(-4.0 * M).epsilon(1e-5));
}

TEST_CASE("boosted |H| second-order coefficient matches the closed form") {
    const double M = 1.0, beta = 0.6, gamma = 1.25;
    const BoostOracle oracle{M, beta, gamma, beta * beta * gamma * gamma};
    const MetricProvider m = schwarzschild_isotropic(M);
    const GaussGrid gl(8); // 8 theta probes
    for (int i = 0; i < gl.size(); ++i) {
        const double t = gl.theta()[i];
        auto coeff = [&](double r0) {
            const SurfaceChart c = boosted_sphere_chart(beta, gamma, r0);
            return (mean_curvature_vector(c, m, t, 0.9).norm - 2.0 / r0) * r0 * r0;
        };
        const double c1 = coeff(1000.0 * M), c2 = coeff(2000.0 * M), c3 = coeff(4000.0 * M);
        const double fit = (c1 - 6.0 * c2 + 8.0 * c3) / 3.0;
        const double want = oracle.mean_curvature_coeff(t);
        CHECK(std::abs(fit - want) < 0.01 * std::max(std::abs(want), 1.0));
    }
}

TEST_CASE("dual normal on the minkowski round sphere") {
    const double r0 = 6.0;
    const MetricProvider m = minkowski();
    const SurfaceChart c = boosted_sphere_chart(0.0, 1.0, r0);
    const MeanCurvature mc = mean_curvature_vector(c, m, 0.8, 1.3);
    const Vec4 J = dual_normal(c, m, 0.8, 1.3, mc.H);
    CHECK(J[0] == doctest::Approx(2.0 / r0).epsilon(1e-12));
    for (int i = 1; i < 4; ++i) CHECK(std::abs(J[i]) < 1e-13);
}

TEST_CASE("r0 J approaches 2B on the boosted schwarzschild family") {
    const double M = 1.0, beta = 0.6, gamma = 1.25;
    const MetricProvider m = schwarzschild_isotropic(M);
    const Vec4 B = {gamma, 0.0, 0.0, beta * gamma};
    auto deviation = [&](double r0) {
        const SurfaceChart c = boosted_sphere_chart(beta, gamma, r0);
        const MeanCurvature mc = mean_curvature_vector(c, m, 1.2, 0.5);
        const Vec4 J = dual_normal(c, m, 1.2, 0.5, mc.H);
        double dev = 0.0;
        for (int i = 0; i < 4; ++i) dev = std::max(dev, std::abs(r0 * J[i] - 2.0 * B[i]));
        return dev;
    };
    CHECK(deviation(1e5) < 1e-3);
    // O(1/r0) approach
    CHECK(deviation(1e4) / deviation(2e4) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("snapshot invariants on the boosted schwarzschild sphere") {
    const double M = 1.0, beta = 0.6, gamma = 1.25, r0 = 50.0;
    const MetricProvider m = schwarzschild_isotropic(M);
    const GeometrySnapshot snap(boosted_sphere_chart(beta, gamma, r0), m, 24, 8);

    for (int k = 0; k < snap.nodes(); ++k) {
        const Mat4& G = snap.ambient_metric()[k];
        const Vec4& H = snap.mean_curvature()[k];
        const Vec4& J = snap.dual()[k];
        const double h2 = snap.mean_curvature_norm()[k] * snap.mean_curvature_norm()[k];

        // defining relations of the dual pair
        CHECK(std::abs(inner(G, J, H)) < 1e-10 * h2);
        CHECK(std::abs(inner(G, J, J) + h2) < 1e-10 * h2);
        CHECK(J[0] > 0.0);

        // normality of H and J against both tangent vectors
        const double scale_t = snap.mean_curvature_norm()[k] * r0; // ~ |H| |dY|
        CHECK(std::abs(inner(G, H, snap.dY_dtheta()[k])) < 1e-9 * scale_t);
        CHECK(std::abs(inner(G, H, snap.dY_dphi()[k])) < 1e-9 * scale_t);
        CHECK(std::abs(inner(G, J, snap.dY_dtheta()[k])) < 1e-9 * scale_t);
        CHECK(std::abs(inner(G, J, snap.dY_dphi()[k])) < 1e-9 * scale_t);
    }

    // axisymmetry: scalar fields phi-independent
    const Grid2D& grid = snap.grid();
    for (int i = 0; i < grid.ntheta(); ++i) {
        const double h0 = snap.mean_curvature_norm()[grid.idx(i, 0)];
        const double w0 = snap.omega_theta()[grid.idx(i, 0)];
        for (int j = 1; j < grid.nphi(); ++j) {
            CHECK(std::abs(snap.mean_curvature_norm()[grid.idx(i, j)] - h0) < 1e-12);
            CHECK(std::abs(snap.omega_theta()[grid.idx(i, j)] - w0) < 1e-12 * (std::abs(w0) + 1.0));
        }
    }
}

TEST_CASE("frame asymptotics of N and B") {
    const double M = 1.0, beta = 0.6, gamma = 1.25;
    const MetricProvider m = schwarzschild_isotropic(M);
    auto frame_errors = [&](double r0, double t) {
        const SurfaceChart c = boosted_sphere_chart(beta, gamma, r0);
        const Mat4 G = m.eval(c.position(t, 0.3));
        const Vec4 N = frame_N(c, t, 0.3);
        const Vec4 B = frame_B(c);
        const Vec4 T = frame_T(c, t, 0.3);
        return std::array<double, 4>{std::abs(inner(G, N, N) - 1.0),
                                     std::abs(inner(G, B, B) + 1.0), std::abs(inner(G, N, T)),
                                     std::abs(inner(G, B, T))};
    };
    const auto e1 = frame_errors(100.0, 1.0);
    const auto e2 = frame_errors(200.0, 1.0);
    for (int i = 0; i < 4; ++i) {
        CHECK(e1[i] > 0.0);
        CHECK(e1[i] / e2[i] == doctest::Approx(2.0).epsilon(0.1)); // O(1/r0)
    }
}

TEST_CASE("leading mean curvature r0 |H| -> 2 for all families") {
    const MetricProvider m = schwarzschild_isotropic(1.0);
    for (double beta : {0.0, 0.6}) {
        const double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
        auto dev = [&](double r0) {
            const SurfaceChart c = boosted_sphere_chart(beta, gamma, r0);
            return std::abs(r0 * mean_curvature_vector(c, m, 0.9, 0.1).norm - 2.0);
        };
        CHECK(dev(1e5) < 1e-4);
        CHECK(dev(1e4) / dev(2e4) == doctest::Approx(2.0).epsilon(0.1));
    }
}

TEST_CASE("connection form vanishes for constant-time minkowski charts") {
    const MetricProvider m = minkowski();
    for (double beta : {0.0, 0.6}) {
        const double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
        const GeometrySnapshot snap(boosted_sphere_chart(beta, gamma, 3.0), m, 24, 8);
        for (int k = 0; k < snap.nodes(); ++k) {
            CHECK(std::abs(snap.omega_theta()[k]) < 1e-9);
            CHECK(std::abs(snap.omega_phi()[k]) < 1e-9);
        }
    }
}

TEST_CASE("static schwarzschild connection form vanishes") {
    // both terms of the theta coefficient carry beta; at beta = 0 the slice
    // is time symmetric and the whole connection form is identically zero
    const MetricProvider m = schwarzschild_isotropic(1.0);
    auto scaled = [&](double r0) {
        const GeometrySnapshot snap(boosted_sphere_chart(0.0, 1.0, r0), m, 16, 4);
        double worst = 0.0;
        for (int k = 0; k < snap.nodes(); ++k) {
            const double h2 = snap.mean_curvature_norm()[k] * snap.mean_curvature_norm()[k];
            worst = std::max(worst, std::abs(r0 * r0 * r0 * snap.omega_theta()[k] * h2));
        }
        return worst;
    };
    CHECK(scaled(1000.0) < 1e-4);
    CHECK(scaled(2000.0) < 1e-4);
}

TEST_CASE("boosted connection form matches the closed-form coefficient") {
    const double M = 1.0, beta = 0.6, gamma = 1.25;
    const BoostOracle oracle{M, beta, gamma, beta * beta * gamma * gamma};
    const MetricProvider m = schwarzschild_isotropic(M);

    auto scaled_samples = [&](double r0) {
        const GeometrySnapshot snap(boosted_sphere_chart(beta, gamma, r0), m, 8, 4);
        std::vector<double> out(snap.grid().ntheta());
        for (int i = 0; i < snap.grid().ntheta(); ++i) {
            const int k = snap.grid().idx(i, 0);
            const double h2 = snap.mean_curvature_norm()[k] * snap.mean_curvature_norm()[k];
            out[i] = r0 * r0 * r0 * snap.omega_theta()[k] * h2; // r0^3 <nabla_t J, H>
        }
        return out;
    };
    const auto s1 = scaled_samples(1000.0), s2 = scaled_samples(2000.0), s3 = scaled_samples(4000.0);
    const GaussGrid gl(8);
    for (int i = 0; i < 8; ++i) {
        const double fit = (s1[i] - 6.0 * s2[i] + 8.0 * s3[i]) / 3.0;
        const double want = oracle.connection_coeff(gl.theta()[i]);
        CHECK(std::abs(fit - want) < 0.01 * std::max(std::abs(want), 1.0));
    }
}

TEST_CASE("trapped sphere in painleve-gullstrand coordinates is rejected") {
    // horizon-penetrating form of the same black hole; spheres with r < 2M
    // are future trapped, so the mean curvature vector is not spacelike
    const std::string r = "sqrt(y1^2 + y2^2 + y3^2)";
    MetricSource src;
    src.params["M"] = 1.0;
    src.components[{0, 0}] = "-(1 - 2*M/" + r + ")";
    src.components[{0, 1}] = "sqrt(2*M/" + r + ") * y1/" + r;
    src.components[{0, 2}] = "sqrt(2*M/" + r + ") * y2/" + r;
    src.components[{0, 3}] = "sqrt(2*M/" + r + ") * y3/" + r;
    src.components[{1, 1}] = "1";
    src.components[{2, 2}] = "1";
    src.components[{3, 3}] = "1";
    const MetricProvider pg = parse_metric(src);

    const SurfaceChart inside = boosted_sphere_chart(0.0, 1.0, 1.0); // r0 = M < 2M
    CHECK_THROWS_AS(mean_curvature_vector(inside, pg, 1.0, 0.5), NotSpacelikeError);

    const SurfaceChart outside = boosted_sphere_chart(0.0, 1.0, 8.0);
    const MeanCurvature mc = mean_curvature_vector(outside, pg, 1.0, 0.5);
    CHECK(mc.norm > 0.0);
}

TEST_CASE("non-spacelike charts are rejected by the induced metric") {
    // a sphere swept steeply through time has a timelike theta-tangent band
    const MetricProvider m = minkowski();
    SurfaceChart c = boosted_sphere_chart(0.0, 1.0, 1.0);
    const double r0 = 1.0;
    c.position = [r0](double t, double p) -> Vec4 {
        return {2.0 * r0 * std::cos(t), r0 * std::sin(t) * std::sin(p),
                r0 * std::sin(t) * std::cos(p), r0 * std::cos(t)};
    };
    c.first = [r0](double t, double p) -> std::array<Vec4, 2> {
        Vec4 dt = {-2.0 * r0 * std::sin(t), r0 * std::cos(t) * std::sin(p),
                   r0 * std::cos(t) * std::cos(p), -r0 * std::sin(t)};
        Vec4 dp = {0.0, r0 * std::sin(t) * std::cos(p), -r0 * std::sin(t) * std::sin(p), 0.0};
        return {dt, dp};
    };
    CHECK_THROWS_AS(induced_metric(c, m, 1.5, 0.3), SingularError);
}

TEST_CASE("degenerate dual direction is rejected") {
    const MetricProvider m = minkowski();
    const SurfaceChart c = boosted_sphere_chart(0.0, 1.0, 2.0);
    // a timelike "H" leaves no timelike direction in its normal complement
    const Vec4 timelike = {1.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(dual_normal(c, m, 1.0, 0.5, timelike), NotSpacelikeError);
}
