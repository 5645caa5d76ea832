#include <cmath>
#include <random>

#include "doctest.h"
#include "qlm/spacetime.hpp"

using namespace qlm;

namespace {

std::mt19937 rng(12345);

Point4 random_point(double rmin, double rmax) {
    std::uniform_real_distribution<double> u(-1.0, 1.0), ur(rmin, rmax);
    Vec3 dir = {u(rng), u(rng), u(rng)};
    const double n = std::max(norm3(dir), 1e-3);
    const double r = ur(rng);
    return {u(rng) * rmax, dir[0] / n * r, dir[1] / n * r, dir[2] / n * r};
}

// 4th-order central differences of the closed-form metric; independent of the
// provider's own deriv path
MetricDeriv high_order_fd(const MetricProvider& m, const Point4& y, double h) {
    MetricDeriv out{};
    for (int c = 0; c < 4; ++c) {
        Point4 y1 = y, y2 = y, y3 = y, y4 = y;
        y1[c] -= 2 * h;
        y2[c] -= h;
        y3[c] += h;
        y4[c] += 2 * h;
        const Mat4 g1 = m.eval(y1), g2 = m.eval(y2), g3 = m.eval(y3), g4 = m.eval(y4);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                out[c][a][b] = (g1[a][b] - 8.0 * g2[a][b] + 8.0 * g3[a][b] - g4[a][b]) / (12.0 * h);
    }
    return out;
}

} // namespace

TEST_CASE("minkowski metric") {
    const MetricProvider m = minkowski();
    for (int trial = 0; trial < 20; ++trial) {
        const Point4 y = random_point(0.5, 50.0);
        const Mat4 g = m.eval(y);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                CHECK(g[a][b] == ((a == b) ? (a == 0 ? -1.0 : 1.0) : 0.0));
        const Christoffels c = christoffel(m, y);
        for (int i = 0; i < 4; ++i)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) CHECK(c[i][a][b] == 0.0);
    }
}

TEST_CASE("signature check at random points") {
    const MetricProvider mk = minkowski();
    const MetricProvider sch = schwarzschild_isotropic(1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const Point4 y = random_point(0.6, 100.0);
        CHECK(is_lorentzian(mk.eval(y)));
        CHECK(is_lorentzian(sch.eval(y)));
    }
}

TEST_CASE("isotropic schwarzschild closed forms") {
    // M = 2, rho = 2: s = 1/2, G00 = -(1/2)^2/(3/2)^2 = -1/9, Gii = (3/2)^4
    const MetricProvider m = schwarzschild_isotropic(2.0);
    const Mat4 g = m.eval({0.0, 2.0, 0.0, 0.0});
    CHECK(g[0][0] == doctest::Approx(-1.0 / 9.0).epsilon(1e-15));
    CHECK(g[1][1] == doctest::Approx(5.0625).epsilon(1e-15));
    CHECK(g[2][2] == doctest::Approx(5.0625).epsilon(1e-15));
    CHECK(g[3][3] == doctest::Approx(5.0625).epsilon(1e-15));
    CHECK(g[0][1] == 0.0);
}

TEST_CASE("metric symmetry") {
    const MetricProvider m = schwarzschild_isotropic(1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Point4 y = random_point(0.6, 30.0);
        const Mat4 g = m.eval(y);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) CHECK(g[a][b] == g[b][a]);
    }
}

TEST_CASE("mass zero reduces to minkowski") {
    const MetricProvider m0 = schwarzschild_isotropic(0.0);
    const MetricProvider mk = minkowski();
    for (int trial = 0; trial < 50; ++trial) {
        const Point4 y = random_point(0.1, 100.0);
        const Mat4 a = m0.eval(y), b = mk.eval(y);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(a[i][j] == doctest::Approx(b[i][j]).epsilon(1e-15));
    }
}

TEST_CASE("domain guard at rho <= M/2") {
    const MetricProvider m = schwarzschild_isotropic(2.0);
    CHECK_THROWS_AS(m.eval({0.0, 0.5, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(m.deriv({0.0, 1.0, 0.0, 0.0}), DomainError); // rho = M/2 exactly
    CHECK_NOTHROW(m.eval({0.0, 1.0001, 0.0, 0.0}));
}

TEST_CASE("closed-form derivative vs central differences at rho = 10M") {
    const double M = 1.0;
    const MetricProvider m = schwarzschild_isotropic(M);
    for (int trial = 0; trial < 10; ++trial) {
        const Point4 y = random_point(10.0 * M, 10.0 * M);
        const MetricDeriv dg = m.deriv(y);
        // plain central difference oracle; error relative to the magnitude of
        // the derivative tensor at the point
        const double h = 1e-4;
        MetricDeriv fd{};
        double scale = 1e-12;
        for (int c = 0; c < 4; ++c) {
            Point4 yp = y, ym = y;
            yp[c] += h;
            ym[c] -= h;
            const Mat4 gp = m.eval(yp), gm = m.eval(ym);
            for (int a = 0; a < 4; ++a) {
                for (int b = 0; b < 4; ++b) {
                    fd[c][a][b] = (gp[a][b] - gm[a][b]) / (2.0 * h);
                    scale = std::max(scale, std::abs(fd[c][a][b]));
                }
            }
        }
        for (int c = 0; c < 4; ++c)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    CHECK(std::abs(dg[c][a][b] - fd[c][a][b]) / scale < 1e-8);
    }
}

TEST_CASE("fd policy matches closed form to 1e-6 relative") {
    const MetricProvider m = schwarzschild_isotropic(1.0);
    auto eval = [&m](const Point4& y) { return m.eval(y); };
    for (int trial = 0; trial < 10; ++trial) {
        const Point4 y = random_point(3.0, 200.0);
        const MetricDeriv exact = m.deriv(y);
        const MetricDeriv fd = finite_difference_deriv(eval, y);
        double num = 0.0, den = 0.0;
        for (int c = 0; c < 4; ++c)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    num += std::abs(exact[c][a][b] - fd[c][a][b]);
                    den += std::abs(exact[c][a][b]);
                }
        CHECK(num / den < 1e-6);
    }
}

TEST_CASE("christoffel lower-index symmetry at random points") {
    const MetricProvider m = schwarzschild_isotropic(1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const Point4 y = random_point(0.8, 50.0);
        const Christoffels c = christoffel(m, y);
        for (int i = 0; i < 4; ++i)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) CHECK(c[i][a][b] == c[i][b][a]);
    }
}

TEST_CASE("christoffel against high-order fd oracle at rho = 10M") {
    const double M = 1.0;
    const MetricProvider m = schwarzschild_isotropic(M);
    const Point4 y = {0.0, 6.0, -3.0, std::sqrt(100.0 - 45.0)}; // rho = 10
    const Christoffels c = christoffel(m, y);
    const Christoffels oracle = christoffel(m.eval(y), high_order_fd(m, y, 1e-2));
    for (int i = 0; i < 4; ++i)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                CHECK(std::abs(c[i][a][b] - oracle[i][a][b]) < 1e-8);
}

TEST_CASE("singular metric inversion error") {
    Mat4 g{}; // all zero
    MetricDeriv dg{};
    CHECK_THROWS_AS(christoffel(g, dg), SingularError);
}
