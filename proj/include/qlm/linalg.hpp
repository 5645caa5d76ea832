#pragma once

#include <array>
#include <cmath>

#include "qlm/errors.hpp"

namespace qlm {

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;
using Mat3 = std::array<std::array<double, 3>, 3>;
using Mat4 = std::array<std::array<double, 4>, 4>;

inline Vec4 operator+(const Vec4& a, const Vec4& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

inline Vec4 operator-(const Vec4& a, const Vec4& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

inline Vec4 operator*(double s, const Vec4& a) {
    return {s * a[0], s * a[1], s * a[2], s * a[3]};
}

/// g_{ab} x^a y^b
inline double inner(const Mat4& g, const Vec4& x, const Vec4& y) {
    double s = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) s += g[a][b] * x[a] * y[b];
    return s;
}

/// Covector g_{ab} x^b
inline Vec4 lower(const Mat4& g, const Vec4& x) {
    Vec4 r{0, 0, 0, 0};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) r[a] += g[a][b] * x[b];
    return r;
}

inline double norm3(const Vec3& a) {
    return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

inline double det3(double a0, double a1, double a2, double b0, double b1, double b2, double c0,
                   double c1, double c2) {
    return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0);
}

/// Gauss-Jordan inverse with partial pivoting.
inline Mat4 inverse(const Mat4& m) {
    Mat4 a = m;
    Mat4 inv{};
    for (int i = 0; i < 4; ++i) inv[i][i] = 1.0;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-300) throw SingularError("singular 4x4 matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const double d = 1.0 / a[col][col];
        for (int j = 0; j < 4; ++j) {
            a[col][j] *= d;
            inv[col][j] *= d;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (int j = 0; j < 4; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

/// w^d = eps^{d a b c} p_a q_b r_c (permutation symbol on raw components).
/// The result annihilates all three covectors: p_d w^d = q_d w^d = r_d w^d = 0.
inline Vec4 hodge_complement(const Vec4& p, const Vec4& q, const Vec4& r) {
    Vec4 w;
    w[0] = det3(p[1], p[2], p[3], q[1], q[2], q[3], r[1], r[2], r[3]);
    w[1] = -det3(p[0], p[2], p[3], q[0], q[2], q[3], r[0], r[2], r[3]);
    w[2] = det3(p[0], p[1], p[3], q[0], q[1], q[3], r[0], r[1], r[3]);
    w[3] = -det3(p[0], p[1], p[2], q[0], q[1], q[2], r[0], r[1], r[2]);
    return w;
}

/// Eigenvalues of a symmetric 4x4 by cyclic Jacobi sweeps (for signature checks).
inline std::array<double, 4> symmetric_eigenvalues(const Mat4& m) {
    Mat4 a = m;
    for (int sweep = 0; sweep < 32; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-28) break;
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                if (a[p][q] == 0.0) continue;
                const double phi = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
                const double c = std::cos(phi), s = std::sin(phi);
                for (int k = 0; k < 4; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 4; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    return {a[0][0], a[1][1], a[2][2], a[3][3]};
}

/// True when the symmetric matrix has Lorentzian signature (-,+,+,+).
inline bool is_lorentzian(const Mat4& g) {
    const auto ev = symmetric_eigenvalues(g);
    int neg = 0, pos = 0;
    for (double e : ev) {
        if (e < 0)
            ++neg;
        else if (e > 0)
            ++pos;
    }
    return neg == 1 && pos == 3;
}

} // namespace qlm
