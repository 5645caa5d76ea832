#include "qlm/grid.hpp"

#include <cmath>
#include <numbers>

namespace qlm {

namespace {

// Legendre P_n and its derivative at x, by upward recurrence.
void legendre_pair(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    if (n == 0) {
        p = 1.0;
        dp = 0.0;
        return;
    }
    for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

} // namespace

GaussGrid::GaussGrid(int order) : n_(order) {
    if (order < 2) throw DomainError("quadrature order must be at least 2");
    x_.resize(n_);
    w_.resize(n_);
    const double pi = std::numbers::pi;
    // Newton iteration from the Chebyshev-like initial guess.
    for (int i = 0; i < n_; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n_ + 0.5));
        double p, dp;
        for (int it = 0; it < 100; ++it) {
            legendre_pair(n_, x, p, dp);
            const double dx = -p / dp;
            x += dx;
            if (std::abs(dx) < 1e-15) break;
        }
        legendre_pair(n_, x, p, dp);
        // initial guesses above run from x near +1 downward; store ascending
        x_[n_ - 1 - i] = x;
        w_[n_ - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }

    theta_.resize(n_);
    st_.resize(n_);
    for (int j = 0; j < n_; ++j) {
        theta_[j] = std::acos(x_[j]);
        st_[j] = std::sqrt(1.0 - x_[j] * x_[j]);
    }

    // Barycentric weights for Gauss-Legendre nodes: (-1)^j sqrt((1-x^2) w).
    std::vector<double> lambda(n_);
    for (int j = 0; j < n_; ++j) {
        lambda[j] = (j % 2 ? -1.0 : 1.0) * std::sqrt((1.0 - x_[j] * x_[j]) * w_[j]);
    }
    diff_.assign(static_cast<size_t>(n_) * n_, 0.0);
    for (int j = 0; j < n_; ++j) {
        double rowsum = 0.0;
        for (int k = 0; k < n_; ++k) {
            if (k == j) continue;
            const double d = (lambda[k] / lambda[j]) / (x_[j] - x_[k]);
            diff_[static_cast<size_t>(j) * n_ + k] = d;
            rowsum += d;
        }
        diff_[static_cast<size_t>(j) * n_ + j] = -rowsum;
    }

    // P_m at the nodes and at x = 0, m <= n (projection + antiderivative).
    leg_.assign(static_cast<size_t>(n_ + 1) * n_, 0.0);
    for (int j = 0; j < n_; ++j) {
        double p0 = 1.0, p1 = x_[j];
        leg_[j] = p0;
        leg_[static_cast<size_t>(n_) + j] = p1;
        for (int m = 2; m <= n_; ++m) {
            const double pm = ((2.0 * m - 1.0) * x_[j] * p1 - (m - 1.0) * p0) / m;
            p0 = p1;
            p1 = pm;
            leg_[static_cast<size_t>(m) * n_ + j] = pm;
        }
    }
    leg0_.assign(n_ + 1, 0.0);
    {
        double p0 = 1.0, p1 = 0.0;
        leg0_[0] = p0;
        leg0_[1] = p1;
        for (int m = 2; m <= n_; ++m) {
            const double pm = -(m - 1.0) * p0 / m;
            p0 = p1;
            p1 = pm;
            leg0_[m] = pm;
        }
    }
}

std::vector<double> GaussGrid::deriv_x(const std::vector<double>& f) const {
    std::vector<double> out(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
        const double* row = &diff_[static_cast<size_t>(j) * n_];
        double s = 0.0;
        for (int k = 0; k < n_; ++k) s += row[k] * f[k];
        out[j] = s;
    }
    return out;
}

std::vector<double> GaussGrid::antideriv_from_zero(const std::vector<double>& fx) const {
    // Legendre coefficients of the interpolant; exact for degree < n because
    // the quadrature is exact through degree 2n-1.
    std::vector<double> c(n_, 0.0);
    for (int m = 0; m < n_; ++m) {
        double s = 0.0;
        const double* pm = &leg_[static_cast<size_t>(m) * n_];
        for (int j = 0; j < n_; ++j) s += w_[j] * fx[j] * pm[j];
        c[m] = (2.0 * m + 1.0) / 2.0 * s;
    }
    // integral of P_m is (P_{m+1} - P_{m-1}) / (2m+1) for m >= 1, and
    // int P_0 = x = P_1, all read from the precomputed tables
    std::vector<double> out(n_, 0.0);
    for (int m = 0; m < n_; ++m) {
        const double* upper = &leg_[static_cast<size_t>(m + 1) * n_];
        const double* lower = m >= 1 ? &leg_[static_cast<size_t>(m - 1) * n_] : nullptr;
        const double at_zero = leg0_[m + 1] - (m >= 1 ? leg0_[m - 1] : 0.0);
        const double scale = c[m] / (2.0 * m + 1.0);
        for (int j = 0; j < n_; ++j)
            out[j] += scale * (upper[j] - (lower ? lower[j] : 0.0) - at_zero);
    }
    return out;
}

double GaussGrid::integrate_x(const std::vector<double>& f) const {
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s += w_[j] * f[j];
    return s;
}

std::vector<double> GaussGrid::dtheta_even(const std::vector<double>& f) const {
    auto fx = deriv_x(f);
    for (int j = 0; j < n_; ++j) fx[j] *= -st_[j];
    return fx;
}

std::vector<double> GaussGrid::dtheta_odd(const std::vector<double>& f) const {
    // f = sin(theta) g(x):  f' = cos(theta) g - sin^2(theta) dg/dx
    std::vector<double> g(n_);
    for (int j = 0; j < n_; ++j) g[j] = f[j] / st_[j];
    const auto gx = deriv_x(g);
    std::vector<double> out(n_);
    for (int j = 0; j < n_; ++j) out[j] = x_[j] * g[j] - (1.0 - x_[j] * x_[j]) * gx[j];
    return out;
}

PhiGrid::PhiGrid(int count) : n_(count) {
    if (n_ < 4 || n_ % 2 != 0) throw DomainError("phi sample count must be even and >= 4");
    phi_.resize(n_);
    const double pi = std::numbers::pi;
    for (int j = 0; j < n_; ++j) phi_[j] = 2.0 * pi * j / n_;
    const int nm = mode_count();
    cos_.resize(static_cast<size_t>(nm) * n_);
    sin_.resize(static_cast<size_t>(nm) * n_);
    for (int m = 0; m < nm; ++m) {
        for (int j = 0; j < n_; ++j) {
            cos_[static_cast<size_t>(m) * n_ + j] = std::cos(m * phi_[j]);
            sin_[static_cast<size_t>(m) * n_ + j] = std::sin(m * phi_[j]);
        }
    }
}

void PhiGrid::transform(const double* f, double* a, double* b) const {
    const int nm = mode_count();
    for (int m = 0; m < nm; ++m) {
        double ca = 0.0, cb = 0.0;
        const double* cm = &cos_[static_cast<size_t>(m) * n_];
        const double* sm = &sin_[static_cast<size_t>(m) * n_];
        for (int j = 0; j < n_; ++j) {
            ca += f[j] * cm[j];
            cb += f[j] * sm[j];
        }
        const double scale = (m == 0 || m == n_ / 2) ? 1.0 / n_ : 2.0 / n_;
        a[m] = ca * scale;
        b[m] = cb * scale;
    }
    b[0] = 0.0;
    b[n_ / 2] = 0.0; // Nyquist sine vanishes on the grid
}

void PhiGrid::deriv(const double* f, double* df) const {
    const int nm = mode_count();
    std::vector<double> a(nm), b(nm);
    transform(f, a.data(), b.data());
    for (int j = 0; j < n_; ++j) df[j] = 0.0;
    // the Nyquist cosine mode has zero spectral derivative on the grid
    for (int m = 1; m < n_ / 2; ++m) {
        const double* cm = &cos_[static_cast<size_t>(m) * n_];
        const double* sm = &sin_[static_cast<size_t>(m) * n_];
        for (int j = 0; j < n_; ++j) df[j] += m * (-a[m] * sm[j] + b[m] * cm[j]);
    }
}

Grid2D::Grid2D(int order, int nphi) : gl_(order), ph_(nphi) {}

std::vector<double> Grid2D::dtheta(const std::vector<double>& f) const {
    const int nt = ntheta(), np = nphi();
    const int nm = ph_.mode_count();
    // phi transform per theta ring
    std::vector<double> a(static_cast<size_t>(nt) * nm), b(static_cast<size_t>(nt) * nm);
    for (int i = 0; i < nt; ++i)
        ph_.transform(&f[static_cast<size_t>(i) * np], &a[static_cast<size_t>(i) * nm],
                      &b[static_cast<size_t>(i) * nm]);

    std::vector<double> col(nt), dcol;
    std::vector<double> da(static_cast<size_t>(nt) * nm, 0.0), db(static_cast<size_t>(nt) * nm, 0.0);
    for (int m = 0; m < nm; ++m) {
        const bool odd = (m % 2 == 1);
        for (int pass = 0; pass < 2; ++pass) {
            std::vector<double>& src = pass == 0 ? a : b;
            std::vector<double>& dst = pass == 0 ? da : db;
            if (m == 0 && pass == 1) continue;
            for (int i = 0; i < nt; ++i) col[i] = src[static_cast<size_t>(i) * nm + m];
            dcol = odd ? gl_.dtheta_odd(col) : gl_.dtheta_even(col);
            for (int i = 0; i < nt; ++i) dst[static_cast<size_t>(i) * nm + m] = dcol[i];
        }
    }
    // resynthesize
    std::vector<double> out(static_cast<size_t>(nt) * np, 0.0);
    for (int i = 0; i < nt; ++i) {
        for (int m = 0; m < nm; ++m) {
            const double am = da[static_cast<size_t>(i) * nm + m];
            const double bm = db[static_cast<size_t>(i) * nm + m];
            const double* cm = ph_.cos_row(m);
            const double* sm = ph_.sin_row(m);
            for (int j = 0; j < np; ++j) out[idx(i, j)] += am * cm[j] + bm * sm[j];
        }
    }
    return out;
}

std::vector<double> Grid2D::dphi(const std::vector<double>& f) const {
    const int nt = ntheta(), np = nphi();
    std::vector<double> out(static_cast<size_t>(nt) * np);
    for (int i = 0; i < nt; ++i)
        ph_.deriv(&f[static_cast<size_t>(i) * np], &out[static_cast<size_t>(i) * np]);
    return out;
}

double Grid2D::integrate(const std::vector<double>& f, const std::vector<double>& area) const {
    const int nt = ntheta(), np = nphi();
    const double wphi = 2.0 * std::numbers::pi / np;
    double total = 0.0;
    for (int i = 0; i < nt; ++i) {
        const double wi = gl_.weight()[i] / gl_.sin_theta()[i];
        double ring = 0.0;
        for (int j = 0; j < np; ++j) {
            const int k = idx(i, j);
            ring += f[k] * area[k];
        }
        total += wi * ring * wphi;
    }
    return total;
}

} // namespace qlm
