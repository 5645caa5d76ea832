#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>

#include "qlm/linalg.hpp"

namespace qlm {

/// Spacetime point (y0, y1, y2, y3) in geometric units G = c = 1.
using Point4 = Vec4;

/// dG[c][a][b] = d G_ab / d y^c
using MetricDeriv = std::array<Mat4, 4>;

/// Gamma^c_ab, indexed christ[c][a][b]; symmetric in (a, b).
struct Christoffels {
    std::array<Mat4, 4> g{};
    const Mat4& operator[](int c) const { return g[c]; }
    Mat4& operator[](int c) { return g[c]; }
};

/// A spacetime metric: evaluation, coordinate derivatives, named parameters.
/// Providers are immutable after construction and safe to share across
/// threads.
class MetricProvider {
  public:
    using EvalFn = std::function<Mat4(const Point4&)>;
    using DerivFn = std::function<MetricDeriv(const Point4&)>;

    MetricProvider(std::string name, EvalFn eval, DerivFn deriv,
                   std::map<std::string, double> params)
        : name_(std::move(name)), eval_(std::move(eval)), deriv_(std::move(deriv)),
          params_(std::move(params)) {}

    Mat4 eval(const Point4& y) const { return eval_(y); }
    MetricDeriv deriv(const Point4& y) const { return deriv_(y); }
    const std::string& name() const { return name_; }
    const std::map<std::string, double>& params() const { return params_; }
    double param(const std::string& key, double fallback = 0.0) const {
        auto it = params_.find(key);
        return it == params_.end() ? fallback : it->second;
    }

  private:
    std::string name_;
    EvalFn eval_;
    DerivFn deriv_;
    std::map<std::string, double> params_;
};

/// Flat metric diag(-1, 1, 1, 1); derivatives vanish identically.
MetricProvider minkowski();

/// Schwarzschild in isotropic coordinates:
///   G_00 = -(1 - M/2rho)^2 / (1 + M/2rho)^2,  G_ii = (1 + M/2rho)^4
/// with rho^2 = (y1)^2 + (y2)^2 + (y3)^2. Closed-form derivatives. Queries
/// with rho <= M/2 (inside the coordinate singularity of the isotropic form)
/// raise DomainError.
MetricProvider schwarzschild_isotropic(double mass);

/// Gamma^c_ab = 1/2 G^{cd} (d_a G_db + d_b G_da - d_d G_ab)
Christoffels christoffel(const Mat4& G, const MetricDeriv& dG);
Christoffels christoffel(const MetricProvider& m, const Point4& y);

/// Central finite differences with one Richardson refinement, step
/// h = max(1, |y|) * 1e-6. Used by DSL-backed providers and as an oracle for
/// the closed-form derivatives.
MetricDeriv finite_difference_deriv(const MetricProvider::EvalFn& eval, const Point4& y);

} // namespace qlm
