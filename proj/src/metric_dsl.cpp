#include "qlm/metric_dsl.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace qlm {

MetricProvider parse_metric(const MetricSource& src) {
    struct Component {
        int a, b;
        dsl::ExprPtr expr;
    };
    auto compiled = std::make_shared<std::vector<Component>>();
    for (const auto& [key, text] : src.components) {
        if (key.first < 0 || key.first > 3 || key.second < 0 || key.second > 3 ||
            key.first > key.second)
            throw ConfigError("metric component index out of range (need 0 <= a <= b <= 3)");
        compiled->push_back({key.first, key.second, dsl::parse_expression(text)});
    }

    // reject identifiers that are neither coordinates nor declared parameters
    const std::array<std::string, 4> coords = {"y0", "y1", "y2", "y3"};
    std::function<void(const dsl::Expr&)> check = [&](const dsl::Expr& e) {
        if (e.kind == dsl::Expr::Kind::Variable) {
            bool ok = src.params.count(e.name) > 0;
            for (const auto& c : coords) ok = ok || e.name == c;
            if (!ok) throw ConfigError("unknown identifier '" + e.name + "' in metric expression");
        }
        if (e.lhs) check(*e.lhs);
        if (e.rhs) check(*e.rhs);
    };
    for (const auto& c : *compiled) check(*c.expr);

    auto params = std::make_shared<std::map<std::string, double>>(src.params);
    auto eval = [compiled, params](const Point4& y) {
        std::map<std::string, double> bind = *params;
        bind["y0"] = y[0];
        bind["y1"] = y[1];
        bind["y2"] = y[2];
        bind["y3"] = y[3];
        Mat4 g{};
        for (const auto& c : *compiled) {
            const double v = dsl::eval_expr(*c.expr, bind);
            g[c.a][c.b] = v;
            g[c.b][c.a] = v;
        }
        if (!is_lorentzian(g))
            throw SignatureError("DSL metric is not Lorentzian (-,+,+,+) at the queried point");
        return g;
    };
    MetricProvider::EvalFn eval_fn = eval;
    auto deriv = [eval_fn](const Point4& y) { return finite_difference_deriv(eval_fn, y); };
    return {"custom-dsl", eval_fn, deriv, src.params};
}

} // namespace qlm
