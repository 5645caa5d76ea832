#include "qlm/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>

#include "json.hpp"

namespace qlm {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / name);
    out << content;
}

nlohmann::json fit_json(const Extrapolation& ex) {
    return {{"limit", ex.limit},
            {"residual", ex.residual},
            {"converged", ex.residual <= 1e-6 * std::max(1.0, std::abs(ex.limit))},
            {"coefficients", {ex.coeffs[0], ex.coeffs[1], ex.coeffs[2]}}};
}

} // namespace

MetricProvider make_metric(const RunConfig& cfg) {
    switch (cfg.scenario) {
    case Scenario::Minkowski:
        return minkowski();
    case Scenario::Schwarzschild:
    case Scenario::BoostedSchwarzschild:
        return schwarzschild_isotropic(cfg.mass);
    case Scenario::CustomDsl:
        return parse_metric(cfg.metric);
    }
    throw ConfigError("unknown scenario");
}

ChartFamily make_family(const RunConfig& cfg) {
    double beta = 0.0;
    if (cfg.scenario == Scenario::BoostedSchwarzschild || cfg.scenario == Scenario::Minkowski ||
        cfg.scenario == Scenario::CustomDsl)
        beta = cfg.beta;
    const double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
    return [beta, gamma](double r0) { return boosted_sphere_chart(beta, gamma, r0); };
}

QleReport run_qle(const RunConfig& cfg) {
    validate(cfg);
    const MetricProvider metric = make_metric(cfg);
    const ChartFamily family = make_family(cfg);

    QleReport rep;
    rep.cfg = cfg;

    std::vector<std::future<QleRow>> jobs;
    for (double r : cfg.radii) {
        jobs.push_back(std::async(std::launch::async, [&, r]() {
            const GeometrySnapshot snap(family(r), metric, cfg.order, cfg.nphi);
            const AxisymMetric2 g2 = axisym_metric(snap);
            const EmbeddingProfile emb = profile_from_metric(snap.grid().gauss(), g2);
            QleRow row;
            row.r0 = r;
            for (const Vec3& a : cfg.observers) {
                const Observer obs{a};
                row.E_finite.push_back(qle_finite(snap, emb, obs));
                row.E_thm1.push_back(qle_limit_form(snap, emb, obs));
            }
            row.raw = energy_momentum_integrals(snap, emb);
            return row;
        }));
    }
    for (auto& j : jobs) rep.rows.push_back(j.get());

    std::vector<double> vals(cfg.radii.size());
    for (size_t o = 0; o < cfg.observers.size(); ++o) {
        for (size_t i = 0; i < cfg.radii.size(); ++i) vals[i] = rep.rows[i].E_finite[o];
        rep.E_finite_fit.push_back(extrapolate(cfg.radii, vals));
        for (size_t i = 0; i < cfg.radii.size(); ++i) vals[i] = rep.rows[i].E_thm1[o];
        rep.E_thm1_fit.push_back(extrapolate(cfg.radii, vals));
    }

    rep.em.radii = cfg.radii;
    for (const auto& row : rep.rows) rep.em.raw.push_back(row.raw);
    auto fit = [&](auto getter, double& limit, double& residual) {
        for (size_t i = 0; i < cfg.radii.size(); ++i) vals[i] = getter(rep.em.raw[i]);
        const Extrapolation ex = extrapolate(cfg.radii, vals);
        limit = ex.limit;
        residual = ex.residual;
    };
    fit([](const RawFourVector& r) { return r.e; }, rep.em.e, rep.em.e_residual);
    for (int i = 0; i < 3; ++i)
        fit([i](const RawFourVector& r) { return r.p[i]; }, rep.em.p[i], rep.em.p_residual[i]);
    if (rep.em.e > norm3(rep.em.p)) {
        const auto mm = minimize_over_observers(rep.em.e, rep.em.p);
        rep.em.m = mm.m;
        rep.em.a_min = mm.a_min;
    } else {
        rep.em.m = std::numeric_limits<double>::quiet_NaN();
        rep.em.a_min = {std::numeric_limits<double>::quiet_NaN(),
                        std::numeric_limits<double>::quiet_NaN(),
                        std::numeric_limits<double>::quiet_NaN()};
    }
    return rep;
}

AdmReport run_adm(const RunConfig& cfg) {
    validate(cfg);
    if (cfg.scenario == Scenario::CustomDsl)
        throw ConfigError("scenario 'custom-dsl' has no slice data; ADM needs slice data");
    AdmReport rep;
    rep.cfg = cfg;
    const double beta = cfg.scenario == Scenario::Schwarzschild ? 0.0 : cfg.beta;
    const double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
    const double mass = cfg.scenario == Scenario::Minkowski ? 0.0 : cfg.mass;
    const SliceData slice = boosted_slice_data(mass, beta, gamma);
    rep.adm = adm_energy_momentum(slice, cfg.radii, cfg.order, cfg.nphi, cfg.residual_tol);

    // paired qle run for the Theorem-2 residuals
    const QleReport qle = run_qle(cfg);
    for (size_t o = 0; o < cfg.observers.size(); ++o) {
        Theorem2Row row;
        row.a = cfg.observers[o];
        row.qle_limit = qle.E_finite_fit[o].limit;
        const double boost = std::sqrt(1.0 + row.a[0] * row.a[0] + row.a[1] * row.a[1] +
                                       row.a[2] * row.a[2]);
        row.adm_combo = boost * rep.adm.E + row.a[0] * rep.adm.P[0] + row.a[1] * rep.adm.P[1] +
                        row.a[2] * rep.adm.P[2];
        row.residual = std::abs(row.qle_limit - row.adm_combo);
        rep.theorem2.push_back(row);
    }
    return rep;
}

EmbedReport run_embed(const RunConfig& cfg) {
    validate(cfg);
    const MetricProvider metric = make_metric(cfg);
    const ChartFamily family = make_family(cfg);
    EmbedReport rep;
    rep.cfg = cfg;
    for (double r : cfg.radii) {
        const GeometrySnapshot snap(family(r), metric, cfg.order, cfg.nphi);
        const AxisymMetric2 g2 = axisym_metric(snap);
        const EmbeddingProfile emb = profile_from_metric(snap.grid().gauss(), g2);
        const auto& gl = snap.grid().gauss();
        for (int i = 0; i < gl.size(); ++i)
            rep.rows.push_back({r, gl.theta()[i], emb.u[i], emb.v[i], emb.H0[i]});
    }
    return rep;
}

std::string write_qle_report(const QleReport& rep) {
    nlohmann::json summary;
    summary["scenario"] = scenario_name(rep.cfg.scenario);
    summary["M"] = rep.cfg.mass;
    summary["beta"] = rep.cfg.beta;
    summary["gamma"] = rep.cfg.gamma();
    summary["order"] = rep.cfg.order;
    summary["nphi"] = rep.cfg.nphi;
    summary["radii"] = rep.cfg.radii;
    summary["conventions"] = {
        {"tau", "tau = -<X, T0>"},
        {"mean_curvature", "H is the trace of the second fundamental form; inward for round spheres"},
        {"extrinsic_curvature", "p_ij = <nabla_{E_i} e0, E_j>, anchored by p(nu,nu) - tr p = <H, e0>"}};

    nlohmann::json observers = nlohmann::json::array();
    for (size_t o = 0; o < rep.cfg.observers.size(); ++o) {
        const Vec3& a = rep.cfg.observers[o];
        observers.push_back({{"a", {a[0], a[1], a[2]}},
                             {"E_finite", fit_json(rep.E_finite_fit[o])},
                             {"E_thm1", fit_json(rep.E_thm1_fit[o])}});
    }
    summary["observers"] = observers;

    nlohmann::json em;
    em["e"] = rep.em.e;
    em["p"] = {rep.em.p[0], rep.em.p[1], rep.em.p[2]};
    em["e_residual"] = rep.em.e_residual;
    em["p_residual"] = {rep.em.p_residual[0], rep.em.p_residual[1], rep.em.p_residual[2]};
    if (std::isnan(rep.em.m)) {
        em["m"] = nullptr;
        em["a_min"] = nullptr;
        em["timelike"] = false;
    } else {
        em["m"] = rep.em.m;
        em["a_min"] = {rep.em.a_min[0], rep.em.a_min[1], rep.em.a_min[2]};
        em["timelike"] = true;
    }
    summary["energy_momentum"] = em;

    if (!rep.cfg.out.empty()) {
        for (size_t o = 0; o < rep.cfg.observers.size(); ++o) {
            std::string csv = "r0,E_finite,E_thm1,e_integrand,p1,p2,p3\n";
            for (const auto& row : rep.rows) {
                csv += fmt(row.r0) + "," + fmt(row.E_finite[o]) + "," + fmt(row.E_thm1[o]) + "," +
                       fmt(row.raw.e) + "," + fmt(row.raw.p[0]) + "," + fmt(row.raw.p[1]) + "," +
                       fmt(row.raw.p[2]) + "\n";
            }
            write_file(rep.cfg.out, "qle_obs" + std::to_string(o) + ".csv", csv);
        }
        write_file(rep.cfg.out, "summary.json", summary.dump(2) + "\n");
    }
    return summary.dump(2);
}

std::string write_adm_report(const AdmReport& rep) {
    nlohmann::json summary;
    summary["scenario"] = scenario_name(rep.cfg.scenario);
    summary["M"] = rep.cfg.mass;
    summary["beta"] = rep.cfg.beta;
    summary["conventions"] = {
        {"extrinsic_curvature", "p_ij = <nabla_{E_i} e0, E_j>, anchored by p(nu,nu) - tr p = <H, e0>"}};
    summary["E"] = rep.adm.E;
    summary["P"] = {rep.adm.P[0], rep.adm.P[1], rep.adm.P[2]};
    summary["E_residual"] = rep.adm.E_residual;
    summary["P_residual"] = {rep.adm.P_residual[0], rep.adm.P_residual[1], rep.adm.P_residual[2]};
    nlohmann::json t2 = nlohmann::json::array();
    for (const auto& row : rep.theorem2) {
        t2.push_back({{"a", {row.a[0], row.a[1], row.a[2]}},
                      {"qle_limit", row.qle_limit},
                      {"adm_combo", row.adm_combo},
                      {"residual", row.residual}});
    }
    summary["theorem2"] = t2;

    if (!rep.cfg.out.empty()) {
        std::string csv = "r,E_raw,P1_raw,P2_raw,P3_raw\n";
        for (size_t i = 0; i < rep.adm.radii.size(); ++i) {
            csv += fmt(rep.adm.radii[i]) + "," + fmt(rep.adm.E_raw[i]) + "," +
                   fmt(rep.adm.P_raw[i][0]) + "," + fmt(rep.adm.P_raw[i][1]) + "," +
                   fmt(rep.adm.P_raw[i][2]) + "\n";
        }
        write_file(rep.cfg.out, "adm.csv", csv);
        write_file(rep.cfg.out, "adm_summary.json", summary.dump(2) + "\n");
    }
    return summary.dump(2);
}

std::string write_embed_report(const EmbedReport& rep) {
    std::string csv = "r0,theta,u,v,H0\n";
    for (const auto& row : rep.rows) {
        csv += fmt(row.r0) + "," + fmt(row.theta) + "," + fmt(row.u) + "," + fmt(row.v) + "," +
               fmt(row.H0) + "\n";
    }
    if (!rep.cfg.out.empty()) write_file(rep.cfg.out, "embed.csv", csv);
    return csv;
}

} // namespace qlm
