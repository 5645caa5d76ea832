#pragma once

#include <string>
#include <vector>

#include "qlm/adm.hpp"
#include "qlm/config.hpp"
#include "qlm/quasilocal.hpp"

namespace qlm {

/// One radius of the qle convergence table. Energies are per observer, in
/// config order.
struct QleRow {
    double r0 = 0.0;
    std::vector<double> E_finite;
    std::vector<double> E_thm1;
    RawFourVector raw;
};

struct QleReport {
    RunConfig cfg;
    std::vector<QleRow> rows;
    std::vector<Extrapolation> E_finite_fit; // per observer
    std::vector<Extrapolation> E_thm1_fit;
    EnergyMomentum em;
};

struct Theorem2Row {
    Vec3 a;
    double qle_limit = 0.0;     // extrapolated E(Sigma_r, X_r, T0)
    double adm_combo = 0.0;     // sqrt(1+|a|^2) E + a.P
    double residual = 0.0;
};

struct AdmReport {
    RunConfig cfg;
    AdmResult adm;
    std::vector<Theorem2Row> theorem2;
};

struct EmbedRow {
    double r0, theta, u, v, H0;
};

struct EmbedReport {
    RunConfig cfg;
    std::vector<EmbedRow> rows;
};

/// Metric and surface family for a validated config.
MetricProvider make_metric(const RunConfig& cfg);
ChartFamily make_family(const RunConfig& cfg);

QleReport run_qle(const RunConfig& cfg);
AdmReport run_adm(const RunConfig& cfg);
EmbedReport run_embed(const RunConfig& cfg);

/// Write CSV tables and summary.json into cfg.out (created if needed) and
/// return the JSON summary text. With an empty cfg.out nothing is written.
std::string write_qle_report(const QleReport& rep);
std::string write_adm_report(const AdmReport& rep);
std::string write_embed_report(const EmbedReport& rep);

} // namespace qlm
