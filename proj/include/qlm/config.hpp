#pragma once

#include <string>
#include <vector>

#include "qlm/linalg.hpp"
#include "qlm/metric_dsl.hpp"

namespace qlm {

enum class Scenario { Minkowski, Schwarzschild, BoostedSchwarzschild, CustomDsl };

/// Run configuration, read from a TOML-style key/value file with an optional
/// [metric] section of DSL component expressions. CLI flags override file
/// keys before validation.
struct RunConfig {
    Scenario scenario = Scenario::Schwarzschild;
    double mass = 1.0;
    double beta = 0.0;
    std::vector<double> radii;    // defaults to {250, 500, 1000, 2000} * max(M, 1)
    int order = 64;
    int nphi = 16;
    std::vector<Vec3> observers = {{0.0, 0.0, 0.0}};
    std::string out;              // output directory; empty = stdout summary only
    double residual_tol = 1e-6;
    bool has_metric = false;
    MetricSource metric;

    double gamma() const { return 1.0 / std::sqrt(1.0 - beta * beta); }
};

/// Parse the config text. Throws ParseError for malformed syntax and
/// ConfigError for unknown keys or bad value types; validation of ranges
/// happens in validate().
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

/// Range checks; throws ConfigError naming the offending field.
void validate(const RunConfig& cfg);

std::string scenario_name(Scenario s);

} // namespace qlm
