#pragma once

#include <map>
#include <string>
#include <utility>

#include "qlm/expr.hpp"
#include "qlm/spacetime.hpp"

namespace qlm {

/// User-supplied metric: component expressions keyed by index pair (a <= b),
/// plus named parameter values. Expressions may reference y0..y3, the
/// declared parameters and numeric literals.
struct MetricSource {
    std::map<std::pair<int, int>, std::string> components;
    std::map<std::string, double> params;
};

/// Compile a MetricSource into a provider. Unlisted components are zero;
/// derivatives use the finite-difference policy of the spacetime module.
/// The Lorentzian signature of the result is checked on every evaluation
/// (a deferred runtime error, raised at first use of a bad metric).
MetricProvider parse_metric(const MetricSource& src);

} // namespace qlm
