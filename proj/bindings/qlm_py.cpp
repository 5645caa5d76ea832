#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qlm/runner.hpp"

namespace py = pybind11;

namespace {

qlm::MetricProvider metric_from_name(const std::string& name, double mass) {
    if (name == "minkowski") return qlm::minkowski();
    if (name == "schwarzschild") return qlm::schwarzschild_isotropic(mass);
    throw qlm::ConfigError("unknown metric '" + name + "' (use minkowski or schwarzschild)");
}

py::dict em_to_dict(const qlm::EnergyMomentum& em) {
    py::dict out;
    out["e"] = em.e;
    out["p"] = em.p;
    out["e_residual"] = em.e_residual;
    out["p_residual"] = em.p_residual;
    if (std::isnan(em.m)) {
        out["m"] = py::none();
        out["a_min"] = py::none();
    } else {
        out["m"] = em.m;
        out["a_min"] = em.a_min;
    }
    py::list raw;
    for (size_t i = 0; i < em.radii.size(); ++i) {
        py::dict row;
        row["r0"] = em.radii[i];
        row["e"] = em.raw[i].e;
        row["p"] = em.raw[i].p;
        raw.append(row);
    }
    out["ladder"] = raw;
    return out;
}

} // namespace

PYBIND11_MODULE(_qlm, m) {
    m.doc() = "quasilocal energy-momentum of 2-surface families and the ADM cross-check";

    py::register_exception<qlm::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<qlm::ParseError>(m, "ExprParseError", PyExc_ValueError);
    py::register_exception<qlm::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<qlm::EmbeddingError>(m, "EmbeddingError", PyExc_ValueError);
    py::register_exception<qlm::NotSpacelikeError>(m, "NotSpacelikeError", PyExc_ValueError);
    py::register_exception<qlm::ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::class_<qlm::MetricProvider>(m, "Metric")
        .def_property_readonly("name", &qlm::MetricProvider::name)
        .def("eval", [](const qlm::MetricProvider& mp, const qlm::Vec4& y) { return mp.eval(y); })
        .def("christoffel", [](const qlm::MetricProvider& mp, const qlm::Vec4& y) {
            const auto c = qlm::christoffel(mp, y);
            return std::array<qlm::Mat4, 4>{c[0], c[1], c[2], c[3]};
        });

    m.def("minkowski", &qlm::minkowski);
    m.def("schwarzschild_isotropic", &qlm::schwarzschild_isotropic, py::arg("mass"));
    m.def(
        "metric_from_expressions",
        [](const std::map<std::string, std::string>& components,
           const std::map<std::string, double>& params) {
            qlm::MetricSource src;
            src.params = params;
            for (const auto& [key, text] : components) {
                if (key.size() != 3 || key[0] != 'g')
                    throw qlm::ConfigError("component keys must look like g00..g33");
                src.components[{key[1] - '0', key[2] - '0'}] = text;
            }
            return qlm::parse_metric(src);
        },
        py::arg("components"), py::arg("params") = std::map<std::string, double>{},
        "Build a metric from DSL component expressions keyed g00..g33");

    m.def(
        "eval_expression",
        [](const std::string& text, const std::map<std::string, double>& bindings) {
            return qlm::dsl::eval_expr(*qlm::dsl::parse_expression(text), bindings);
        },
        py::arg("text"), py::arg("bindings") = std::map<std::string, double>{});

    py::class_<qlm::GeometrySnapshot>(m, "SurfaceGeometry")
        .def_property_readonly("r0", &qlm::GeometrySnapshot::r0)
        .def_property_readonly("mean_curvature_norm", &qlm::GeometrySnapshot::mean_curvature_norm)
        .def_property_readonly("area_element", &qlm::GeometrySnapshot::area_element)
        .def("integrate", &qlm::GeometrySnapshot::integrate);

    py::class_<qlm::EmbeddingProfile>(m, "EmbeddingProfile")
        .def_readonly("u", &qlm::EmbeddingProfile::u)
        .def_readonly("v", &qlm::EmbeddingProfile::v)
        .def_readonly("H0", &qlm::EmbeddingProfile::H0);

    m.def(
        "surface_geometry",
        [](const qlm::MetricProvider& metric, double beta, double r0, int order, int nphi) {
            const double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
            return qlm::GeometrySnapshot(qlm::boosted_sphere_chart(beta, gamma, r0), metric, order,
                                         nphi);
        },
        py::arg("metric"), py::arg("beta"), py::arg("r0"), py::arg("order") = 48,
        py::arg("nphi") = 16,
        "Extrinsic geometry of the coordinate sphere r0 in the boosted slice");

    m.def(
        "embedding_profile",
        [](const qlm::GeometrySnapshot& snap) {
            return qlm::profile_from_metric(snap.grid().gauss(), qlm::axisym_metric(snap));
        },
        py::arg("surface"), "Isometric embedding profile (u, v, H0) of the induced metric");

    m.def(
        "qle_finite",
        [](const qlm::GeometrySnapshot& snap, const qlm::EmbeddingProfile& emb, const qlm::Vec3& a) {
            return qlm::qle_finite(snap, emb, qlm::Observer{a});
        },
        py::arg("surface"), py::arg("embedding"), py::arg("a") = qlm::Vec3{0, 0, 0});

    m.def(
        "qle_limit_form",
        [](const qlm::GeometrySnapshot& snap, const qlm::EmbeddingProfile& emb, const qlm::Vec3& a) {
            return qlm::qle_limit_form(snap, emb, qlm::Observer{a});
        },
        py::arg("surface"), py::arg("embedding"), py::arg("a") = qlm::Vec3{0, 0, 0});

    m.def(
        "energy_momentum",
        [](const qlm::MetricProvider& metric, double beta, const std::vector<double>& radii,
           int order, int nphi) {
            const double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
            const auto em = qlm::energy_momentum(
                metric, [beta, gamma](double r) { return qlm::boosted_sphere_chart(beta, gamma, r); },
                radii, order, nphi);
            return em_to_dict(em);
        },
        py::arg("metric"), py::arg("beta"), py::arg("radii"), py::arg("order") = 48,
        py::arg("nphi") = 16,
        "Extrapolated (e, p, m, a_min) for the boosted coordinate-sphere family");

    m.def(
        "minimize_over_observers",
        [](double e, const qlm::Vec3& p) {
            const auto mm = qlm::minimize_over_observers(e, p);
            return py::make_tuple(mm.m, mm.a_min);
        },
        py::arg("e"), py::arg("p"));

    m.def("observer_energy", &qlm::observer_energy, py::arg("e"), py::arg("p"), py::arg("a"));

    m.def(
        "extrapolate",
        [](const std::vector<double>& radii, const std::vector<double>& values) {
            const auto ex = qlm::extrapolate(radii, values);
            return py::make_tuple(ex.limit, ex.residual);
        },
        py::arg("radii"), py::arg("values"));

    m.def(
        "adm_energy_momentum",
        [](double mass, double beta, const std::vector<double>& radii, int order, int nphi) {
            const double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
            const auto res =
                qlm::adm_energy_momentum(qlm::boosted_slice_data(mass, beta, gamma), radii, order, nphi);
            py::dict out;
            out["E"] = res.E;
            out["P"] = res.P;
            out["E_residual"] = res.E_residual;
            out["P_residual"] = res.P_residual;
            return out;
        },
        py::arg("mass"), py::arg("beta"), py::arg("radii"), py::arg("order") = 48,
        py::arg("nphi") = 8, "ADM energy-momentum of the boosted Schwarzschild slice");

    m.def(
        "run_qle",
        [](const std::string& config_text) {
            const auto rep = qlm::run_qle(qlm::parse_config(config_text));
            return qlm::write_qle_report(rep);
        },
        py::arg("config_text"), "Run the qle pipeline on config text; returns the JSON summary");

    m.def("metric_by_name", &metric_from_name, py::arg("name"), py::arg("mass") = 1.0);

    m.attr("__version__") = "0.1.0";
}
