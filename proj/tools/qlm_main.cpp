// qlm — quasilocal energy-momentum of 2-surface families, with an ADM
// cross-check. Subcommands:
//   qlm qle   --config FILE [--beta X] [--mass X] [--order N] [--out DIR]
//   qlm adm   --config FILE [--out DIR]
//   qlm embed --config FILE [--out DIR]
// Exit codes: 0 success, 2 config error, 3 numerical failure.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "qlm/runner.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::optional<double> beta, mass;
    std::optional<int> order;
    std::optional<std::string> out;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_overrides) {
    cmd->add_option("--config", opts.config_path, "config file (TOML-style)")->required();
    if (with_overrides) {
        opts.beta = std::nullopt;
        cmd->add_option_function<double>("--beta", [&opts](double v) { opts.beta = v; },
                                         "override boost parameter");
        cmd->add_option_function<double>("--mass", [&opts](double v) { opts.mass = v; },
                                         "override mass M");
        cmd->add_option_function<int>("--order", [&opts](int v) { opts.order = v; },
                                      "override quadrature order");
    }
    cmd->add_option_function<std::string>("--out", [&opts](const std::string& v) { opts.out = v; },
                                          "output directory for CSV/JSON reports");
}

qlm::RunConfig load(const CommonOpts& opts) {
    qlm::RunConfig cfg = qlm::load_config_file(opts.config_path);
    if (opts.beta) cfg.beta = *opts.beta;
    if (opts.mass) cfg.mass = *opts.mass;
    if (opts.order) cfg.order = *opts.order;
    if (opts.out) cfg.out = *opts.out;
    qlm::validate(cfg);
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasilocal energy-momentum at spatial infinity"};
    app.require_subcommand(1);

    CommonOpts qle_opts, adm_opts, embed_opts;
    CLI::App* qle_cmd = app.add_subcommand("qle", "quasilocal energy ladder and (e, p, m, a_min)");
    add_common(qle_cmd, qle_opts, true);
    CLI::App* adm_cmd = app.add_subcommand("adm", "ADM energy-momentum and Theorem-2 residuals");
    add_common(adm_cmd, adm_opts, true);
    CLI::App* embed_cmd = app.add_subcommand("embed", "dump isometric embedding profiles (u, v, H0)");
    add_common(embed_cmd, embed_opts, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (qle_cmd->parsed()) {
            const auto rep = qlm::run_qle(load(qle_opts));
            std::cout << qlm::write_qle_report(rep) << "\n";
        } else if (adm_cmd->parsed()) {
            const auto rep = qlm::run_adm(load(adm_opts));
            std::cout << qlm::write_adm_report(rep) << "\n";
        } else if (embed_cmd->parsed()) {
            const auto rep = qlm::run_embed(load(embed_opts));
            std::cout << qlm::write_embed_report(rep);
        }
    } catch (const qlm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qlm::ParseError& e) {
        std::cerr << "config error: " << e.what() << " (line " << e.line << ", column " << e.column
                  << ")\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
