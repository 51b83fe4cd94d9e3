#include <omp.h>

#include <iostream>

#include <CLI11.hpp>

#include "polyent/constructions.hpp"
#include "polyent/experiment.hpp"
#include "polyent/version.hpp"

namespace {

struct Overrides {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> settings;
};

// Each flag records its raw text; settings are applied after the config
// file so command-line values win.
void add_flag(CLI::App& app, Overrides& o, const std::string& flag, const std::string& key, const std::string& help) {
    app.add_option_function<std::string>(
        flag, [&o, key](const std::string& v) { o.settings.emplace_back(key, v); }, help);
}

void add_common(CLI::App& app, Overrides& o) {
    app.add_option("--config", o.config_path, "flat key = value config file");
    add_flag(app, o, "--system", "system",
             "tower-exp | tower-power:c | sturmian:alpha | full-shift:l | periodic:word | product:spec,spec");
    add_flag(app, o, "--n0", "n0", "first n of the geometric grid");
    add_flag(app, o, "--ratio", "ratio", "grid ratio");
    add_flag(app, o, "--steps", "steps", "number of n values");
    add_flag(app, o, "--eps", "eps", "comma separated eps list");
    add_flag(app, o, "--grid", "grid", "angles per circle / sample size");
    add_flag(app, o, "--levels", "levels", "tower levels for fixed sampling and diagnostics");
    add_flag(app, o, "--level-policy", "level_policy", "auto | fixed | spanning | separated");
    add_flag(app, o, "--out", "out", "output directory");
    add_flag(app, o, "--method", "method", "greedy | greedy-spanning | analytic | analytic-s | symbolic");
    add_flag(app, o, "--seed", "seed", "seed for sampled subsets");
}

polyent::ExperimentConfig resolve(const Overrides& o) {
    polyent::ExperimentConfig cfg;
    if (!o.config_path.empty())
        for (const auto& [k, v] : polyent::read_config_file(o.config_path)) polyent::apply_setting(cfg, k, v);
    for (const auto& [k, v] : o.settings) polyent::apply_setting(cfg, k, v);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polynomial entropy estimates and certified Bowen constructions"};
    app.set_version_flag("--version", std::string(polyent::kToolName) + " " + polyent::kToolVersion);
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "OpenMP threads (0: runtime default); not part of the config");

    Overrides est_o, ver_o, dia_o;
    auto* est = app.add_subcommand("estimate", "count, fit slopes, write counts.csv / fits.json / loglog-*.dat");
    add_common(*est, est_o);
    add_flag(*est, est_o, "--mode", "mode", "polynomial | topological");
    add_flag(*est, est_o, "--tail", "tail", "fraction of the largest n values used in fits");

    auto* ver = app.add_subcommand("verify-construction", "build and certify A, S or a Hedlund family");
    add_common(*ver, ver_o);
    add_flag(*ver, ver_o, "--which", "which", "A | S | hedlund");
    add_flag(*ver, ver_o, "--N", "N", "Bowen window");

    auto* dia = app.add_subcommand("diagnose", "recurrence, distality or word complexity report");
    add_common(*dia, dia_o);
    add_flag(*dia, dia_o, "--check", "check", "recurrence | distality | complexity");
    add_flag(*dia, dia_o, "--m", "m", "recurrence bound (0: ceil(1/eps))");
    add_flag(*dia, dia_o, "--x", "x", "first point (angle@level, shift index or word)");
    add_flag(*dia, dia_o, "--y", "y", "second point");
    add_flag(*dia, dia_o, "--window", "window", "distality window");
    add_flag(*dia, dia_o, "--n-max", "n_max", "largest word length for complexity");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : polyent::kExitUsage;
    }
    if (threads > 0) omp_set_num_threads(threads);

    try {
        if (est->parsed()) return polyent::run_estimate(resolve(est_o), std::cout);
        if (ver->parsed()) return polyent::run_verify_construction(resolve(ver_o), std::cout);
        return polyent::run_diagnose(resolve(dia_o), std::cout);
    } catch (const polyent::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return polyent::kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return polyent::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return polyent::kExitFailure;
    }
}
