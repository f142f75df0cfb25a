// SPDX-License-Identifier: Apache-2.0
//
// irsperf command line: one subcommand per experiment kind.
//
//   irsperf outage --config fig4.json --out results/fig4
//
// Exit status: 0 success, 2 configuration error, 3 numerical
// consistency failure, 1 anything else.

#include "irsperf/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<int> workers;
    std::string out = "irsperf-out";
    bool no_mc = false;
};

nlohmann::json read_config(const std::string& path)
{
    if (path.empty()) return nlohmann::json::object();
    std::ifstream in(path);
    if (!in) throw irsperf::ConfigError({"cannot open config file " + path});
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return nlohmann::json::object();
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw irsperf::ConfigError({path + ": " + e.what()});
    }
}

int run(irsperf::ExperimentKind kind, const Options& o)
{
    try {
        auto spec = irsperf::validate_config(read_config(o.config), kind);
        if (o.seed) spec.plan.seed = *o.seed;
        if (o.trials) {
            spec.plan.trials = *o.trials;
            spec.run_mc = *o.trials > 0;
        }
        if (o.workers) spec.plan.workers = *o.workers;
        if (o.no_mc) spec.run_mc = false;
        spec.output_dir = o.out;
        const auto r = irsperf::run_experiment(spec);
        for (const auto& f : r.files) std::cout << f.string() << '\n';
        std::cout << r.manifest.string() << '\n';
        return 0;
    } catch (const irsperf::ConfigError& e) {
        std::cerr << "configuration error:\n";
        for (const auto& p : e.problems()) std::cerr << "  " << p << '\n';
        return 2;
    } catch (const irsperf::UnsupportedShapeError& e) {
        std::cerr << "configuration error:\n  " << e.what() << '\n';
        return 2;
    } catch (const irsperf::NumericalConsistencyError& e) {
        std::cerr << "numerical consistency failure: " << e.what() << '\n';
        return 3;
    } catch (const irsperf::ConvergenceError& e) {
        std::cerr << "numerical consistency failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Closed-form and Monte-Carlo performance of IRS-aided links over Nakagami-m fading"};
    app.require_subcommand(1);
    app.set_version_flag("--version", irsperf::git_describe());

    Options opt;
    const std::vector<std::pair<irsperf::ExperimentKind, std::string>> subs{
        {irsperf::ExperimentKind::wdist, "PDF and CDF of the reflected sum W"},
        {irsperf::ExperimentKind::snrcdf, "CDF of the optimal SNR"},
        {irsperf::ExperimentKind::outage, "outage probability and its high-SNR asymptote"},
        {irsperf::ExperimentKind::rate, "achievable-rate bounds"},
        {irsperf::ExperimentKind::ser, "SER upper bound and asymptote"},
        {irsperf::ExperimentKind::quantization, "rate percentage under phase quantization"},
        {irsperf::ExperimentKind::correlation, "phase-control schemes under spatial correlation"},
        {irsperf::ExperimentKind::sweep, "metrics along one configuration axis"},
    };
    std::optional<irsperf::ExperimentKind> chosen;
    for (const auto& [kind, help] : subs) {
        auto* sc = app.add_subcommand(irsperf::kind_name(kind), help);
        sc->add_option("--config", opt.config, "JSON configuration or manifest");
        sc->add_option("--seed", opt.seed, "random seed");
        sc->add_option("--trials", opt.trials, "Monte-Carlo trials (0 disables simulation)");
        sc->add_option("--workers", opt.workers, "worker threads (0: all cores)");
        sc->add_option("--out", opt.out, "output directory")->capture_default_str();
        sc->add_flag("--no-mc", opt.no_mc, "analytic curves only");
        sc->callback([&chosen, k = kind] { chosen = k; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    return run(*chosen, opt);
}
