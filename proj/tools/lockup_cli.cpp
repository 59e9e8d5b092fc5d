// Command-line front end: single runs, the five-attack batch and gain bounds.

#include "lockup/csv_io.hpp"
#include "lockup/errors.hpp"
#include "lockup/scenario_config.hpp"
#include "lockup/simulation.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>

namespace fs = std::filesystem;
using namespace lockup;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIntegration = 2;

struct RunOutput {
    std::string label;
    ScenarioResult result;
    RunManifest manifest;
};

RunOutput execute(const std::string& label, const ScenarioFile& file, const fs::path& outdir) {
    const Scenario scenario = build_scenario(file);
    const auto start = std::chrono::steady_clock::now();
    ScenarioResult result = run_scenario(scenario);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const fs::path csv = outdir / (label + ".csv");
    const fs::path manifest_path = outdir / (label + ".manifest.json");
    std::vector<std::string> outputs;
    if (!result.series.empty()) {
        write_csv(result, csv);
        outputs.push_back(csv.filename().string());
    }
    outputs.push_back(manifest_path.filename().string());
    RunManifest manifest =
        make_manifest(label, serialize_scenario(file), result, wall, std::move(outputs));
    write_manifest(manifest, manifest_path);
    return {label, std::move(result), std::move(manifest)};
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : "-"; }

void print_summary(const std::vector<RunOutput>& runs) {
    std::cout << std::left << std::setw(28) << "scenario" << std::setw(9) << "success"
              << std::setw(16) << "t_lockup[s]" << std::setw(12) << "max_lambda" << std::setw(12)
              << "final_v" << "termination\n";
    for (const auto& r : runs) {
        const auto& m = r.result.metrics;
        std::ostringstream tl, ml, fv;
        tl << (m.time_to_lockup ? std::to_string(*m.time_to_lockup) : std::string("-"));
        ml << std::fixed << std::setprecision(4) << m.max_lambda;
        fv << std::fixed << std::setprecision(2) << m.final_v;
        std::cout << std::left << std::setw(28) << r.label << std::setw(9)
                  << (m.success ? "yes" : "no") << std::setw(16) << tl.str() << std::setw(12)
                  << ml.str() << std::setw(12) << fv.str() << to_string(r.result.termination);
        if (r.result.failure) std::cout << " (" << *r.result.failure << ")";
        std::cout << '\n';
    }
}

void write_summary(const std::vector<RunOutput>& runs, const std::string& road, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "scenario,road,success,time_to_lockup,max_lambda,final_v,peak_torque_cmd,termination,csv\n";
    for (const auto& r : runs) {
        const auto& m = r.result.metrics;
        out << r.label << ',' << road << ',' << (m.success ? "true" : "false") << ','
            << opt(m.time_to_lockup) << ',' << format_double(m.max_lambda) << ','
            << format_double(m.final_v) << ',' << format_double(m.peak_torque_cmd) << ','
            << to_string(r.result.termination) << ','
            << (r.manifest.outputs.empty() ? "" : r.manifest.outputs.front()) << '\n';
    }
}

int cmd_run(const std::string& config, const std::string& out, const std::string& label) {
    const ScenarioFile file = load_scenario(config);
    fs::create_directories(out);
    const Scenario sc = build_scenario(file);
    ActuatorModel probe(sc.actuator, sc.sim.dt);
    if (probe.warning()) std::cerr << "warning: " << *probe.warning() << '\n';
    std::vector<RunOutput> runs;
    runs.push_back(execute(label, file, out));
    print_summary(runs);
    return runs.front().result.failure ? kExitIntegration : kExitOk;
}

int cmd_batch(const std::string& suite, const std::string& road, const std::string& outdir,
              unsigned jobs) {
    if (suite != "five-attacks") throw ConfigError("--suite", "unknown suite '" + suite + "'");
    const std::string preset = road == "dry" ? "dry_asphalt" : "wet_asphalt";
    fs::create_directories(outdir);

    const auto scenarios = five_attacks_suite(preset);
    std::vector<RunOutput> runs(scenarios.size());
    std::vector<std::future<RunOutput>> pending;
    std::size_t next = 0;
    auto launch = [&] {
        const auto& [name, file] = scenarios[next];
        pending.push_back(std::async(std::launch::async, execute, road + "_" + name, file, fs::path(outdir)));
        ++next;
    };
    const unsigned width = std::max(1u, jobs);
    std::size_t collected = 0;
    while (collected < scenarios.size()) {
        while (next < scenarios.size() && pending.size() - collected < width) launch();
        runs[collected] = pending[collected].get();
        ++collected;
    }

    write_summary(runs, preset, fs::path(outdir) / ("summary_" + road + ".csv"));
    print_summary(runs);
    for (const auto& r : runs)
        if (r.result.failure) return kExitIntegration;
    return kExitOk;
}

int cmd_gains(const std::string& config) {
    const ScenarioFile file = load_scenario(config);
    const GainBounds g = gain_bounds(file);
    std::cout << "mu_max        " << format_double(g.mu_max) << '\n'
              << "mu_hat_max    " << format_double(g.mu_hat_max) << '\n'
              << "v_min         " << format_double(g.v_min) << " m/s\n"
              << "kstar_prime   " << format_double(g.kstar_prime) << " 1/s  (prop1 gain k)\n"
              << "kstar         " << format_double(g.kstar) << " 1/s  (prop2/prop3 gain k_a)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wheel-lockup brake attack simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    std::string config, out = "out", label = "run";
    auto* run = app.add_subcommand("run", "Simulate one scenario");
    run->add_option("--config", config, "Scenario document (INI)")->required();
    run->add_option("--out", out, "Output directory");
    run->add_option("--label", label, "Base name for the output files");

    std::string suite = "five-attacks", road = "dry", outdir = "out";
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    auto* batch = app.add_subcommand("batch", "Run a predefined scenario suite");
    batch->add_option("--suite", suite, "Suite name")->check(CLI::IsMember({"five-attacks"}));
    batch->add_option("--road", road, "Road preset")->check(CLI::IsMember({"dry", "wet"}));
    batch->add_option("--outdir", outdir, "Output directory");
    batch->add_option("--jobs", jobs, "Parallel runs");

    std::string gains_config;
    auto* gains = app.add_subcommand("gains", "Print the attacker-side gain bounds");
    gains->add_option("--config", gains_config, "Scenario document (INI)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*run) return cmd_run(config, out, label);
        if (*batch) return cmd_batch(suite, road, outdir, jobs);
        if (*gains) return cmd_gains(gains_config);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const IntegrationError& e) {
        std::cerr << "integration failure: " << e.what() << '\n';
        return kExitIntegration;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitOk;
}
