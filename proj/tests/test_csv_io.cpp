#include <doctest.h>

#include "lockup/csv_io.hpp"
#include "lockup/scenario_config.hpp"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

using namespace lockup;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "lockup_csv_tests";
    fs::create_directories(dir);
    return dir / name;
}

ScenarioResult one_row() {
    ScenarioResult r;
    Series& s = r.series;
    s.t = {0.0};
    s.v = {30.0};
    s.omega = {100.0};
    s.lambda = {0.1};
    s.e_l = {0.1 - 1.0};
    s.mu = {1.0 / 3.0};
    s.torque_cmd = {58.33535765779377};
    s.torque_applied = {std::nextafter(1.0, 2.0)};
    s.d_hat = {-1e-310};
    s.delta_e = {-6.055993983489725};
    s.u = {0.0};
    s.clamped = {0};
    r.metrics = compute_metrics(s);
    return r;
}

}  // namespace

TEST_CASE("number formatting round-trips every double") {
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<std::uint64_t> bits;
    for (int i = 0; i < 100000; ++i) {
        std::uint64_t b = bits(rng);
        double x;
        std::memcpy(&x, &b, sizeof x);
        if (!std::isfinite(x)) continue;
        const double y = parse_double(format_double(x));
        CHECK(std::memcmp(&x, &y, sizeof x) == 0);
    }
    CHECK(parse_double(" 1.5 ") == 1.5);
    CHECK(parse_double("+2") == 2.0);
    CHECK_THROWS_AS(parse_double("1.5x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_double(""), std::invalid_argument);
}

TEST_CASE("one-row series round-trips losslessly") {
    const ScenarioResult r = one_row();
    const fs::path path = scratch("one_row.csv");
    write_csv(r, path);

    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,v,omega,lambda,e_L,mu,torque_cmd,torque_applied,d_hat,delta_e_actual");

    const Series back = read_csv(path);
    CHECK(back.t == r.series.t);
    CHECK(back.v == r.series.v);
    CHECK(back.omega == r.series.omega);
    CHECK(back.lambda == r.series.lambda);
    CHECK(back.e_l == r.series.e_l);
    CHECK(back.mu == r.series.mu);
    CHECK(back.torque_cmd == r.series.torque_cmd);
    CHECK(back.torque_applied == r.series.torque_applied);
    CHECK(back.d_hat == r.series.d_hat);
    CHECK(back.delta_e == r.series.delta_e);
}

TEST_CASE("reparsed simulation output reproduces the metrics exactly") {
    const ScenarioResult r = run_scenario(build_scenario(parse_scenario("")));
    const fs::path path = scratch("full.csv");
    write_csv(r, path);
    const Series back = read_csv(path);
    REQUIRE(back.size() == r.series.size());
    const Metrics m = compute_metrics(back, r.lockup_threshold, r.settling_time);
    CHECK(m.time_to_lockup == r.metrics.time_to_lockup);
    CHECK(m.success == r.metrics.success);
    CHECK(m.final_v == r.metrics.final_v);
    CHECK(m.max_lambda == r.metrics.max_lambda);
    CHECK(m.peak_torque_cmd == r.metrics.peak_torque_cmd);
    CHECK(m.settling_margin == r.metrics.settling_margin);
}

TEST_CASE("CSV errors carry the path") {
    CHECK_THROWS_AS(write_csv(ScenarioResult{}, scratch("empty.csv")), std::invalid_argument);
    try {
        write_csv(one_row(), "/nonexistent/dir/out.csv");
        FAIL("expected an I/O error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("/nonexistent/dir/out.csv") != std::string::npos);
    }

    const fs::path bad_header = scratch("bad_header.csv");
    std::ofstream(bad_header) << "t,v\n0,1\n";
    CHECK_THROWS_AS(read_csv(bad_header), std::runtime_error);

    const fs::path short_row = scratch("short_row.csv");
    std::ofstream(short_row) << kCsvHeader << "\n0,1,2\n";
    CHECK_THROWS_AS(read_csv(short_row), std::runtime_error);

    const fs::path bad_value = scratch("bad_value.csv");
    std::ofstream(bad_value) << kCsvHeader << "\n0,1,2,3,4,5,6,7,8,nine\n";
    CHECK_THROWS_AS(read_csv(bad_value), std::runtime_error);
}

TEST_CASE("manifest round-trips and reproduces the run") {
    const ScenarioFile file = parse_scenario("[attack]\nvariant = prop1\n[sim]\nt_max = 1\n");
    const ScenarioResult r = run_scenario(build_scenario(file));
    const RunManifest m = make_manifest("dry_phi_p_ndob", serialize_scenario(file), r, 0.25,
                                        {"dry_phi_p_ndob.csv", "dry_phi_p_ndob.manifest.json"});
    const fs::path path = scratch("run.manifest.json");
    write_manifest(m, path);
    const RunManifest back = read_manifest(path);
    CHECK(back.label == m.label);
    CHECK(back.tool_version == std::string(kToolVersion));
    CHECK(back.wall_clock_s == 0.25);
    CHECK(back.rows == r.series.size());
    CHECK(back.termination == to_string(r.termination));
    CHECK(back.metrics.time_to_lockup == r.metrics.time_to_lockup);
    CHECK(back.metrics.max_lambda == r.metrics.max_lambda);
    CHECK(back.outputs == m.outputs);
    CHECK(back.config == m.config);

    const ScenarioResult again = run_scenario(build_scenario(parse_scenario(back.config)));
    CHECK(again.series.lambda == r.series.lambda);
    CHECK(again.series.d_hat == r.series.d_hat);
}
